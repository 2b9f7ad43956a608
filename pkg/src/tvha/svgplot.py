"""Minimal deterministic SVG line/scatter plots.

Hand-rolled on purpose: output bytes must be identical across runs for
the same input, which rules out plotting libraries that embed hashed ids
or timestamps.
"""

WIDTH, HEIGHT = 720, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 70, 20, 20, 45

SERIES_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def _fmt(x):
    return f"{x:.4f}"


class Plot:
    def __init__(self, x_label, y_label, x_range, y_range):
        self.x_label = x_label
        self.y_label = y_label
        self.x_min, self.x_max = x_range
        self.y_min, self.y_max = y_range
        if self.x_max <= self.x_min:
            self.x_max = self.x_min + 1.0
        if self.y_max <= self.y_min:
            self.y_max = self.y_min + 1.0
        self.parts = []
        self._legend_rows = 0

    def _sx(self, x):
        frac = (x - self.x_min) / (self.x_max - self.x_min)
        return MARGIN_L + frac * (WIDTH - MARGIN_L - MARGIN_R)

    def _sy(self, y):
        frac = (y - self.y_min) / (self.y_max - self.y_min)
        return HEIGHT - MARGIN_B - frac * (HEIGHT - MARGIN_T - MARGIN_B)

    def hline(self, y, color, label=None, dash=False):
        sy = self._sy(y)
        dash_attr = ' stroke-dasharray="6,3"' if dash else ""
        self.parts.append(
            f'<line x1="{_fmt(MARGIN_L)}" y1="{_fmt(sy)}" x2="{_fmt(WIDTH - MARGIN_R)}" '
            f'y2="{_fmt(sy)}" stroke="{color}" stroke-width="1"{dash_attr}/>'
        )
        if label:
            self.parts.append(
                f'<text x="{_fmt(WIDTH - MARGIN_R - 4)}" y="{_fmt(sy - 4)}" '
                f'text-anchor="end" font-size="11" fill="{color}">{label}</text>'
            )

    def band(self, y_low, y_high, color):
        sy1, sy2 = self._sy(y_high), self._sy(y_low)
        self.parts.append(
            f'<rect x="{_fmt(MARGIN_L)}" y="{_fmt(sy1)}" '
            f'width="{_fmt(WIDTH - MARGIN_L - MARGIN_R)}" height="{_fmt(sy2 - sy1)}" '
            f'fill="{color}" fill-opacity="0.15"/>'
        )

    def series(self, points, color, label):
        pts = sorted(points)
        if len(pts) > 1:
            path = " ".join(
                f"{'M' if i == 0 else 'L'}{_fmt(self._sx(x))},{_fmt(self._sy(y))}"
                for i, (x, y) in enumerate(pts)
            )
            self.parts.append(
                f'<path d="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
            )
        for x, y in pts:
            self.parts.append(
                f'<circle cx="{_fmt(self._sx(x))}" cy="{_fmt(self._sy(y))}" '
                f'r="3" fill="{color}"/>'
            )
        self._legend_rows += 1
        self.parts.append(
            f'<text x="{_fmt(MARGIN_L + 8)}" y="{_fmt(MARGIN_T + 14 * self._legend_rows)}" '
            f'font-size="11" fill="{color}">{label}</text>'
        )

    def render(self):
        axes = [
            f'<rect x="{MARGIN_L}" y="{MARGIN_T}" width="{WIDTH - MARGIN_L - MARGIN_R}" '
            f'height="{HEIGHT - MARGIN_T - MARGIN_B}" fill="none" stroke="#333" stroke-width="1"/>'
        ]
        for k in range(5):
            xv = self.x_min + k * (self.x_max - self.x_min) / 4
            yv = self.y_min + k * (self.y_max - self.y_min) / 4
            axes.append(
                f'<text x="{_fmt(self._sx(xv))}" y="{HEIGHT - MARGIN_B + 16}" '
                f'text-anchor="middle" font-size="11" fill="#333">{xv:.3g}</text>'
            )
            axes.append(
                f'<text x="{MARGIN_L - 6}" y="{_fmt(self._sy(yv) + 4)}" '
                f'text-anchor="end" font-size="11" fill="#333">{yv:.5g}</text>'
            )
        axes.append(
            f'<text x="{(MARGIN_L + WIDTH - MARGIN_R) // 2}" y="{HEIGHT - 8}" '
            f'text-anchor="middle" font-size="12" fill="#333">{self.x_label}</text>'
        )
        axes.append(
            f'<text x="14" y="{(MARGIN_T + HEIGHT - MARGIN_B) // 2}" font-size="12" '
            f'fill="#333" transform="rotate(-90 14 {(MARGIN_T + HEIGHT - MARGIN_B) // 2})" '
            f'text-anchor="middle">{self.y_label}</text>'
        )
        body = "\n".join(axes + self.parts)
        return (
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n<rect width="{WIDTH}" height="{HEIGHT}" '
            f'fill="white"/>\n{body}\n</svg>\n'
        )
