"""Experiment harness: term histograms, energy-vs-threshold sweeps, CNOT
budgets, exact references, and SVG plots, with persisted run manifests.

Exit codes: 0 success, 2 config error, 3 fixture error, 4 partial failures.
"""

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, asdict

import numpy as np

from . import __version__, svgplot
from .circuit import build_hea, build_tvha, build_uccsd, hf_prep, metrics, peephole
from .errors import ConsistencyError, ParseError
from .fcidump import load_fixture
from .hamiltonian import admissible_thresholds, classify, histogram_rows, truncate
from .pauli import assemble_measurement_hamiltonian
from .sim import StateVector, exact_ground, expectation, run
from .vqe import OptimizerConfig, init_params_tvha, run_vqe

SWEEP_COLUMNS = [
    "molecule", "ansatz", "n_trotter", "p_target", "p_actual", "s_cut",
    "energy", "e_hf", "e_fci", "abs_err", "n_evals", "cnot_raw", "cnot_opt",
    "n_params", "seed", "status",
]
RESOURCE_COLUMNS = [
    "molecule", "ansatz", "n_trotter", "p_target", "p_actual", "s_cut",
    "cnot_raw", "cnot_opt", "n_params", "depth_opt",
]
AUTO_GRID_MAX = 21


@dataclass
class RunConfig:
    fixture: str = ""
    ansatz: str = "tvha"
    trotter_steps: tuple = (1,)
    p_targets: object = "auto"  # list of floats or "auto"
    one_body_mode: str = "diagonal"
    hea_layers: int = 3
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)
    out_dir: str = "runs"
    jobs: int = 1

    def validate(self):
        if not self.fixture:
            raise ValueError("fixture path is required")
        if self.ansatz not in ("tvha", "uccsd", "hea"):
            raise ValueError(f"unknown ansatz {self.ansatz!r}")
        if not self.trotter_steps:
            raise ValueError("trotter_steps must be non-empty")
        if self.p_targets != "auto":
            if not self.p_targets:
                raise ValueError("p_targets must be non-empty")
            if any(not 0.0 <= p <= 1.0 for p in self.p_targets):
                raise ValueError("p targets must lie in [0, 1]")
        if self.jobs < 1:
            raise ValueError("jobs must be at least 1")
        self.optimizer.validate()
        return self


@dataclass
class SweepRow:
    molecule: str
    ansatz: str
    n_trotter: int
    p_target: float
    p_actual: float
    s_cut: int
    energy: float
    e_hf: float
    e_fci: float
    abs_err: float
    n_evals: int
    cnot_raw: int
    cnot_opt: int
    n_params: int
    seed: int
    status: str
    wall_time_s: float  # recorded in the manifest, not the CSV (determinism)


class _Workspace:
    """Loaded fixture plus everything derived from it that commands share."""

    def __init__(self, fixture_dir):
        self.ints, self.meta = load_fixture(fixture_dir)
        self.dh = classify(self.ints)
        self.n_orb = self.ints.n_so // 2
        self.hamiltonian = assemble_measurement_hamiltonian(self.dh)
        prep = hf_prep(self.ints.n_so, self.meta.n_alpha, self.meta.n_beta, self.n_orb)
        self.hf_state = run(prep, np.zeros(0), StateVector.zero_state(self.ints.n_so))
        self.e_hf_elec = self.meta.e_hf - self.meta.e_core
        self.e_fci_elec = self.meta.e_fci - self.meta.e_core


def resolve_p_grid(dh, p_targets):
    """Admissible grid: explicit targets, or `auto` downsampled to <= 21."""
    thresholds = admissible_thresholds(dh)
    if p_targets == "auto":
        if len(thresholds) <= AUTO_GRID_MAX:
            return list(thresholds)
        targets = np.linspace(0.0, 1.0, AUTO_GRID_MAX)
        grid = []
        arr = np.asarray(thresholds)
        for t in targets:
            p = float(arr[np.argmin(np.abs(arr - t))])
            if not grid or p != grid[-1]:
                grid.append(p)
        return grid
    return list(p_targets)


def _atomic_write(path, data):
    tmp = path + ".tmp"
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(tmp, mode) as f:
        f.write(data)
    os.replace(tmp, path)


def _rows_to_csv(columns, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(row)
    return buf.getvalue()


def _format_value(v):
    if isinstance(v, float):
        return f"{v:.17g}"
    return v


def _manifest(cfg, fixture_dir, extra):
    def digest(path):
        with open(path, "rb") as f:
            return hashlib.sha256(f.read()).hexdigest()

    cfg_dict = asdict(cfg)
    manifest = {
        "code_version": __version__,
        "config": cfg_dict,
        "config_hash": hashlib.sha256(
            json.dumps(cfg_dict, sort_keys=True).encode()
        ).hexdigest(),
        "fixture_checksums": {
            name: digest(os.path.join(fixture_dir, name))
            for name in ("FCIDUMP", "meta.json")
        },
    }
    manifest.update(extra)
    return manifest


def cmd_hist(cfg):
    ws = _Workspace(cfg.fixture)
    rows = [(cls, f"{mag:.17g}") for cls, mag in histogram_rows(ws.dh)]
    os.makedirs(cfg.out_dir, exist_ok=True)
    out = os.path.join(cfg.out_dir, f"{ws.meta.name}_hist.csv")
    _atomic_write(out, _rows_to_csv(["class", "magnitude"], rows))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def _build_ansatz(ws, cfg, n_trotter, p_target):
    if cfg.ansatz == "tvha":
        trunc = truncate(ws.dh, p_target)
        circ = build_tvha(ws.dh, trunc, n_trotter, cfg.one_body_mode)
        x0 = init_params_tvha(n_trotter)
        return circ, trunc, x0
    if cfg.ansatz == "uccsd":
        circ = build_uccsd(ws.ints.n_so, ws.meta.n_alpha, ws.meta.n_beta)
    else:
        circ = build_hea(
            ws.ints.n_so, ws.meta.n_alpha, ws.meta.n_beta, ws.n_orb, cfg.hea_layers
        )
    return circ, None, np.zeros(circ.n_params)


def _sweep_point(ws, cfg, n_trotter, p_target):
    t0 = time.monotonic()
    circ, trunc, x0 = _build_ansatz(ws, cfg, n_trotter, p_target)
    raw = metrics(circ)
    opt = metrics(peephole(circ))
    # HEA prepares the reference bitstring itself
    init = ws.hf_state if cfg.ansatz != "hea" else StateVector.zero_state(ws.ints.n_so)
    if cfg.optimizer.random_init:
        rng = np.random.default_rng(cfg.optimizer.seed)
        x0 = rng.random(circ.n_params)
    result = run_vqe(circ, ws.hamiltonian, init, x0, cfg.optimizer)
    return SweepRow(
        molecule=ws.meta.name,
        ansatz=cfg.ansatz,
        n_trotter=n_trotter if cfg.ansatz == "tvha" else 0,
        p_target=p_target if trunc else 1.0,
        p_actual=trunc.p_actual if trunc else 1.0,
        s_cut=trunc.s_cut if trunc else 0,
        energy=result.energy,
        e_hf=ws.e_hf_elec,
        e_fci=ws.e_fci_elec,
        abs_err=abs(result.energy - ws.e_fci_elec),
        n_evals=result.n_evals,
        cnot_raw=raw["cnot_count"],
        cnot_opt=opt["cnot_count"],
        n_params=circ.n_params,
        seed=cfg.optimizer.seed,
        status="ok",
        wall_time_s=time.monotonic() - t0,
    )


def _grid(cfg, ws):
    if cfg.ansatz == "tvha":
        ps = resolve_p_grid(ws.dh, cfg.p_targets)
        return [(n, p) for n in cfg.trotter_steps for p in ps]
    return [(0, 1.0)]


def cmd_sweep(cfg):
    ws = _Workspace(cfg.fixture)
    points = _grid(cfg, ws)
    os.makedirs(cfg.out_dir, exist_ok=True)
    out_csv = os.path.join(cfg.out_dir, f"{ws.meta.name}_{cfg.ansatz}_sweep.csv")
    rows, failures = [], 0

    def evaluate(point):
        n, p = point
        try:
            return _sweep_point(ws, cfg, n, p)
        except Exception as exc:  # per-point failures land in the CSV
            return SweepRow(
                ws.meta.name, cfg.ansatz, n, p, float("nan"), 0, float("nan"),
                ws.e_hf_elec, ws.e_fci_elec, float("nan"), 0, 0, 0, 0,
                cfg.optimizer.seed, f"error: {exc}", 0.0,
            )

    def flush():
        ordered = sorted(rows, key=lambda r: (r.n_trotter, r.p_actual, r.p_target))
        table = [
            [_format_value(getattr(r, c)) for c in SWEEP_COLUMNS] for r in ordered
        ]
        _atomic_write(out_csv, _rows_to_csv(SWEEP_COLUMNS, table))
        return ordered

    if cfg.jobs == 1:
        for point in points:
            row = evaluate(point)
            failures += row.status != "ok"
            rows.append(row)
            flush()
    else:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            for row in pool.map(evaluate, points):
                failures += row.status != "ok"
                rows.append(row)
                flush()
    ordered = flush()

    manifest = _manifest(
        cfg,
        cfg.fixture,
        {
            "grid": [[n, p] for n, p in points],
            "timings_s": {
                f"N={r.n_trotter},p={r.p_target:.17g}": r.wall_time_s for r in ordered
            },
        },
    )
    _atomic_write(
        os.path.join(cfg.out_dir, f"{ws.meta.name}_{cfg.ansatz}_manifest.json"),
        json.dumps(manifest, indent=2, sort_keys=True) + "\n",
    )
    print(f"wrote {out_csv} ({len(rows)} rows, {failures} failures)")
    return 4 if failures else 0


def cmd_resources(cfg):
    ws = _Workspace(cfg.fixture)
    rows = []
    ansatz_list = ("tvha", "uccsd", "hea") if cfg.ansatz == "tvha" else (cfg.ansatz,)
    for ansatz in ansatz_list:
        sub = RunConfig(**{**asdict(cfg), "ansatz": ansatz, "optimizer": cfg.optimizer})
        for n, p in _grid(sub, ws):
            circ, trunc, _ = _build_ansatz(ws, sub, n, p)
            raw = metrics(circ)
            opt = metrics(peephole(circ))
            rows.append([
                ws.meta.name, ansatz, n if ansatz == "tvha" else 0,
                _format_value(p), _format_value(trunc.p_actual if trunc else 1.0),
                trunc.s_cut if trunc else 0, raw["cnot_count"], opt["cnot_count"],
                raw["param_count"], opt["depth"],
            ])
    os.makedirs(cfg.out_dir, exist_ok=True)
    out = os.path.join(cfg.out_dir, f"{ws.meta.name}_resources.csv")
    _atomic_write(out, _rows_to_csv(RESOURCE_COLUMNS, rows))
    print(f"wrote {out} ({len(rows)} rows)")
    return 0


def cmd_fci(cfg):
    ws = _Workspace(cfg.fixture)
    energy, _ = exact_ground(
        ws.hamiltonian, ws.meta.n_alpha, ws.meta.n_beta, ws.n_orb, singlet=True
    )
    print(f"fixture:            {ws.meta.name}")
    print(f"electronic ground:  {energy:.12f} Ha")
    print(f"+ core energy:      {energy + ws.meta.e_core:.12f} Ha")
    print(f"reference e_fci:    {ws.meta.e_fci:.12f} Ha")
    print(f"reference e_hf:     {ws.meta.e_hf:.12f} Ha")
    print(f"deviation:          {abs(energy + ws.meta.e_core - ws.meta.e_fci):.3e} Ha")
    return 0


def cmd_plot(csv_path, out_path=None):
    with open(csv_path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        rows = list(reader)
        columns = reader.fieldnames or []
    if {"p_actual", "energy", "e_hf", "e_fci"} <= set(columns):
        ok = [r for r in rows if r.get("status", "ok") == "ok"]
        series = {}
        for r in ok:
            series.setdefault(int(r["n_trotter"]), []).append(
                (float(r["p_actual"]), float(r["energy"]))
            )
        e_hf = float(rows[0]["e_hf"]) if rows else 0.0
        e_fci = float(rows[0]["e_fci"]) if rows else -1.0
        ys = [y for pts in series.values() for _, y in pts] + [e_hf, e_fci]
        pad = 0.1 * (max(ys) - min(ys)) if ys else 1.0
        plot = svgplot.Plot(
            "truncation fraction p", "electronic energy (Ha)",
            (0.0, 1.0), (min(ys) - pad, max(ys) + pad),
        )
        plot.band(e_fci - 0.0015, e_fci + 0.0015, "#2ca02c")
        plot.hline(e_fci, "#2ca02c", "exact reference")
        plot.hline(e_hf, "#777777", "ingoing mean-field", dash=True)
        for k, n in enumerate(sorted(series)):
            plot.series(
                series[n], svgplot.SERIES_COLORS[k % len(svgplot.SERIES_COLORS)],
                f"N={n}" if n else "single pass",
            )
    elif {"p_actual", "cnot_opt"} <= set(columns):
        series = {}
        for r in rows:
            key = (r["ansatz"], int(r["n_trotter"]))
            series.setdefault(key, []).append(
                (float(r["p_actual"]), float(r["cnot_opt"]))
            )
        ys = [y for pts in series.values() for _, y in pts]
        plot = svgplot.Plot(
            "truncation fraction p", "CNOT count",
            (0.0, 1.0), (0.0, (max(ys) if ys else 1.0) * 1.1),
        )
        for k, key in enumerate(sorted(series)):
            label = f"{key[0]} N={key[1]}" if key[0] == "tvha" else key[0]
            plot.series(
                series[key], svgplot.SERIES_COLORS[k % len(svgplot.SERIES_COLORS)], label
            )
    else:
        raise ParseError(f"{csv_path}: unrecognized CSV schema {columns}")
    out_path = out_path or os.path.splitext(csv_path)[0] + ".svg"
    _atomic_write(out_path, plot.render().encode())
    print(f"wrote {out_path}")
    return 0


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="tvha", description="truncated variational Hamiltonian ansatz experiments"
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("hist", "sweep", "resources", "fci"):
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON config file")
        p.add_argument("--fixture", help="fixture directory")
        p.add_argument("--ansatz", choices=("tvha", "uccsd", "hea"))
        p.add_argument("--trotter", help="comma-separated Trotter step counts")
        p.add_argument("--p", help="'auto' or comma-separated targets in [0,1]")
        p.add_argument("--one-body-mode", choices=("diagonal", "full"))
        p.add_argument("--hea-layers", type=int)
        p.add_argument("--max-evals", type=int)
        p.add_argument("--algorithm", choices=("nelder_mead", "subplex"))
        p.add_argument("--seed", type=int)
        p.add_argument("--jobs", type=int)
        p.add_argument("--out", help="output directory")
    plot = sub.add_parser("plot")
    plot.add_argument("csv", help="sweep or resources CSV")
    plot.add_argument("--out", help="output SVG path")
    return parser.parse_args(argv)


def _load_config(args):
    raw = {}
    if args.config:
        with open(args.config, encoding="utf-8") as f:
            raw = json.load(f)
    opt_raw = raw.pop("optimizer", {})
    cfg = RunConfig(**{k: v for k, v in raw.items() if k != "jobs"})
    cfg.jobs = raw.get("jobs", 1)
    cfg.optimizer = OptimizerConfig(**opt_raw)
    if args.fixture:
        cfg.fixture = args.fixture
    if args.ansatz:
        cfg.ansatz = args.ansatz
    if args.trotter:
        cfg.trotter_steps = tuple(int(t) for t in args.trotter.split(","))
    if args.p:
        cfg.p_targets = (
            "auto" if args.p == "auto" else [float(t) for t in args.p.split(",")]
        )
    if args.one_body_mode:
        cfg.one_body_mode = args.one_body_mode
    if args.hea_layers:
        cfg.hea_layers = args.hea_layers
    if args.max_evals:
        cfg.optimizer.max_evals = args.max_evals
    if args.algorithm:
        cfg.optimizer.algorithm = args.algorithm
    if args.seed is not None:
        cfg.optimizer.seed = args.seed
    if args.jobs:
        cfg.jobs = args.jobs
    if args.out:
        cfg.out_dir = args.out
    if isinstance(cfg.trotter_steps, list):
        cfg.trotter_steps = tuple(cfg.trotter_steps)
    return cfg.validate()


def main(argv=None):
    args = _parse_args(argv)
    if args.command == "plot":
        try:
            return cmd_plot(args.csv, args.out)
        except (ParseError, FileNotFoundError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    try:
        cfg = _load_config(args)
    except (ValueError, TypeError, OSError, json.JSONDecodeError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    try:
        command = {
            "hist": cmd_hist,
            "sweep": cmd_sweep,
            "resources": cmd_resources,
            "fci": cmd_fci,
        }[args.command]
        return command(cfg)
    except (OSError, ParseError, ConsistencyError) as exc:
        print(f"fixture error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
