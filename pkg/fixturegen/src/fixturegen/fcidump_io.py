"""FCIDUMP and meta.json emission, plus an independent reader for verify."""

import json

import numpy as np


# Entries below this are numerical noise from the MO transform (true
# symmetry zeros), far below chemical significance.
WRITE_TOL = 1e-14


def write_fcidump(path, h1, eri, e_core, n_elec, ms2=0):
    """Write spatial integrals in FCIDUMP format.

    Canonical form: single-line namelist, unique 8-fold-symmetric (ij|kl)
    records first, then one-body records, then the core energy, all at 17
    significant digits.
    """
    n = h1.shape[0]
    lines = [f"&FCI NORB={n},NELEC={n_elec},MS2={ms2},&END"]

    def rec(val, i, j, k, l):
        lines.append(f"{val:.17g} {i} {j} {k} {l}")

    for i in range(n):
        for j in range(i + 1):
            for k in range(i + 1):
                l_max = j if k == i else k
                for l in range(l_max + 1):
                    v = eri[i, j, k, l]
                    if abs(v) > WRITE_TOL:
                        rec(v, i + 1, j + 1, k + 1, l + 1)
    for i in range(n):
        for j in range(i + 1):
            if abs(h1[i, j]) > WRITE_TOL:
                rec(h1[i, j], i + 1, j + 1, 0, 0)
    rec(e_core, 0, 0, 0, 0)
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")


def read_fcidump(path):
    """Independent FCIDUMP reader used by `verify`.

    Returns (n_orb, n_elec, ms2, h1, eri, e_core) with eri expanded to the
    full 8-fold-symmetric dense tensor.
    """
    with open(path, encoding="utf-8") as f:
        text = f.read()
    head, _, body = text.partition("&END")
    if "&FCI" not in head:
        raise ValueError("missing &FCI namelist")
    fields = {}
    for part in head.replace("&FCI", "").replace("\n", ",").split(","):
        part = part.strip()
        if "=" in part:
            key, _, val = part.partition("=")
            fields[key.strip().upper()] = int(val.strip().rstrip(","))
    n = fields["NORB"]
    n_elec = fields["NELEC"]
    ms2 = fields.get("MS2", 0)
    h1 = np.zeros((n, n))
    eri = np.zeros((n, n, n, n))
    e_core = 0.0
    for line in body.strip().splitlines():
        line = line.strip()
        if not line:
            continue
        toks = line.split()
        val = float(toks[0])
        i, j, k, l = (int(t) for t in toks[1:5])
        if i == j == k == l == 0:
            e_core = val
        elif k == l == 0:
            h1[i - 1, j - 1] = h1[j - 1, i - 1] = val
        else:
            p, q, r, s = i - 1, j - 1, k - 1, l - 1
            for a, b, c, d in (
                (p, q, r, s), (q, p, r, s), (p, q, s, r), (q, p, s, r),
                (r, s, p, q), (s, r, p, q), (r, s, q, p), (s, r, q, p),
            ):
                eri[a, b, c, d] = val
    return n, n_elec, ms2, h1, eri, e_core


def write_meta(path, meta):
    with open(path, "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, sort_keys=True)
        f.write("\n")


def read_meta(path):
    with open(path, encoding="utf-8") as f:
        return json.load(f)
