"""Self-consistency checks of a generated fixture directory."""

import os

from . import ci
from .fcidump_io import read_fcidump, read_meta

HF_TOL = 1e-8


def verify_fixture(fixture_dir):
    """Re-derive e_hf from the FCIDUMP and check it against meta.json.

    Returns a list of human-readable problem strings; empty means the
    fixture is consistent.
    """
    problems = []
    fcidump_path = os.path.join(fixture_dir, "FCIDUMP")
    meta_path = os.path.join(fixture_dir, "meta.json")
    for p in (fcidump_path, meta_path):
        if not os.path.exists(p):
            return [f"missing file: {p}"]
    try:
        n, n_elec, ms2, h1, eri, e_core = read_fcidump(fcidump_path)
    except Exception as exc:
        return [f"FCIDUMP parse failure: {exc}"]
    meta = read_meta(meta_path)

    if meta["n_alpha"] + meta["n_beta"] != n_elec:
        problems.append("meta electron counts disagree with NELEC")
    if meta["n_alpha"] - meta["n_beta"] != ms2:
        problems.append("meta electron counts disagree with MS2")
    if abs(meta["e_core"] - e_core) > 1e-12:
        problems.append(f"e_core mismatch: meta {meta['e_core']} vs FCIDUMP {e_core}")

    e_hf = ci.hf_determinant_energy(h1, eri, meta["n_alpha"], meta["n_beta"]) + e_core
    if abs(e_hf - meta["e_hf"]) > HF_TOL:
        problems.append(
            f"re-derived e_hf {e_hf:.12f} differs from meta {meta['e_hf']:.12f}"
        )
    if meta["e_fci"] > meta["e_hf"] + 1e-12:
        problems.append("variational bound violated: e_fci > e_hf")
    return problems
