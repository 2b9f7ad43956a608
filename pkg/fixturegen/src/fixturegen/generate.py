"""Fixture generation: SCF + (CAS)CI -> FCIDUMP + meta.json."""

import os

import numpy as np

from . import basis as basis_mod
from . import ci, integrals, scf
from .fcidump_io import write_fcidump, write_meta


def run_molecule(spec):
    """Run RHF and FCI/CASCI for a MoleculeSpec.

    Returns a dict holding the exported spatial integrals (h1, eri, e_core),
    electron counts, and the reference energies (totals, in Hartree).
    """
    symbols = [a[0] for a in spec.geometry]
    coords = np.array([a[1:] for a in spec.geometry]) / basis_mod.ANGSTROM_PER_BOHR
    charges = np.array([float(basis_mod.NUCLEAR_CHARGE[s]) for s in symbols])
    n_elec = int(charges.sum()) - spec.charge
    if n_elec % 2 != 0 or spec.multiplicity != 1:
        raise ValueError("only closed-shell restricted references are supported")
    n_occ = n_elec // 2

    funcs = integrals.normalize_basis(basis_mod.build_basis(symbols, coords, spec.basis))
    S = integrals.overlap(funcs)
    hcore = integrals.core_hamiltonian(funcs, charges, coords)
    eri = integrals.electron_repulsion(funcs)
    e_nuc = integrals.nuclear_repulsion(charges, coords)

    hf = scf.restricted_hartree_fock(S, hcore, eri, n_occ, e_nuc)
    h_mo, eri_mo = scf.mo_transform(hcore, eri, hf["mo_coeff"])

    if spec.active_space is None:
        h_exp, eri_exp, e_core = h_mo, eri_mo, e_nuc
        n_alpha = n_beta = n_occ
    else:
        n_act_e, n_act_o, act_idx = spec.active_space
        h_exp, eri_exp, e_inact, n_from_occ = ci.active_space_reduction(
            h_mo, eri_mo, n_occ, act_idx
        )
        if n_from_occ != n_act_e:
            raise ValueError(
                f"active space lists {n_act_e} electrons but the occupied "
                f"orbitals among {act_idx} hold {n_from_occ}"
            )
        e_core = e_nuc + e_inact
        n_alpha = n_beta = n_act_e // 2

    # all shipped fixtures are singlet references; the M_s = 0 sector also
    # holds triplet roots (CH2's active space has one below the singlet)
    e_ci, _, _ = ci.fci_ground_state(h_exp, eri_exp, n_alpha, n_beta, spin=0)
    geometry_text = "; ".join(
        f"{s} {x:.8f} {y:.8f} {z:.8f}" for s, x, y, z in spec.geometry
    )
    return {
        "h1": h_exp,
        "eri": eri_exp,
        "e_core": e_core,
        "n_alpha": n_alpha,
        "n_beta": n_beta,
        "e_hf": hf["e_total"],
        "e_fci": e_ci + e_core,
        "basis": spec.basis,
        "geometry": geometry_text + " (Angstrom)",
    }


def generate(spec, out_dir):
    """Produce <out_dir>/FCIDUMP and <out_dir>/meta.json for a MoleculeSpec."""
    res = run_molecule(spec)
    os.makedirs(out_dir, exist_ok=True)
    write_fcidump(
        os.path.join(out_dir, "FCIDUMP"),
        res["h1"],
        res["eri"],
        res["e_core"],
        n_elec=res["n_alpha"] + res["n_beta"],
        ms2=res["n_alpha"] - res["n_beta"],
    )
    write_meta(
        os.path.join(out_dir, "meta.json"),
        {
            "name": spec.name,
            "n_alpha": res["n_alpha"],
            "n_beta": res["n_beta"],
            "e_core": res["e_core"],
            "e_hf": res["e_hf"],
            "e_fci": res["e_fci"],
            "basis": res["basis"],
            "geometry": res["geometry"],
        },
    )
    return res
