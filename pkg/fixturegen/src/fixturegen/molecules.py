"""Molecule definitions for the shipped fixtures."""

from dataclasses import dataclass, field

H2_BOND = 0.74279  # Angstrom, minimal-basis equilibrium distance


@dataclass
class MoleculeSpec:
    name: str
    geometry: list  # (element, x, y, z) in Angstrom
    basis: str = "sto-3g"
    charge: int = 0
    multiplicity: int = 1
    # (n_electrons, n_orbitals, occupied-ordered MO indices) or None
    active_space: tuple | None = None

    def __post_init__(self):
        if not self.geometry:
            raise ValueError("geometry must be non-empty")
        if self.active_space is not None:
            n_e, n_o, idx = self.active_space
            if len(idx) != n_o:
                raise ValueError("active space index list does not match orbital count")


def h2():
    return MoleculeSpec(
        name="h2",
        geometry=[("H", 0.0, 0.0, 0.0), ("H", 0.0, 0.0, H2_BOND)],
    )


def h4():
    return MoleculeSpec(
        name="h4",
        geometry=[("H", 0.0, 0.0, i * H2_BOND) for i in range(4)],
    )


def lih():
    return MoleculeSpec(
        name="lih",
        geometry=[("Li", 0.0, 0.0, 0.0), ("H", 0.0, 0.0, 1.596)],
    )


def ch2_as22():
    # Triplet-optimized geometry; singlet-sector CAS(2,2) over the
    # near-degenerate frontier orbitals (HOMO index 3, LUMO index 4).
    return MoleculeSpec(
        name="ch2_as22",
        geometry=[
            ("C", -0.00000000558058, 0.0, 0.27482875331272),
            ("H", 0.99659455942822, 0.0, -0.13738437780928),
            ("H", -0.99659455384764, 0.0, -0.13738437550343),
        ],
        active_space=(2, 2, (3, 4)),
    )


ALL = {m().name: m for m in (h2, h4, lih, ch2_as22)}
