"""STO-3G basis data and contracted-Gaussian construction.

Exponents/coefficients are the standard published STO-3G values (identical
across the common quantum chemistry packages). Only the elements needed by
the shipped fixtures are included.
"""

import math

import numpy as np

ANGSTROM_PER_BOHR = 0.52917721092

NUCLEAR_CHARGE = {"H": 1, "Li": 3, "C": 6}

_1S_COEFS = (0.1543289673, 0.5353281423, 0.4446345422)
_2S_COEFS = (-0.09996722919, 0.3995128261, 0.7001154689)
_2P_COEFS = (0.1559162750, 0.6076837186, 0.3919573931)

# element -> list of shells (angular momentum, exponents, coefficients)
STO3G = {
    "H": [
        (0, (3.425250914, 0.6239137298, 0.1688554040), _1S_COEFS),
    ],
    "Li": [
        (0, (16.11957475, 2.936200663, 0.794650487), _1S_COEFS),
        (0, (0.6362897469, 0.1478600533, 0.0480886784), _2S_COEFS),
        (1, (0.6362897469, 0.1478600533, 0.0480886784), _2P_COEFS),
    ],
    "C": [
        (0, (71.61683735, 13.04509632, 3.530512160), _1S_COEFS),
        (0, (2.941249355, 0.6834830964, 0.2222899159), _2S_COEFS),
        (1, (2.941249355, 0.6834830964, 0.2222899159), _2P_COEFS),
    ],
}

BASIS_SETS = {"sto-3g": STO3G}

_CART_POWERS = {
    0: [(0, 0, 0)],
    1: [(1, 0, 0), (0, 1, 0), (0, 0, 1)],
}


class ContractedGaussian:
    """One contracted Cartesian Gaussian basis function.

    Coefficients include primitive normalization and a final contracted
    renormalization so that the self-overlap is exactly 1.
    """

    def __init__(self, center, powers, exps, coefs):
        self.center = np.asarray(center, dtype=float)
        self.powers = tuple(powers)
        self.exps = np.asarray(exps, dtype=float)
        coefs = np.asarray(coefs, dtype=float) * np.array(
            [_primitive_norm(a, self.powers) for a in self.exps]
        )
        self.coefs = coefs

    def renormalize(self, self_overlap):
        self.coefs = self.coefs / math.sqrt(self_overlap)


def _double_factorial(n):
    out = 1
    while n > 1:
        out *= n
        n -= 2
    return out


def _primitive_norm(alpha, powers):
    i, j, k = powers
    l = i + j + k
    num = (2.0 * alpha / math.pi) ** 0.75 * (4.0 * alpha) ** (l / 2.0)
    den = math.sqrt(
        _double_factorial(2 * i - 1)
        * _double_factorial(2 * j - 1)
        * _double_factorial(2 * k - 1)
    )
    return num / den


def build_basis(symbols, coords_bohr, basis_name="sto-3g"):
    """Expand shells into a list of ContractedGaussian for the molecule.

    Args:
        symbols: element symbols per atom.
        coords_bohr: (n_atoms, 3) array of positions in Bohr.
        basis_name: key into BASIS_SETS.

    Returns:
        List of ContractedGaussian, ordered atom-by-atom, shell-by-shell,
        with p shells expanded as (x, y, z).
    """
    try:
        data = BASIS_SETS[basis_name.lower()]
    except KeyError:
        raise ValueError(f"unknown basis set {basis_name!r}") from None
    funcs = []
    for sym, xyz in zip(symbols, coords_bohr):
        if sym not in data:
            raise ValueError(f"no {basis_name} data for element {sym!r}")
        for l, exps, coefs in data[sym]:
            for powers in _CART_POWERS[l]:
                funcs.append(ContractedGaussian(xyz, powers, exps, coefs))
    return funcs
