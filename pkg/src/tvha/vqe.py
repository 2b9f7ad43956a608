"""Derivative-free optimization loop around the statevector objective.

Two algorithms: a plain Nelder-Mead simplex with the standard
reflection/expansion/contraction/shrink coefficients (1, 2, 0.5, 0.5),
and a subspace-cycling variant after Rowan that repeatedly runs
Nelder-Mead over coordinate blocks of at most five parameters, ordered
by recent parameter movement. Both are strictly sequential and fully
deterministic for a fixed configuration, count every objective
evaluation against the budget, and record every evaluation.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from . import sim

SUBSPACE_MAX = 5


@dataclass
class OptimizerConfig:
    max_evals: int = 1000
    algorithm: str = "subplex"  # or "nelder_mead"
    initial_step: float = 0.1
    xtol: float = 1e-8
    ftol: float = 1e-10
    seed: int = 0
    random_init: bool = False

    def validate(self):
        if self.max_evals < 1:
            raise ValueError("max_evals must be at least 1")
        if self.xtol <= 0 or self.ftol <= 0:
            raise ValueError("tolerances must be positive")
        if self.algorithm not in ("nelder_mead", "subplex"):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        return self


@dataclass
class VqeResult:
    energy: float
    params: np.ndarray
    n_evals: int
    history: tuple  # (eval index, energy)
    init_energy: float


class _BudgetExhausted(Exception):
    pass


class _Recorder:
    """Objective wrapper: budget enforcement, history, best-point tracking."""

    def __init__(self, f, max_evals):
        self.f = f
        self.max_evals = max_evals
        self.n_evals = 0
        self.history = []
        self.best_x = None
        self.best_f = math.inf

    def __call__(self, x):
        if self.n_evals >= self.max_evals:
            raise _BudgetExhausted
        val = float(self.f(x))
        if math.isnan(val):
            raise RuntimeError(
                f"objective returned NaN at evaluation {self.n_evals + 1}, x={x!r}"
            )
        self.n_evals += 1
        self.history.append((self.n_evals, val))
        if val < self.best_f:
            self.best_f = val
            self.best_x = np.array(x, dtype=float)
        return val


def _nelder_mead(rec, x0, step, xtol, ftol):
    """Standard simplex iteration; returns on convergence (budget raises)."""
    dim = len(x0)
    if dim == 0:
        rec(x0)
        return
    simplex = [np.array(x0, dtype=float)]
    for i in range(dim):
        vertex = np.array(x0, dtype=float)
        vertex[i] += step[i] if np.ndim(step) else step
        simplex.append(vertex)
    fvals = [rec(v) for v in simplex]

    while True:
        order = sorted(range(dim + 1), key=lambda k: (fvals[k], k))
        simplex = [simplex[k] for k in order]
        fvals = [fvals[k] for k in order]
        diameter = max(np.max(np.abs(v - simplex[0])) for v in simplex[1:])
        if diameter < xtol and fvals[-1] - fvals[0] < ftol:
            return
        centroid = np.mean(simplex[:-1], axis=0)
        worst = simplex[-1]
        reflected = centroid + (centroid - worst)
        f_r = rec(reflected)
        if f_r < fvals[0]:
            expanded = centroid + 2.0 * (centroid - worst)
            f_e = rec(expanded)
            if f_e < f_r:
                simplex[-1], fvals[-1] = expanded, f_e
            else:
                simplex[-1], fvals[-1] = reflected, f_r
        elif f_r < fvals[-2]:
            simplex[-1], fvals[-1] = reflected, f_r
        else:
            if f_r < fvals[-1]:
                contracted = centroid + 0.5 * (reflected - centroid)
            else:
                contracted = centroid - 0.5 * (centroid - worst)
            f_c = rec(contracted)
            if f_c < min(f_r, fvals[-1]):
                simplex[-1], fvals[-1] = contracted, f_c
            else:
                # shrink toward the best vertex
                for k in range(1, dim + 1):
                    simplex[k] = simplex[0] + 0.5 * (simplex[k] - simplex[0])
                    fvals[k] = rec(simplex[k])


def _partition_sizes(n):
    """Chunk sizes <= SUBSPACE_MAX, avoiding a trailing singleton."""
    sizes = []
    rem = n
    while rem > 0:
        take = min(SUBSPACE_MAX, rem)
        if rem - take == 1 and take > 1:
            take -= 1
        sizes.append(take)
        rem -= take
    return sizes


class _SubspaceBest:
    """Track the best point seen by one inner Nelder-Mead run."""

    def __init__(self, f, x0):
        self.f = f
        self.best_x = np.array(x0, dtype=float)
        self.best_f = math.inf

    def __call__(self, x):
        val = self.f(x)
        if val < self.best_f:
            self.best_f = val
            self.best_x = np.array(x, dtype=float)
        return val


def _subplex(rec, x0, cfg):
    dim = len(x0)
    x = np.array(x0, dtype=float)
    rec(x)
    if dim == 0:
        return
    prev_x = x.copy()
    step = cfg.initial_step
    while step >= cfg.xtol:
        movement = np.abs(x - prev_x)
        order = sorted(range(dim), key=lambda i: (-movement[i], i))
        prev_x = x.copy()
        f_before = rec.best_f
        pos = 0
        for size in _partition_sizes(dim):
            coords = order[pos : pos + size]
            pos += size

            def sub_objective(sub_x):
                full = x.copy()
                full[coords] = sub_x
                return rec(full)

            inner = _SubspaceBest(sub_objective, x[coords])
            # refine the subspace simplex to a fraction of its initial size,
            # then hand control back to the outer cycle
            _nelder_mead(inner, x[coords], step, max(cfg.xtol, 0.2 * step), cfg.ftol)
            if not math.isinf(inner.best_f):
                x[coords] = inner.best_x
        improvement = f_before - rec.best_f
        if improvement < cfg.ftol or np.max(np.abs(x - prev_x)) < cfg.xtol:
            step *= 0.5


def minimize(f, x0, cfg):
    """Minimize f from x0 under an OptimizerConfig; see module docstring."""
    cfg.validate()
    x0 = np.asarray(x0, dtype=float)
    rec = _Recorder(f, cfg.max_evals)
    try:
        if cfg.algorithm == "nelder_mead":
            _nelder_mead(rec, x0, cfg.initial_step, cfg.xtol, cfg.ftol)
        else:
            _subplex(rec, x0, cfg)
    except _BudgetExhausted:
        pass
    if rec.best_x is None:
        raise RuntimeError("optimizer made no evaluations")
    return VqeResult(
        energy=rec.best_f,
        params=rec.best_x,
        n_evals=rec.n_evals,
        history=tuple(rec.history),
        init_energy=rec.history[0][1],
    )


def init_params_tvha(n_steps, rng=None):
    """Ramped initial parameters: per step the two-body slots carry n/N,
    the one-body slot carries 1."""
    if n_steps < 1:
        raise ValueError("need at least one Trotter step")
    if rng is not None:
        return rng.random(3 * n_steps)
    out = np.empty(3 * n_steps)
    for n in range(1, n_steps + 1):
        ramp = n / n_steps
        out[3 * (n - 1)] = ramp
        out[3 * (n - 1) + 1] = ramp
        out[3 * (n - 1) + 2] = 1.0
    return out


def run_vqe(ansatz, hamiltonian, init, x0, cfg):
    """Full loop: parameters -> statevector -> expectation, minimized."""
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (ansatz.n_params,):
        raise ValueError(
            f"x0 has {x0.shape} entries, circuit expects {ansatz.n_params}"
        )

    def objective(x):
        return sim.expectation(sim.run(ansatz, x, init), hamiltonian)

    return minimize(objective, x0, cfg)
