"""Grover search under per-iteration dephasing.

Ideal Grover dynamics never leaves the plane spanned by the target |t> and
the uniform superposition of the other N-1 items |r>. A phase-damping channel
diagonal in that split keeps it there too, so a 2x2 density matrix suffices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, InvalidSizeError

TOL = 1e-12
FULL_SPACE_MAX_SIZE = 8


@dataclass(frozen=True)
class ReducedDensityState:
    """Density matrix in the (rest, target) basis.

    ``rho_tr`` is the target-row, rest-column coherence; its conjugate sits
    in the opposite corner.
    """

    rho_tt: float
    rho_rr: float
    rho_tr: complex

    def __post_init__(self):
        tt, rr = float(self.rho_tt), float(self.rho_rr)
        tr = complex(self.rho_tr)
        if not (-TOL <= tt <= 1 + TOL and -TOL <= rr <= 1 + TOL):
            raise DomainError(f"populations out of [0, 1]: tt={tt!r}, rr={rr!r}")
        if abs(tt + rr - 1.0) > TOL:
            raise DomainError(f"trace {tt + rr!r} differs from 1")
        if abs(tr) ** 2 > tt * rr + TOL:
            raise DomainError("coherence too large: density matrix is not positive semidefinite")
        object.__setattr__(self, "rho_tt", tt)
        object.__setattr__(self, "rho_rr", rr)
        object.__setattr__(self, "rho_tr", tr)

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.rho_rr, self.rho_tr.conjugate()], [self.rho_tr, self.rho_tt]], dtype=np.complex128)

    @property
    def purity(self) -> float:
        return self.rho_tt**2 + self.rho_rr**2 + 2 * abs(self.rho_tr) ** 2


@dataclass(frozen=True)
class DecoherenceParams:
    dephasing_rate: float = 0.0

    def __post_init__(self):
        rate = float(self.dephasing_rate)
        if not rate >= 0:
            raise DomainError(f"dephasing rate must be >= 0, got {self.dephasing_rate!r}")
        object.__setattr__(self, "dephasing_rate", rate)

    @property
    def damping(self) -> float:
        """Factor applied to the coherence per dephasing event."""
        return math.exp(-self.dephasing_rate)


def _angle(database_size: int) -> float:
    if int(database_size) != database_size or database_size < 2:
        raise DomainError(f"database size must be an integer >= 2, got {database_size!r}")
    return math.asin(1.0 / math.sqrt(database_size))


def reduced_initial_state(database_size: int) -> ReducedDensityState:
    _angle(database_size)
    tt = 1.0 / database_size
    rr = 1.0 - tt
    return ReducedDensityState(tt, rr, math.sqrt(tt * rr))


def grover_step_reduced(state: ReducedDensityState, database_size: int) -> ReducedDensityState:
    """One oracle+diffusion iteration: rotation by twice the Grover angle toward |t>."""
    two_theta = 2.0 * _angle(database_size)
    c, s = math.cos(two_theta), math.sin(two_theta)
    tt, rr, re, im = _kernels._rotate_reduced(
        state.rho_tt, state.rho_rr, state.rho_tr.real, state.rho_tr.imag, c, s
    )
    return ReducedDensityState(tt, rr, complex(re, im))


def dephase(state: ReducedDensityState, params: DecoherenceParams) -> ReducedDensityState:
    return ReducedDensityState(state.rho_tt, state.rho_rr, state.rho_tr * params.damping)


def noisy_grover(
    database_size: int, queries: int, params: DecoherenceParams, *, backend: str | None = None
) -> float:
    """Target population after Q (rotate, dephase) rounds from the uniform state."""
    if int(queries) != queries or queries < 0:
        raise DomainError(f"queries must be a non-negative integer, got {queries!r}")
    start = reduced_initial_state(database_size)
    two_theta = 2.0 * _angle(database_size)
    k = _kernels.kernels if backend is None else _kernels.select(backend)
    tt, rr, re, im = k.reduced_loop(
        start.rho_tt,
        start.rho_rr,
        start.rho_tr.real,
        start.rho_tr.imag,
        math.cos(two_theta),
        math.sin(two_theta),
        params.damping,
        int(queries),
    )
    final = ReducedDensityState(tt, rr, complex(re, im))
    return min(1.0, max(0.0, final.rho_tt))


def noisy_grover_full(database_size: int, queries: int, params: DecoherenceParams, target: int = 0) -> float:
    """Same quantity computed on the full N x N density matrix (N <= 8).

    The channel keeps the target/non-target blocks and scales the cross
    blocks by exp(-rate); it is a cross-check for the reduced model.
    """
    n = int(database_size)
    if n > FULL_SPACE_MAX_SIZE:
        raise InvalidSizeError(f"full-space path limited to N <= {FULL_SPACE_MAX_SIZE}")
    _angle(n)
    psi = np.full(n, 1.0 / math.sqrt(n), dtype=np.complex128)
    rho = np.outer(psi, psi.conj())
    oracle = np.eye(n)
    oracle[target, target] = -1.0
    grover = (np.full((n, n), 2.0 / n) - np.eye(n)) @ oracle
    mask = np.full((n, n), params.damping)
    mask[target, target] = 1.0
    others = np.arange(n) != target
    mask[np.ix_(others, others)] = 1.0
    for _ in range(int(queries)):
        rho = grover @ rho @ grover.conj().T
        rho = rho * mask
    return float(rho[target, target].real)

