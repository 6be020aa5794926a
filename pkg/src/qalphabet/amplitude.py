"""State-vector Grover search over an unstructured database of N items.

Amplitudes are held as complex128 even though the ideal algorithm keeps them
real. States are validated on construction and never renormalised: a norm
drift beyond ``NORM_TOL`` is a bug and raises.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DimensionError, InvalidSizeError, InvalidTargetError, NormalizationError

NORM_TOL = 1e-12
MATRIX_ORACLE_MAX_SIZE = 16


@dataclass(frozen=True, eq=False)
class AmplitudeState:
    """Normalised amplitude vector over ``size`` database entries."""

    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128).ravel()
        if amps.shape[0] < 2:
            raise InvalidSizeError(f"state needs at least 2 amplitudes, got {amps.shape[0]}")
        norm2 = float(np.vdot(amps, amps).real)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise NormalizationError(f"squared norm {norm2!r} differs from 1 by more than {NORM_TOL}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def size(self) -> int:
        return self.amplitudes.shape[0]

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def __len__(self):
        return self.size

    def __eq__(self, other):
        if not isinstance(other, AmplitudeState):
            return NotImplemented
        return np.array_equal(self.amplitudes, other.amplitudes)

    def allclose(self, other: "AmplitudeState", atol: float = 1e-12) -> bool:
        return self.size == other.size and np.allclose(self.amplitudes, other.amplitudes, rtol=0, atol=atol)


@dataclass(frozen=True)
class SearchSpec:
    """A database of ``size`` items with a single marked ``target``."""

    size: int
    target: int

    def __post_init__(self):
        if int(self.size) != self.size or self.size < 2:
            raise InvalidSizeError(f"database size must be an integer >= 2, got {self.size!r}")
        if int(self.target) != self.target or not 0 <= self.target < self.size:
            raise InvalidTargetError(f"target {self.target!r} outside [0, {self.size})")
        object.__setattr__(self, "size", int(self.size))
        object.__setattr__(self, "target", int(self.target))


def _check_dims(state: AmplitudeState, spec: SearchSpec) -> None:
    if state.size != spec.size:
        raise DimensionError(f"state has {state.size} amplitudes but search is over {spec.size} items")


def uniform_state(size: int) -> AmplitudeState:
    """Equal-weight superposition, every amplitude ``1/sqrt(size)``."""
    if int(size) != size or size < 2:
        raise InvalidSizeError(f"size must be an integer >= 2, got {size!r}")
    size = int(size)
    return AmplitudeState(np.full(size, 1.0 / math.sqrt(size), dtype=np.complex128))


def oracle_reflect(state: AmplitudeState, spec: SearchSpec) -> AmplitudeState:
    """Flip the sign of the target amplitude."""
    _check_dims(state, spec)
    amps = state.amplitudes.copy()
    amps[spec.target] = -amps[spec.target]
    return AmplitudeState(amps)


def diffusion(state: AmplitudeState) -> AmplitudeState:
    """Reflect every amplitude about the mean: ``a_i -> 2*mean - a_i``."""
    amps = state.amplitudes
    return AmplitudeState(2.0 * amps.mean() - amps)


def grover_iterate(state: AmplitudeState, spec: SearchSpec) -> AmplitudeState:
    return diffusion(oracle_reflect(state, spec))


def run_grover(spec: SearchSpec, queries: int, *, backend: str | None = None) -> AmplitudeState:
    """Start from the uniform state and apply ``queries`` Grover iterations."""
    if int(queries) != queries or queries < 0:
        raise ValueError(f"queries must be a non-negative integer, got {queries!r}")
    k = _kernels.kernels if backend is None else _kernels.select(backend)
    amps = uniform_state(spec.size).amplitudes.copy()
    k.grover_loop(amps, spec.target, int(queries))
    return AmplitudeState(amps)


def success_probability(state: AmplitudeState, spec: SearchSpec) -> float:
    _check_dims(state, spec)
    return float(abs(state.amplitudes[spec.target]) ** 2)


def measure(state: AmplitudeState, rng: np.random.Generator, shots: int | None = None, *, backend: str | None = None):
    """Sample basis indices with probability ``|a_i|^2``.

    Returns a single ``int`` when ``shots`` is None, otherwise an int64 array.
    """
    probs = state.probabilities
    total = float(probs.sum())
    if abs(total - 1.0) > NORM_TOL:
        raise NormalizationError(f"probabilities sum to {total!r}")
    k = _kernels.kernels if backend is None else _kernels.select(backend)
    cumulative = np.cumsum(probs)
    count = 1 if shots is None else int(shots)
    idx = k.sample_indices(cumulative, rng.random(count))
    return int(idx[0]) if shots is None else np.asarray(idx, dtype=np.int64)


# Explicit-matrix reference path, used as a test oracle for small N.


def diffusion_matrix(size: int) -> np.ndarray:
    if size > MATRIX_ORACLE_MAX_SIZE:
        raise InvalidSizeError(f"matrix reference path limited to N <= {MATRIX_ORACLE_MAX_SIZE}")
    return np.full((size, size), 2.0 / size) - np.eye(size)


def oracle_matrix(spec: SearchSpec) -> np.ndarray:
    m = np.eye(spec.size)
    m[spec.target, spec.target] = -1.0
    return m


def grover_matrix(spec: SearchSpec) -> np.ndarray:
    return diffusion_matrix(spec.size) @ oracle_matrix(spec)
