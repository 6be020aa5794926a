"""Hot inner loops, in two interchangeable flavours.

The numba versions are explicit loops compiled with ``@njit``; the numpy
versions are vectorised equivalents. Set ``QALPHABET_PURE_NUMPY=1`` to force
the numpy path (also used automatically when numba is not importable).
Both flavours return identical integer results and floating results that
agree to rounding.
"""

from __future__ import annotations

import os
from types import SimpleNamespace

import numpy as np

try:
    import numba

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None
    HAS_NUMBA = False

ENV_FLAG = "QALPHABET_PURE_NUMPY"


def _flag_set() -> bool:
    return os.environ.get(ENV_FLAG, "").strip().lower() not in ("", "0", "false", "no")


# --------------------------------------------------------------------------
# numpy path


def _np_grover_loop(amps, target, iterations):
    n = amps.shape[0]
    for _ in range(iterations):
        amps[target] = -amps[target]
        mean = amps.sum() / n
        np.subtract(2.0 * mean, amps, out=amps)
    return amps


def _np_count_below(uniforms, threshold):
    return int(np.count_nonzero(uniforms < threshold))


def _np_sample_indices(cumulative, uniforms):
    idx = np.searchsorted(cumulative, uniforms, side="right")
    # guards against u landing in the rounding gap above cumulative[-1]
    return np.minimum(idx, cumulative.shape[0] - 1)


def _np_reduced_loop(tt, rr, tr_re, tr_im, cos2, sin2, damping, steps):
    for _ in range(steps):
        tt, rr, tr_re, tr_im = _rotate_reduced(tt, rr, tr_re, tr_im, cos2, sin2)
        tr_re *= damping
        tr_im *= damping
    return tt, rr, tr_re, tr_im


def _rotate_reduced(tt, rr, tr_re, tr_im, c, s):
    # R = [[c, -s], [s, c]] in the (rest, target) basis; rho -> R rho R^T
    new_rr = c * c * rr - 2.0 * c * s * tr_re + s * s * tt
    new_tt = s * s * rr + 2.0 * c * s * tr_re + c * c * tt
    new_tr_re = c * s * (rr - tt) + (c * c - s * s) * tr_re
    new_tr_im = tr_im
    return new_tt, new_rr, new_tr_re, new_tr_im


numpy_kernels = SimpleNamespace(
    name="numpy",
    grover_loop=_np_grover_loop,
    count_below=_np_count_below,
    sample_indices=_np_sample_indices,
    reduced_loop=_np_reduced_loop,
)


# --------------------------------------------------------------------------
# numba path


def _nb_grover_loop(amps, target, iterations):
    n = amps.shape[0]
    for _ in range(iterations):
        amps[target] = -amps[target]
        total = 0.0 + 0.0j
        for i in range(n):
            total += amps[i]
        twice_mean = 2.0 * (total / n)
        for i in range(n):
            amps[i] = twice_mean - amps[i]
    return amps


def _nb_count_below(uniforms, threshold):
    count = 0
    for i in range(uniforms.shape[0]):
        if uniforms[i] < threshold:
            count += 1
    return count


def _nb_sample_indices(cumulative, uniforms):
    last = cumulative.shape[0] - 1
    out = np.empty(uniforms.shape[0], dtype=np.int64)
    for k in range(uniforms.shape[0]):
        u = uniforms[k]
        lo, hi = 0, cumulative.shape[0]
        while lo < hi:
            mid = (lo + hi) // 2
            if cumulative[mid] <= u:
                lo = mid + 1
            else:
                hi = mid
        out[k] = lo if lo <= last else last
    return out


def _nb_reduced_loop(tt, rr, tr_re, tr_im, cos2, sin2, damping, steps):
    c, s = cos2, sin2
    for _ in range(steps):
        new_rr = c * c * rr - 2.0 * c * s * tr_re + s * s * tt
        new_tt = s * s * rr + 2.0 * c * s * tr_re + c * c * tt
        new_tr_re = c * s * (rr - tt) + (c * c - s * s) * tr_re
        tt, rr, tr_re = new_tt, new_rr, new_tr_re
        tr_re *= damping
        tr_im *= damping
    return tt, rr, tr_re, tr_im


if HAS_NUMBA:
    _jit = numba.njit(cache=True)
    numba_kernels = SimpleNamespace(
        name="numba",
        grover_loop=_jit(_nb_grover_loop),
        count_below=_jit(_nb_count_below),
        sample_indices=_jit(_nb_sample_indices),
        reduced_loop=_jit(_nb_reduced_loop),
    )
else:  # pragma: no cover
    numba_kernels = None


def select(name: str | None = None) -> SimpleNamespace:
    """Return the kernel namespace for ``name`` ("numba" or "numpy").

    With no name, the env flag and numba availability decide.
    """
    if name is None:
        name = "numpy" if (_flag_set() or not HAS_NUMBA) else "numba"
    if name == "numpy":
        return numpy_kernels
    if name == "numba":
        if numba_kernels is None:
            raise RuntimeError("numba backend requested but numba is not installed")
        return numba_kernels
    raise ValueError(f"unknown kernel backend {name!r}")


kernels = select()
BACKEND = kernels.name
