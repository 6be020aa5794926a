"""Closed-form relation between database size N and query count Q.

The optimal search satisfies ``(2Q+1) * asin(1/sqrt(N)) = pi/2``; it inverts
analytically both ways, so nothing here iterates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RangeError

# slack subtracted before ceil() so float noise at exact ties cannot round up
CEIL_SLACK = 1e-12
MAX_BOOLEAN_QUERIES = 1023


def grover_angle(database_size: float) -> float:
    if not database_size >= 2:
        raise DomainError(f"database size must be >= 2, got {database_size!r}")
    return math.asin(1.0 / math.sqrt(database_size))


def _check_queries(queries, minimum: int) -> int:
    if isinstance(queries, bool) or int(queries) != queries or queries < minimum:
        raise DomainError(f"queries must be an integer >= {minimum}, got {queries!r}")
    return int(queries)


@dataclass(frozen=True)
class QueryPlan:
    database_size: float
    queries: int
    angle: float
    residual_error: float

    @classmethod
    def for_(cls, database_size: float, queries: int) -> "QueryPlan":
        return cls(
            database_size=database_size,
            queries=queries,
            angle=grover_angle(database_size),
            residual_error=residual_error(database_size, queries),
        )


@dataclass(frozen=True)
class ComparisonRow:
    queries: int
    quantum_capacity: float
    boolean_capacity: int
    floor_size: int
    ceiling_size: int
    residual_error_at_floor: float
    residual_error_at_ceiling: float


def optimal_database_size(queries: int) -> float:
    """N solving the optimality relation exactly for ``queries`` >= 1."""
    q = _check_queries(queries, 1)
    return 1.0 / math.sin(math.pi / (2 * (2 * q + 1))) ** 2


def minimal_queries(database_size: float) -> int:
    """Query count whose total rotation lands closest to pi/2.

    This is the Q that maximises the success probability; ties go to the
    smaller Q. Exact solutions return their own Q (N=4 -> 1), and N=21
    returns 3 even though 3 iterations fall just short of pi/2.
    """
    theta = grover_angle(database_size)
    raw = (math.pi / (2.0 * theta) - 1.0) / 2.0
    return max(1, math.ceil(raw - 0.5 - CEIL_SLACK))


def residual_error(database_size: float, queries: int) -> float:
    """Probability that Q iterations on N items return a wrong item."""
    q = _check_queries(queries, 0)
    theta = grover_angle(database_size)
    eps = 1.0 - math.sin((2 * q + 1) * theta) ** 2
    return min(1.0, max(0.0, eps))


def boolean_capacity(queries: int) -> int:
    """Number of items separable by Q classical yes/no queries: ``2**Q``."""
    q = _check_queries(queries, 0)
    if q > MAX_BOOLEAN_QUERIES:
        raise RangeError(f"2**{q} is not representable as a float-compatible capacity")
    return 2**q


def classical_guess_success(database_size: int, queries: int) -> float:
    """Probe Q distinct items one at a time, then guess among the remainder."""
    if int(database_size) != database_size or database_size < 1:
        raise DomainError(f"database size must be a positive integer, got {database_size!r}")
    q = _check_queries(queries, 0)
    n = int(database_size)
    if q >= n:
        return 1.0
    return (q + 1) / n


def comparison_table(max_queries: int) -> list[ComparisonRow]:
    top = _check_queries(max_queries, 1)
    rows = []
    for q in range(1, top + 1):
        n_opt = optimal_database_size(q)
        lo = max(2, math.floor(n_opt + CEIL_SLACK))
        hi = max(2, math.ceil(n_opt - CEIL_SLACK))
        rows.append(
            ComparisonRow(
                queries=q,
                quantum_capacity=n_opt,
                boolean_capacity=boolean_capacity(q),
                floor_size=lo,
                ceiling_size=hi,
                residual_error_at_floor=residual_error(lo, q),
                residual_error_at_ceiling=residual_error(hi, q),
            )
        )
    return rows
