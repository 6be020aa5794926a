"""Monte Carlo model of template-directed chain assembly.

Each site of a chain is filled by a Q-query search over an alphabet of N
building blocks and picks a wrong block with the residual probability
epsilon(N, Q). Sites err independently.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from . import _kernels
from .amplitude import SearchSpec, run_grover
from .errors import DomainError, RangeError
from .queries import residual_error

MAX_TOTAL_SITES = 2**48
STATE_VECTOR_MAX_ALPHABET = 32
_CHUNK = 1 << 20


@dataclass(frozen=True)
class AssemblyConfig:
    alphabet_size: int
    queries: int
    chain_length: int
    trials: int
    seed: int

    def __post_init__(self):
        for name, lo in (("alphabet_size", 2), ("queries", 1), ("chain_length", 1), ("trials", 1)):
            v = getattr(self, name)
            if isinstance(v, bool) or int(v) != v or v < lo:
                raise DomainError(f"{name} must be an integer >= {lo}, got {v!r}")
            object.__setattr__(self, name, int(v))
        if int(self.seed) != self.seed or not 0 <= self.seed < 2**64:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "seed", int(self.seed))
        if self.trials * self.chain_length > MAX_TOTAL_SITES:
            raise RangeError(f"trials * chain_length exceeds {MAX_TOTAL_SITES} sites")

    @property
    def total_sites(self) -> int:
        return self.trials * self.chain_length


@dataclass(frozen=True)
class AssemblyReport:
    per_site_error: float
    expected_chain_fidelity: float
    total_sites: int
    error_sites: int
    empirical_site_error: float
    site_error_stderr: float
    error_free_chains: int
    empirical_chain_fidelity: float
    chain_fidelity_stderr: float
    # (errors in a chain, number of chains with that many errors), ascending
    error_count_histogram: tuple[tuple[int, int], ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["error_count_histogram"] = {str(k): v for k, v in self.error_count_histogram}
        return d


def per_site_error(alphabet_size: int, queries: int) -> float:
    return residual_error(alphabet_size, queries)


def chain_fidelity(site_error: float, chain_length: int) -> float:
    """Probability that all ``chain_length`` independent sites are correct."""
    if not 0.0 <= site_error <= 1.0:
        raise DomainError(f"site error must lie in [0, 1], got {site_error!r}")
    if int(chain_length) != chain_length or chain_length < 1:
        raise DomainError(f"chain length must be an integer >= 1, got {chain_length!r}")
    return (1.0 - site_error) ** int(chain_length)


def trial_stream(seed: int, trial: int) -> np.random.Generator:
    """Independent stream for one trial, keyed on (seed, trial index) only."""
    return np.random.default_rng([int(seed), int(trial)])


def _count_errors_closed_form(config, eps, rng, k):
    errors = 0
    remaining = config.chain_length
    while remaining:
        n = min(remaining, _CHUNK)
        errors += k.count_below(rng.random(n), eps)
        remaining -= n
    return errors


def _count_errors_state_vector(config, cumulative, rng, k):
    errors = 0
    remaining = config.chain_length
    n_letters = config.alphabet_size
    while remaining:
        n = min(remaining, _CHUNK)
        targets = rng.integers(0, n_letters, size=n)
        uniforms = rng.random(n)
        for t in range(n_letters):
            picked = k.sample_indices(cumulative[t], uniforms[targets == t])
            errors += int(np.count_nonzero(np.asarray(picked) != t))
        remaining -= n
    return errors


def simulate_assembly(config: AssemblyConfig, *, mode: str = "closed_form", backend: str | None = None) -> AssemblyReport:
    """Assemble ``trials`` chains and aggregate error statistics.

    ``mode="state_vector"`` measures an explicitly simulated Grover state at
    every site (alphabets up to 32 letters) instead of drawing against the
    closed-form error; it exists to validate the fast path.
    """
    k = _kernels.kernels if backend is None else _kernels.select(backend)
    eps = per_site_error(config.alphabet_size, config.queries)
    if mode == "closed_form":
        count = lambda rng: _count_errors_closed_form(config, eps, rng, k)  # noqa: E731
    elif mode == "state_vector":
        if config.alphabet_size > STATE_VECTOR_MAX_ALPHABET:
            raise DomainError(f"state_vector mode supports alphabets up to {STATE_VECTOR_MAX_ALPHABET}")
        cumulative = [
            np.cumsum(run_grover(SearchSpec(config.alphabet_size, t), config.queries, backend=k.name).probabilities)
            for t in range(config.alphabet_size)
        ]
        count = lambda rng: _count_errors_state_vector(config, cumulative, rng, k)  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")

    per_chain = np.empty(config.trials, dtype=np.int64)
    for trial in range(config.trials):
        per_chain[trial] = count(trial_stream(config.seed, trial))

    sites = config.total_sites
    error_sites = int(per_chain.sum())
    p_site = error_sites / sites
    clean = int(np.count_nonzero(per_chain == 0))
    p_chain = clean / config.trials
    values, counts = np.unique(per_chain, return_counts=True)
    return AssemblyReport(
        per_site_error=eps,
        expected_chain_fidelity=chain_fidelity(eps, config.chain_length),
        total_sites=sites,
        error_sites=error_sites,
        empirical_site_error=p_site,
        site_error_stderr=math.sqrt(p_site * (1.0 - p_site) / sites),
        error_free_chains=clean,
        empirical_chain_fidelity=p_chain,
        chain_fidelity_stderr=math.sqrt(p_chain * (1.0 - p_chain) / config.trials),
        error_count_histogram=tuple((int(v), int(c)) for v, c in zip(values, counts)),
    )


SCORECARD_PAIRS = ((1, 4), (2, 10), (3, 20), (3, 21))
SCORECARD_CHAIN_LENGTH = 1000


@dataclass(frozen=True)
class ScorecardRow:
    queries: int
    alphabet_size: int
    site_error: float
    chain_fidelity: float


def alphabet_scorecard(chain_length: int = SCORECARD_CHAIN_LENGTH) -> list[ScorecardRow]:
    """Closed-form error and chain fidelity for the biologically relevant (Q, N) pairs."""
    rows = []
    for q, n in SCORECARD_PAIRS:
        eps = per_site_error(n, q)
        rows.append(ScorecardRow(q, n, eps, chain_fidelity(eps, chain_length)))
    return rows
