"""Grover search simulation applied to the sizes of genetic alphabets."""

from ._kernels import BACKEND
from .amplitude import (
    AmplitudeState,
    SearchSpec,
    diffusion,
    grover_iterate,
    measure,
    oracle_reflect,
    run_grover,
    success_probability,
    uniform_state,
)
from .assembly import (
    AssemblyConfig,
    AssemblyReport,
    alphabet_scorecard,
    chain_fidelity,
    per_site_error,
    simulate_assembly,
)
from .decoherence import (
    DecoherenceParams,
    ReducedDensityState,
    dephase,
    grover_step_reduced,
    noisy_grover,
    reduced_initial_state,
)
from .errors import (
    DimensionError,
    DomainError,
    InvalidSizeError,
    InvalidTargetError,
    NormalizationError,
    QAlphabetError,
    RangeError,
)
from .queries import (
    ComparisonRow,
    QueryPlan,
    boolean_capacity,
    classical_guess_success,
    comparison_table,
    minimal_queries,
    optimal_database_size,
    residual_error,
)

__version__ = "0.1.0"
