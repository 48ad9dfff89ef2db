"""Two-qudit circulant states and quantum-discord analysis.

The package builds block-circulant bipartite density matrices, decides
whether their quantum discord vanishes through structural linear-algebra
criteria, and independently certifies the verdict with a numeric
optimizer over local projective measurements.
"""

from .blocks import (
    CRITERION_BELL,
    CRITERION_CIRCULANT,
    CRITERION_COMMUTATION,
    CRITERION_DIAGONAL,
    BlockDecomposition,
    ConditionFailure,
    NecessaryConditionsReport,
    PhaseVector,
    StructuralVerdict,
    bell_zero_discord_check,
    circulant_necessary_conditions,
    circulant_theorem_check,
    classical_decomposition,
    completely_classical_check,
    extract_blocks,
    generate_zero_discord,
    is_prime,
    phase_family,
    structural_discord_zero,
)
from .discord import (
    DiscordResult,
    MeasurementBasis,
    OptimizerConfig,
    classical_correlation,
    conditional_entropy,
    discord,
    mutual_information,
)
from .errors import (
    DimensionError,
    DiscordantError,
    InvalidMeasurement,
    InvalidSpec,
    PreconditionError,
    PrimeRequired,
)
from .linalg import (
    check_density_matrix,
    commutator_norm,
    eig_hermitian,
    fourier_matrix,
    is_normal,
    partial_trace,
    random_unitary,
    von_neumann_entropy,
)
from .serialize import (
    LoadedState,
    bell_to_json,
    circulant_to_json,
    dense_to_json,
    load_state_file,
    parse_state,
)
from .states import (
    BellWeights,
    CirculantSpec,
    NotCirculant,
    bell_diagonal_state,
    bell_projector,
    circulant_state,
    commuting_group_invariant_state,
    flip_operator,
    isotropic_state,
    max_entangled_projector,
    orthogonal_invariant_state,
    ppt_check_commuting,
    project_circulant,
    shift_operator,
    validate_bell_weights,
    validate_circulant_spec,
    werner_state,
)
from .verify import SuiteResult, o2_simplex_rows, perturb_spec, random_zero_discord_spec, run_verify

__version__ = "0.1.0"

__all__ = [
    "BellWeights",
    "BlockDecomposition",
    "CirculantSpec",
    "ConditionFailure",
    "CRITERION_BELL",
    "CRITERION_CIRCULANT",
    "CRITERION_COMMUTATION",
    "CRITERION_DIAGONAL",
    "DimensionError",
    "DiscordResult",
    "DiscordantError",
    "InvalidMeasurement",
    "InvalidSpec",
    "LoadedState",
    "MeasurementBasis",
    "NecessaryConditionsReport",
    "NotCirculant",
    "OptimizerConfig",
    "PhaseVector",
    "PreconditionError",
    "PrimeRequired",
    "StructuralVerdict",
    "SuiteResult",
    "bell_diagonal_state",
    "bell_projector",
    "bell_to_json",
    "bell_zero_discord_check",
    "check_density_matrix",
    "circulant_necessary_conditions",
    "circulant_state",
    "circulant_theorem_check",
    "circulant_to_json",
    "classical_correlation",
    "classical_decomposition",
    "commutator_norm",
    "commuting_group_invariant_state",
    "completely_classical_check",
    "conditional_entropy",
    "dense_to_json",
    "discord",
    "eig_hermitian",
    "extract_blocks",
    "flip_operator",
    "fourier_matrix",
    "generate_zero_discord",
    "is_normal",
    "is_prime",
    "isotropic_state",
    "load_state_file",
    "max_entangled_projector",
    "mutual_information",
    "o2_simplex_rows",
    "orthogonal_invariant_state",
    "parse_state",
    "partial_trace",
    "perturb_spec",
    "phase_family",
    "ppt_check_commuting",
    "project_circulant",
    "random_unitary",
    "random_zero_discord_spec",
    "run_verify",
    "shift_operator",
    "structural_discord_zero",
    "validate_bell_weights",
    "validate_circulant_spec",
    "von_neumann_entropy",
    "werner_state",
]
