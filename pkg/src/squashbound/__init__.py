"""Entropic bounds on multipartite squashed entanglement for dense states."""

from .bounds import (
    BoundReport,
    ExtensionState,
    best_lower_bound,
    ci_objective,
    classical_extension,
    corollary2_bound,
    eigendecomposition_ensemble,
    lemma1_bound,
    lemma3_bound,
    pure_state_squashed,
    squashed_objective,
)
from .entropy import (
    PartyGrouping,
    check_strong_subadditivity,
    cmi_chain,
    conditional_mutual_information,
    multipartite_mutual_information,
    subsystem_entropy,
    von_neumann_entropy,
)
from .errors import (
    BracketError,
    DimensionGuardError,
    ExtensionMismatchError,
    FileFormatError,
    LayoutError,
    MethodMismatchError,
    SquashboundError,
    StateValidationError,
)
from .qstate import (
    DEFAULT_MAX_DIM,
    DensityMatrix,
    StateVector,
    SystemLayout,
    density_from_vector,
    mix,
    partial_trace,
    permute_parties,
    tensor,
)
from .states import (
    FamilySpec,
    basis_state,
    family_state,
    generalized_werner,
    ghz,
    ghz_w_mixture,
    product_state,
    random_mixed,
    random_pure,
    random_unitary,
    w_state,
)
from .stateio import load_extension, load_state, save_extension, save_state, save_state_vector
from .sweep import (
    BOUND_FUNCTIONS,
    Crossing,
    SweepResult,
    ThresholdResult,
    detect_crossings,
    find_threshold,
    make_grid,
    parse_grid,
    sweep_family,
    write_sweep_csv,
    write_sweep_svg,
)

__version__ = "0.1.0"

__all__ = [
    "BOUND_FUNCTIONS",
    "BoundReport",
    "BracketError",
    "Crossing",
    "DEFAULT_MAX_DIM",
    "DensityMatrix",
    "DimensionGuardError",
    "ExtensionMismatchError",
    "ExtensionState",
    "FamilySpec",
    "FileFormatError",
    "LayoutError",
    "MethodMismatchError",
    "PartyGrouping",
    "SquashboundError",
    "StateValidationError",
    "StateVector",
    "SweepResult",
    "SystemLayout",
    "ThresholdResult",
    "basis_state",
    "best_lower_bound",
    "check_strong_subadditivity",
    "ci_objective",
    "classical_extension",
    "cmi_chain",
    "conditional_mutual_information",
    "corollary2_bound",
    "density_from_vector",
    "detect_crossings",
    "eigendecomposition_ensemble",
    "family_state",
    "find_threshold",
    "generalized_werner",
    "ghz",
    "ghz_w_mixture",
    "lemma1_bound",
    "lemma3_bound",
    "load_extension",
    "load_state",
    "make_grid",
    "mix",
    "multipartite_mutual_information",
    "parse_grid",
    "partial_trace",
    "permute_parties",
    "product_state",
    "pure_state_squashed",
    "random_mixed",
    "random_pure",
    "random_unitary",
    "save_extension",
    "save_state",
    "save_state_vector",
    "squashed_objective",
    "subsystem_entropy",
    "sweep_family",
    "tensor",
    "von_neumann_entropy",
    "w_state",
    "write_sweep_csv",
    "write_sweep_svg",
]
