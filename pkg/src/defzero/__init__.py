"""Random binary reaction networks: exact deficiency and threshold experiments.

The package builds reaction networks from Erdos-Renyi random graphs over the
universe of zeroth-order, unary, and binary complexes on n species, computes
their deficiency exactly with integer arithmetic, and runs seeded Monte
Carlo experiments that probe how the deficiency-zero probability moves with
the edge-probability scaling p = c * n**-beta.
"""

from .complexes import (
    Complex,
    complex_to_index,
    complex_vector,
    index_to_complex,
    universe_size,
)
from .experiments import (
    EstimateRow,
    IsolatedTailSpec,
    SweepSpec,
    deficiency_is_zero,
    estimate_def_zero_prob,
    estimate_four_species_given_paired,
    estimate_isolated_tail,
    estimate_matrix_independence,
    estimate_paired_given_def_zero,
    exact_def_zero_prob_small,
    sweep_threshold,
    wilson_interval,
)
from .netparse import (
    NetworkDocument,
    NetworkParseError,
    document_from_network,
    parse_network,
    serialize_network,
    to_reaction_network,
)
from .network import (
    ComponentReport,
    DeficiencyReport,
    Reaction,
    ReactionNetwork,
    StoichMatrix,
)
from .sampler import (
    ErTrialConfig,
    SparseSignMatrix,
    count_isolated,
    is_columns_independent,
    sample_er_network,
    sample_k_paired,
    sample_sparse_sign_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Complex",
    "ComponentReport",
    "DeficiencyReport",
    "ErTrialConfig",
    "EstimateRow",
    "IsolatedTailSpec",
    "NetworkDocument",
    "NetworkParseError",
    "Reaction",
    "ReactionNetwork",
    "SparseSignMatrix",
    "StoichMatrix",
    "SweepSpec",
    "complex_to_index",
    "complex_vector",
    "count_isolated",
    "deficiency_is_zero",
    "document_from_network",
    "estimate_def_zero_prob",
    "estimate_four_species_given_paired",
    "estimate_isolated_tail",
    "estimate_matrix_independence",
    "estimate_paired_given_def_zero",
    "exact_def_zero_prob_small",
    "index_to_complex",
    "is_columns_independent",
    "parse_network",
    "sample_er_network",
    "sample_k_paired",
    "sample_sparse_sign_matrix",
    "serialize_network",
    "sweep_threshold",
    "to_reaction_network",
    "universe_size",
    "wilson_interval",
]
