"""Finite-dimensional inclusions of multi-matrix algebras: conditional
expectations, basic constructions, Pimsner-Popa systems and bases, path
models, interchange operators and regular-inclusion basis patching.
"""

from .algebra import (
    AlgebraElement,
    MultiMatrixAlgebra,
    Subalgebra,
    UnitalEmbedding,
    WedderburnData,
    center,
    conditional_expectation,
    generated_subalgebra,
    inclusion_matrix,
    relative_commutant,
    wedderburn,
)
from .basic import BasicConstruction, M1Trace, MarkovData, WatataniData, markov_trace, watatani_index
from .errors import AlgebraError
from .intermediate import (
    check_intermediate,
    interchange_operator,
    interchange_pair,
    intermediate_projection,
    is_commuting_square,
)
from .paths import BratteliDiagram, PathModel, scalar_basis
from .regular import (
    Automorphism,
    CrossedProductModel,
    GroupTable,
    WeylReport,
    check_normalizer,
    coset_distinct,
    coset_system,
    crossed_product,
    patch_bases,
    regular_pipeline,
)
from .systems import PPSystem, classify, complete_to_basis, construct_system_with_support, gram_matrix

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement",
    "AlgebraError",
    "Automorphism",
    "BasicConstruction",
    "BratteliDiagram",
    "CrossedProductModel",
    "GroupTable",
    "M1Trace",
    "MarkovData",
    "MultiMatrixAlgebra",
    "PPSystem",
    "PathModel",
    "Subalgebra",
    "UnitalEmbedding",
    "WatataniData",
    "WedderburnData",
    "WeylReport",
    "center",
    "check_intermediate",
    "check_normalizer",
    "classify",
    "complete_to_basis",
    "conditional_expectation",
    "construct_system_with_support",
    "coset_distinct",
    "coset_system",
    "crossed_product",
    "generated_subalgebra",
    "gram_matrix",
    "inclusion_matrix",
    "interchange_operator",
    "interchange_pair",
    "intermediate_projection",
    "is_commuting_square",
    "markov_trace",
    "patch_bases",
    "regular_pipeline",
    "relative_commutant",
    "scalar_basis",
    "wedderburn",
    "watatani_index",
]
