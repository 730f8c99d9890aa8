"""Exact oriented-matroid toolkit: chirotopes, covectors, symmetry groups, extensions."""

from .core import AxiomReport, Chirotope, alternating_chirotope, check_chirotope_axioms, chirotope_value
from .exact import QuadExt, det_sign, sign_of
from .extension import (
    ExtensionError,
    contract_at_extension,
    extend,
    fixed_point_extension,
    majority_localization,
)
from .faces import (
    check_covector_axioms,
    cocircuit_pattern_check,
    cocircuits,
    compose,
    covector_split_check,
    covectors,
    eliminate,
    extreme_points,
    is_acyclic,
    is_matroid_polytope,
)
from .geometry import (
    PointConfig,
    chirotope_from_points,
    example_config,
    gap_construction,
    is_generic_point,
)
from .symmetry import (
    GroupDescriptor,
    Permutation,
    classify_permutation,
    classify_rank4,
    cyclicity_criterion,
    fixed_rank_check,
    flat_orderings,
    identify_group,
    maximal_cyclic_intersection_check,
    orbits,
    rigidity_check,
    symmetry_group,
    verify_m_symmetry,
)

__version__ = "0.1.0"
