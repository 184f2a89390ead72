"""Exact quantum cohomology of nonsingular projective toric varieties
whose fans sit in the well-behaved tiers, with primitive relations,
stratum bases, Giambelli lifts, blow-down towers, and curve trees."""

from . import errors
from .catalog import (
    blowup_p2_one,
    blowup_p2_three,
    blowup_p2_two,
    census,
    corpus,
    hirzebruch,
    twisted_bundle_threefold,
    product_p1p1,
    projective_plane,
    projective_space,
)
from .cohomology import (
    CohomologyClass,
    Shelling,
    basis_class,
    basis_tau,
    betti_census,
    class_degrees,
    cup,
    degree_dimension,
    integrate,
    normal_form,
    point_class,
    shelling,
    stratum_class,
    unit_class,
)
from .curves import (
    ToricTree,
    min_tree,
    signed_distance,
    tree_for_class,
    tree_total,
    wall_curve_class,
)
from .fan import (
    CurveClass,
    Fan,
    PrimitiveData,
    ValidationReport,
    curve_class,
    decompose_effective,
    faces,
    fan_from_json,
    fan_to_json,
    is_cone,
    is_isomorphic,
    load_fan,
    primitive_data,
    primitive_relation,
    primitive_sets,
    star,
    validate,
)
from .fano import (
    ClassTier,
    ExceptionalData,
    Tier,
    blow_down,
    blow_down_tower,
    check_condition_iii,
    classify,
    exceptional_sets,
    family_predicates,
    is_product_of_projective_spaces,
    primitive_exceptional_sets,
    special_exceptional_sets,
)
from .quantum import (
    Presentation,
    QuantumClass,
    QuantumTerm,
    classical,
    divisor_product_closed_form,
    evaluate_terms,
    giambelli,
    gw3,
    presentation,
    quantum_degrees,
    quantum_product,
    reduce_monomial,
    zero_curve,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "Fan",
    "ValidationReport",
    "CurveClass",
    "PrimitiveData",
    "validate",
    "faces",
    "is_cone",
    "curve_class",
    "primitive_sets",
    "primitive_relation",
    "primitive_data",
    "star",
    "decompose_effective",
    "is_isomorphic",
    "load_fan",
    "fan_from_json",
    "fan_to_json",
    "Tier",
    "ClassTier",
    "ExceptionalData",
    "classify",
    "check_condition_iii",
    "exceptional_sets",
    "special_exceptional_sets",
    "family_predicates",
    "primitive_exceptional_sets",
    "blow_down",
    "blow_down_tower",
    "is_product_of_projective_spaces",
    "Shelling",
    "CohomologyClass",
    "shelling",
    "normal_form",
    "cup",
    "stratum_class",
    "integrate",
    "betti_census",
    "basis_tau",
    "basis_class",
    "unit_class",
    "point_class",
    "class_degrees",
    "degree_dimension",
    "QuantumClass",
    "QuantumTerm",
    "Presentation",
    "presentation",
    "giambelli",
    "divisor_product_closed_form",
    "reduce_monomial",
    "evaluate_terms",
    "quantum_product",
    "gw3",
    "quantum_degrees",
    "classical",
    "zero_curve",
    "ToricTree",
    "signed_distance",
    "wall_curve_class",
    "min_tree",
    "tree_for_class",
    "tree_total",
    "projective_space",
    "projective_plane",
    "product_p1p1",
    "hirzebruch",
    "blowup_p2_one",
    "blowup_p2_two",
    "blowup_p2_three",
    "twisted_bundle_threefold",
    "corpus",
    "census",
]
