"""Exact groupoid cardinalities, G-set generating functions and
homomorphism-counting equivalence tests."""

from .errors import GroupoidCardError, TheoremViolation, ValidationError
from .functors import (
    GroupoidFunctor,
    check_order_props,
    classify,
    decide_equivalence_via_card,
    mutual_functor_equivalence,
    ternary_factorize,
)
from .groupoids import (
    FiniteGroupoid,
    action_groupoid,
    connected_groupoid,
    coproduct,
    delooping,
    discrete,
    functor_groupoid,
    functor_groupoid_cardinality,
    groupoid_cardinality,
    is_equivalent,
    product,
    skeleton,
)
from .groups import FiniteGroup, GroupHom, count_homs, cyclic, group_from_cayley, symmetric_group
from .homotopy import PiFiniteSpace, groupoid_to_pifinite, homotopy_cardinality, postnikov_images_n12
from .relational import RelationalStructure, lovasz_iso_test
from .relfin import (
    RelFinObject,
    counting_distinguisher,
    decide_equivalence,
    hom_groupoid_cardinality,
    verify_factor_decomposition,
)
from .series import RationalSeries, gl_order, gset_egf, gset_groupoid_exponent

__all__ = [
    "action_groupoid",
    "check_order_props",
    "classify",
    "connected_groupoid",
    "coproduct",
    "count_homs",
    "counting_distinguisher",
    "cyclic",
    "decide_equivalence",
    "decide_equivalence_via_card",
    "delooping",
    "discrete",
    "FiniteGroup",
    "FiniteGroupoid",
    "functor_groupoid",
    "functor_groupoid_cardinality",
    "gl_order",
    "group_from_cayley",
    "GroupHom",
    "groupoid_cardinality",
    "groupoid_to_pifinite",
    "GroupoidCardError",
    "GroupoidFunctor",
    "gset_egf",
    "gset_groupoid_exponent",
    "hom_groupoid_cardinality",
    "homotopy_cardinality",
    "is_equivalent",
    "lovasz_iso_test",
    "mutual_functor_equivalence",
    "PiFiniteSpace",
    "postnikov_images_n12",
    "product",
    "RationalSeries",
    "RelationalStructure",
    "RelFinObject",
    "skeleton",
    "symmetric_group",
    "ternary_factorize",
    "TheoremViolation",
    "ValidationError",
    "verify_factor_decomposition",
]

__version__ = "0.1.0"
