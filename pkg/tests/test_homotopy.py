from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from groupoidcard.errors import ValidationError
from groupoidcard.functors import functor_from_hom, identity_functor
from groupoidcard.groupoids import (
    connected_groupoid,
    coproduct,
    delooping,
    discrete,
    empty_groupoid,
    groupoid_cardinality,
)
from groupoidcard.groups import cyclic, make_hom, quotient_group, trivial_hom
from groupoidcard.homotopy import (
    PiFiniteSpace,
    groupoid_to_pifinite,
    homotopy_cardinality,
    postnikov_images_n12,
)
from strategies import functors, groupoids

C2, C3, C4 = cyclic(2), cyclic(3), cyclic(4)


def test_cardinality_examples():
    assert homotopy_cardinality(PiFiniteSpace(((3,),))) == Fraction(1, 3)
    assert homotopy_cardinality(PiFiniteSpace(((1, 2),))) == 2
    assert homotopy_cardinality(PiFiniteSpace(())) == 0
    assert homotopy_cardinality(PiFiniteSpace(((3,), (1, 2)))) == Fraction(7, 3)
    assert homotopy_cardinality(PiFiniteSpace(((),))) == 1


def test_validation():
    for bad in [((0,),), ((2, -1),), ((1.5,),), ((True,),)]:
        with pytest.raises(ValidationError):
            PiFiniteSpace(bad)


def test_groupoid_examples():
    x = groupoid_to_pifinite(delooping(C2))
    assert x.components == ((2,),) and homotopy_cardinality(x) == Fraction(1, 2)
    x = groupoid_to_pifinite(discrete(3))
    assert x.components == ((1,),) * 3 and homotopy_cardinality(x) == 3
    x = groupoid_to_pifinite(coproduct(delooping(C2), delooping(C3)))
    assert homotopy_cardinality(x) == Fraction(5, 6)
    assert groupoid_to_pifinite(empty_groupoid()).components == ()


@given(st.lists(st.integers(1, 9), max_size=6), st.integers(1, 9))
def test_alternating_levels(orders, k):
    base = homotopy_cardinality(PiFiniteSpace((tuple(orders),)))
    longer = homotopy_cardinality(PiFiniteSpace((tuple(orders) + (k,),)))
    level = len(orders) + 1
    assert longer == (base * k if level % 2 == 0 else base / k)


@given(groupoids(max_classes=4, max_order=12))
def test_groupoid_agreement(g):
    assert homotopy_cardinality(groupoid_to_pifinite(g)) == groupoid_cardinality(g)


def test_postnikov_examples():
    g = coproduct(connected_groupoid(C3, 2), delooping(C2))
    r = postnikov_images_n12(identity_functor(g))
    assert r.im1_card == r.im2_card == groupoid_cardinality(g)

    r = postnikov_images_n12(functor_from_hom(trivial_hom(C4, C2)))
    assert (r.im2_card, r.im1_card) == (1, Fraction(1, 2)) and r.inequality_holds

    _, p = quotient_group(C4, (0, 2))
    r = postnikov_images_n12(functor_from_hom(make_hom(C4, C2, p.map)))
    assert (r.im2_card, r.im1_card) == (Fraction(1, 2), Fraction(1, 2)) and r.inequality_holds


@given(functors())
def test_postnikov_inequality_on_random_functors(f):
    r = postnikov_images_n12(f)
    assert r.im2_card >= r.im1_card
    assert r.im1_card <= groupoid_cardinality(f.target)
