import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from groupoidcard.errors import (
    DegreeTooLarge,
    GroupTooLarge,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotNormal,
    ValidationError,
)
from groupoidcard.groups import (
    PermGroup,
    all_subgroups,
    centralizer_order_in_sym,
    coset_action,
    count_homs,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    enumerate_homs,
    find_isomorphism,
    group_from_cayley,
    hom_predicates,
    identity_hom,
    is_isomorphic,
    make_hom,
    normal_subgroups,
    permutation_group,
    quotient_group,
    small_group,
    small_groups,
    subgroups_up_to_conjugacy,
    symmetric_group,
    trivial_hom,
)
from oracles import hom_count_by_generators, subgroups_by_subsets

SMALL = small_groups(12)


def test_trivial_group_from_table():
    g = group_from_cayley([[0]])
    assert g.order == 1 and g.inverse == (0,)


def test_c2_from_table():
    g = group_from_cayley([[0, 1], [1, 0]])
    assert g.order == 2 and g.inverse == (0, 1)


def test_non_associative_table_rejected():
    with pytest.raises(NotAssociative):
        group_from_cayley([[0, 1, 2], [1, 2, 0], [2, 1, 0]])


@pytest.mark.parametrize(
    "table, err",
    [
        ([[0, 0], [0, 0]], NoIdentity),
        ([[1, 0], [0, 1]], None),
        ([[0, 1], [1, 1]], NoInverse),
        ([[1, 1], [1, 1]], NoIdentity),
        ([[0, 1], [1]], ValidationError),
        ([[0, 2], [2, 0]], ValidationError),
    ],
)
def test_table_validation(table, err):
    if err is None:
        g = group_from_cayley(table)
        assert g.order == 2 and g.table[0] == (0, 1)
    else:
        with pytest.raises(err):
            group_from_cayley(table)


def test_identity_reindexed_to_zero():
    g = group_from_cayley([[2, 0, 1], [0, 1, 2], [1, 2, 0]])
    assert g.table[0] == (0, 1, 2)
    assert is_isomorphic(g, cyclic(3))


def test_order_cap():
    with pytest.raises(GroupTooLarge):
        group_from_cayley([[(a + b) % 513 for b in range(513)] for a in range(513)])


def test_catalogue_is_pairwise_non_isomorphic():
    for (n1, g1), (n2, g2) in itertools.combinations(SMALL, 2):
        assert not is_isomorphic(g1, g2), (n1, n2)
    assert [g.order for _, g in SMALL] == sorted(g.order for _, g in SMALL)


def test_catalogue_counts_per_order():
    counts = {}
    for _, g in SMALL:
        counts[g.order] = counts.get(g.order, 0) + 1
    # number of groups of each order up to 12
    assert counts == {1: 1, 2: 1, 3: 1, 4: 2, 5: 1, 6: 2, 7: 1, 8: 5, 9: 2, 10: 2, 11: 1, 12: 5}


def test_named_builders():
    assert small_group("Q8").order == 8 and not small_group("Q8").is_abelian()
    assert is_isomorphic(dicyclic(2), small_group("Q8"))
    assert dihedral(3).order == 6 and is_isomorphic(dihedral(3), symmetric_group(3))
    assert small_group("S4").order == 24
    with pytest.raises(ValidationError):
        small_group("nope")


@pytest.mark.parametrize("name, g", SMALL)
def test_subgroups_match_subset_closure(name, g):
    assert set(all_subgroups(g)) == subgroups_by_subsets(g.table)


@pytest.mark.parametrize(
    "name, classes",
    [("C1", 1), ("C2", 2), ("S3", 4), ("D4", 8), ("Q8", 6), ("A4", 5), ("D6", 10), ("Dic3", 6)],
)
def test_subgroup_class_counts(name, classes):
    assert len(subgroups_up_to_conjugacy(small_group(name))) == classes


@pytest.mark.parametrize("name, g", SMALL)
def test_subgroup_classes_lagrange_and_order(name, g):
    classes = subgroups_up_to_conjugacy(g)
    keys = [(c.order, c.representative) for c in classes]
    assert keys == sorted(keys)
    total = 0
    for c in classes:
        assert g.order % c.order == 0
        assert g.order % c.class_size == 0
        assert c.index == g.order // c.order
        total += c.class_size
    assert total == len(all_subgroups(g))


def test_s3_subgroup_classes_shape():
    orders = [c.order for c in subgroups_up_to_conjugacy(symmetric_group(3))]
    assert orders == [1, 2, 3, 6]


def test_coset_actions():
    c2 = cyclic(2)
    act = coset_action(c2, (0,))
    assert act.image.order == 2 and act.degree == 2
    s3 = symmetric_group(3)
    whole = coset_action(s3, tuple(range(6)))
    assert whole.degree == 1 and whole.image.order == 1
    a3 = next(c for c in subgroups_up_to_conjugacy(s3) if c.order == 3)
    act = coset_action(s3, a3)
    assert act.degree == 2 and act.image.order == 2
    hom = act.hom()
    assert make_hom(s3, hom.target, hom.map) == hom


def test_coset_action_rejects_non_subgroup():
    with pytest.raises(ValidationError):
        coset_action(symmetric_group(3), (0, 1, 2))


def test_centralizer_examples():
    assert centralizer_order_in_sym(PermGroup(2, frozenset({(0, 1), (1, 0)}))) == 2
    assert centralizer_order_in_sym(PermGroup(3, frozenset({(0, 1, 2)}))) == 6
    assert centralizer_order_in_sym(PermGroup(3, frozenset({(0, 1, 2), (1, 2, 0), (2, 0, 1)}))) == 3
    with pytest.raises(DegreeTooLarge):
        centralizer_order_in_sym(PermGroup(9, frozenset({tuple(range(9))})))


@pytest.mark.parametrize("name, g", small_groups(8))
def test_centralizer_divides_factorial(name, g):
    for c in subgroups_up_to_conjugacy(g):
        z = centralizer_order_in_sym(coset_action(g, c).image)
        assert z >= 1 and factorial(c.index) % z == 0
        # for a transitive action the centralizer is N(H)/H
        norm = [x for x in range(g.order) if {g.conj(x, h) for h in c.representative} == set(c.representative)]
        assert z == len(norm) // c.order


def test_hom_examples():
    c2 = cyclic(2)
    assert count_homs(c2, c2) == 2
    assert count_homs(symmetric_group(3), cyclic(1)) == 1
    assert count_homs(c2, symmetric_group(3)) == 4
    assert count_homs(symmetric_group(3), symmetric_group(6)) == 1036


@pytest.mark.parametrize("h", [g for _, g in small_groups(8)], ids=lambda g: g.name)
def test_hom_counts_match_generator_oracle(h):
    for _, g in SMALL:
        assert count_homs(h, g) == hom_count_by_generators(h.table, g.table)


def test_homs_lexicographic_and_valid():
    for (_, h), (_, g) in itertools.product(small_groups(6), repeat=2):
        homs = enumerate_homs(h, g)
        maps = [f.map for f in homs]
        assert maps == sorted(maps) and len(set(maps)) == len(maps)
        for f in homs:
            make_hom(h, g, f.map)


def test_make_hom_rejects_non_hom():
    with pytest.raises(NotAHomomorphism):
        make_hom(cyclic(2), cyclic(2), [1, 0])
    with pytest.raises(NotAHomomorphism):
        make_hom(cyclic(4), cyclic(2), [0, 1, 1, 0])


def test_normal_subgroups():
    assert [len(n) for n in normal_subgroups(symmetric_group(3))] == [1, 3, 6]
    c6 = cyclic(6)
    assert len(normal_subgroups(c6)) == len(all_subgroups(c6))
    assert len(normal_subgroups(cyclic(1))) == 1


def test_quotients():
    c4 = cyclic(4)
    q, p = quotient_group(c4, (0, 2))
    assert is_isomorphic(q, cyclic(2)) and p.kernel() == (0, 2)
    q, p = quotient_group(c4, (0,))
    assert is_isomorphic(q, c4) and hom_predicates(p).isomorphism
    q, p = quotient_group(c4, range(4))
    assert q.order == 1
    with pytest.raises(NotNormal):
        quotient_group(symmetric_group(3), (0, 1))


@pytest.mark.parametrize("name, g", SMALL)
def test_quotient_by_every_normal_subgroup(name, g):
    for n in normal_subgroups(g):
        q, p = quotient_group(g, n)
        assert q.order * len(n) == g.order
        make_hom(g, q, p.map)
        assert set(p.kernel()) == set(n) and hom_predicates(p).surjective


def test_hom_predicates():
    c2 = cyclic(2)
    assert hom_predicates(identity_hom(c2)) == (True, True, True)
    assert hom_predicates(trivial_hom(c2, c2)) == (False, False, False)
    _, proj = quotient_group(cyclic(4), (0, 2))
    assert hom_predicates(proj) == (False, True, False)


def test_permutation_input():
    g = permutation_group(3, [(1, 0, 2), (1, 2, 0)])
    assert g.order == 6 and is_isomorphic(g, symmetric_group(3))


def test_isomorphism_is_an_isomorphism():
    g, h = direct_product(cyclic(2), cyclic(3)), cyclic(6)
    f = find_isomorphism(g, h)
    assert f is not None and hom_predicates(f).isomorphism
    assert find_isomorphism(cyclic(4), direct_product(cyclic(2), cyclic(2))) is None


@given(st.sampled_from(SMALL), st.data())
def test_random_products_and_conjugates(pair, data):
    _, g = pair
    a = data.draw(st.integers(0, g.order - 1))
    b = data.draw(st.integers(0, g.order - 1))
    assert g.mul(g.mul(a, b), g.inv(b)) == a
    assert g.conj(a, b) == g.mul(g.mul(a, b), g.inv(a))
