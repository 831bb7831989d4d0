"""Faithful-fibre objects over a one-object base ``BG``.

An object is a finite coproduct of components ``BK -> BG``, each given by a
group homomorphism ``K -> G``.  A 1-morphism between single components
``S: H -> G`` and ``T: K -> G`` is a pair ``(phi, g)`` with
``S(h) = g^-1 T(phi(h)) g``; an element ``k`` of ``K`` acts on such pairs by
``k.(phi, g) = (conj_k o phi, T(k) g)``, and the hom groupoid is the resulting
action groupoid.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .errors import BaseMismatch, SizeLimit, TheoremViolation, ValidationError
from .groupoids import FiniteGroupoid, action_groupoid, coproduct, discrete, product
from .groups import (
    FiniteGroup,
    GroupHom,
    enumerate_homs,
    iter_homs,
    normal_subgroups,
    quotient_group,
    small_groups,
)


def _component_key(c: GroupHom):
    return (c.source.order, c.map, c.source.table)


class RelFinObject:
    """A coproduct of components over ``base``, kept in canonical order."""

    def __init__(self, base: FiniteGroup, components=()):
        self.base = base
        comps = []
        for c in components:
            if c.target != base:
                raise BaseMismatch("component does not map into the base group")
            if len(c.map) != c.source.order:
                raise ValidationError("component map has the wrong length")
            comps.append(c)
        self.components = tuple(sorted(comps, key=_component_key))

    @classmethod
    def single(cls, hom: GroupHom):
        return cls(hom.target, (hom,))

    def __len__(self):
        return len(self.components)

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other):
        return (
            isinstance(other, RelFinObject)
            and self.base == other.base
            and self.components == other.components
        )

    def __hash__(self):
        return hash((self.base, self.components))

    def __repr__(self):
        parts = ", ".join(f"{c.source.name or c.source.order}:{list(c.map)}" for c in self.components)
        return f"RelFinObject(base={self.base.name or self.base.order}, [{parts}])"

    def coproduct(self, other: "RelFinObject") -> "RelFinObject":
        _same_base(self, other)
        return RelFinObject(self.base, self.components + other.components)

    def max_component_order(self):
        return max((c.source.order for c in self.components), default=0)


def _base_of(x):
    return x.target if isinstance(x, GroupHom) else x.base


def _same_base(*objs):
    bases = [_base_of(o) for o in objs]
    if any(b != bases[0] for b in bases[1:]):
        raise BaseMismatch("objects live over different base groups")


def _components(x):
    return (x,) if isinstance(x, GroupHom) else x.components


def _single(s):
    if isinstance(s, GroupHom):
        return s
    if len(s.components) != 1:
        raise ValidationError(f"expected a single component, got {len(s.components)}")
    return s.components[0]


class RelFinHomPair(NamedTuple):
    """A 1-morphism: source component ``i`` goes to target component
    ``assignment[i]`` via ``pairs[i] = (phi, g)``."""

    source: RelFinObject
    target: RelFinObject
    assignment: tuple
    pairs: tuple

    @property
    def phi(self) -> GroupHom:
        return self.pairs[0][0]

    @property
    def g(self) -> int:
        return self.pairs[0][1]


def _satisfies(s: GroupHom, t: GroupHom, phi: GroupHom, g: int) -> bool:
    base = s.target
    gi = base.inverse[g]
    tab = base.table
    return all(s.map[h] == tab[tab[gi][t.map[phi.map[h]]]][g] for h in range(s.source.order))


@lru_cache(maxsize=None)
def _pairs(s: GroupHom, t: GroupHom, injective=False) -> tuple:
    out = []
    for phi in iter_homs(s.source, t.source, injective=injective):
        for g in range(s.target.order):
            if _satisfies(s, t, phi, g):
                out.append((phi, g))
    return tuple(out)


def enumerate_hom_pairs(s, t) -> list:
    """Every ``(phi, g)`` between two single components, phi-major, then by g."""
    _same_base(s, t)
    s1, t1 = _single(s), _single(t)
    so, to = RelFinObject.single(s1), RelFinObject.single(t1)
    return [RelFinHomPair(so, to, (0,), ((phi, g),)) for phi, g in _pairs(s1, t1)]


@lru_cache(maxsize=None)
def _component_card(s: GroupHom, t: GroupHom, injective=False) -> Fraction:
    return Fraction(len(_pairs(s, t, injective)), t.source.order)


def _hom_card(s, f, injective):
    _same_base(s, f)
    total = Fraction(1)
    for sc in _components(s):
        total *= sum((_component_card(sc, t, injective) for t in _components(f)), Fraction(0))
    return total


def hom_groupoid_cardinality(s, f) -> Fraction:
    """Cardinality of the hom groupoid from ``s`` to ``f``.

    A multi-component source gives the product over its components.
    """
    return _hom_card(s, f, False)


def faithful_hom_cardinality(s, f) -> Fraction:
    """As :func:`hom_groupoid_cardinality`, restricted to injective ``phi``."""
    return _hom_card(s, f, True)


def act_on_pair(t: GroupHom, k: int, pair):
    phi, g = pair
    kk = t.source
    ki = kk.inverse[k]
    conj = tuple(kk.table[kk.table[k][x]][ki] for x in phi.map)
    return GroupHom(phi.source, phi.target, conj), t.target.table[t.map[k]][g]


def _component_hom_groupoid(s: GroupHom, t: GroupHom, injective=False) -> FiniteGroupoid:
    pts = list(_pairs(s, t, injective))
    where = {(p.map, g): i for i, (p, g) in enumerate(pts)}
    perms = []
    for k in range(t.source.order):
        perm = []
        for pair in pts:
            phi, g = act_on_pair(t, k, pair)
            perm.append(where[(phi.map, g)])
        perms.append(perm)
    return action_groupoid(len(pts), t.source, perms)


def hom_groupoid(s, f, injective=False) -> FiniteGroupoid:
    """The hom groupoid built explicitly: objects are pairs, morphisms acting elements."""
    _same_base(s, f)
    parts = [
        coproduct(*[_component_hom_groupoid(sc, t, injective) for t in _components(f)])
        for sc in _components(s)
    ]
    out = discrete(1)
    for p in parts:
        out = product(out, p)
    return out


def compose_hom_pairs(first: RelFinHomPair, second: RelFinHomPair) -> RelFinHomPair:
    """``second o first``: ``(phi2 o phi1, g2 g1)`` componentwise."""
    base = first.source.base
    assignment = tuple(second.assignment[j] for j in first.assignment)
    pairs = []
    for i, j in enumerate(first.assignment):
        p1, g1 = first.pairs[i]
        p2, g2 = second.pairs[j]
        pairs.append((p2.compose(p1), base.table[g2][g1]))
    return RelFinHomPair(first.source, second.target, assignment, tuple(pairs))


# -- equivalences ---------------------------------------------------------------


def is_equivalence_morphism(pair: RelFinHomPair) -> bool:
    """Componentwise isomorphisms on a bijection of components."""
    if sorted(pair.assignment) != list(range(len(pair.target.components))):
        return False
    return all(len(set(phi.map)) == phi.source.order == phi.target.order for phi, _ in pair.pairs)


@lru_cache(maxsize=None)
def _component_equivalence(s: GroupHom, t: GroupHom):
    if s.source.order != t.source.order:
        return None
    for phi, g in _pairs(s, t, True):
        return phi, g
    return None


@dataclass(frozen=True)
class EquivalenceVerdict:
    equivalent: bool
    matching: tuple | None = None
    witness: RelFinHomPair | None = None

    def __bool__(self):
        return self.equivalent


def decide_equivalence(f: RelFinObject, fp: RelFinObject) -> EquivalenceVerdict:
    """Equivalent iff some bijection of components is made of component equivalences.

    Solved as a maximum bipartite matching.
    """
    _same_base(f, fp)
    a, b = f.components, fp.components
    if len(a) != len(b):
        return EquivalenceVerdict(False)
    if not a:
        return EquivalenceVerdict(True, (), RelFinHomPair(f, fp, (), ()))
    adj = np.zeros((len(a), len(b)), dtype=np.int8)
    for i, s in enumerate(a):
        for j, t in enumerate(b):
            if _component_equivalence(s, t) is not None:
                adj[i, j] = 1
    match = maximum_bipartite_matching(csr_matrix(adj), perm_type="column")
    if (match < 0).any():
        return EquivalenceVerdict(False)
    matching = tuple(int(j) for j in match)
    pairs = tuple(_component_equivalence(a[i], b[j]) for i, j in enumerate(matching))
    return EquivalenceVerdict(True, matching, RelFinHomPair(f, fp, matching, pairs))


# -- E-quotients ----------------------------------------------------------------


@dataclass(frozen=True)
class EQuotient:
    """``S`` pushed down to ``H/N`` for a normal ``N`` inside ``ker S``."""

    kernel: tuple
    projection: GroupHom
    quotient_object: RelFinObject

    @property
    def component(self) -> GroupHom:
        return self.quotient_object.components[0]


def _quotient_component(s: GroupHom, n) -> tuple:
    q, proj = quotient_group(s.source, n)
    reps = [c[0] for c in q.labels]
    return proj, GroupHom(q, s.target, tuple(s.map[r] for r in reps))


def _quotients_equivalent(s: GroupHom, e1: EQuotient, e2: EQuotient) -> bool:
    """Search for an equivalence ``(chi, g)`` between the quotients and a
    2-cell ``k`` from ``(chi, g) o (p1, e)`` to ``(p2, e)``."""
    t1, t2 = e1.component, e2.component
    q2 = t2.source
    base = s.target
    for chi in iter_homs(t1.source, q2, injective=True):
        if chi.target.order != chi.source.order:
            continue
        composite = chi.compose(e1.projection)
        for k in range(q2.order):
            g = base.inverse[t2.map[k]]
            if not _satisfies(t1, t2, chi, g):
                continue
            moved, gk = act_on_pair(t2, k, (composite, g))
            if moved.map == e2.projection.map and gk == 0:
                return True
    return False


def e_quotients(s) -> list:
    """One E-quotient per equivalence class, smallest kernel first."""
    return list(_e_quotients(_single(s)))


@lru_cache(maxsize=None)
def _e_quotients(s: GroupHom) -> tuple:
    ker = set(s.kernel())
    cands = sorted(
        (n for n in normal_subgroups(s.source) if set(n) <= ker),
        key=lambda n: (len(n), tuple(sorted(n))),
    )
    out = []
    for n in cands:
        proj, comp = _quotient_component(s, n)
        eq = EQuotient(tuple(sorted(n)), proj, RelFinObject.single(comp))
        if not any(_quotients_equivalent(s, prev, eq) for prev in out):
            out.append(eq)
    return tuple(out)


@dataclass(frozen=True)
class DecompositionCheck:
    lhs: Fraction
    rhs: Fraction
    equal: bool


MAX_DECOMPOSITION_ORDER = 16


def verify_factor_decomposition(s, f) -> DecompositionCheck:
    """Hom cardinality against the sum over E-quotients of faithful hom cardinalities."""
    _same_base(s, f)
    s1 = _single(s)
    orders = [s1.source.order] + [c.source.order for c in _components(f)]
    if max(orders) > MAX_DECOMPOSITION_ORDER:
        raise SizeLimit(f"group orders above {MAX_DECOMPOSITION_ORDER} are not supported here")
    lhs = hom_groupoid_cardinality(s1, f)
    rhs = sum((faithful_hom_cardinality(e.component, f) for e in e_quotients(s1)), Fraction(0))
    return DecompositionCheck(lhs, rhs, lhs == rhs)


# -- the counting distinguisher -------------------------------------------------


class _NoneFound:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __bool__(self):
        return False

    def __repr__(self):
        return "NoneFound"


NoneFound = _NoneFound()


@dataclass(frozen=True)
class Witness:
    probe: GroupHom
    card_left: Fraction
    card_right: Fraction


def default_probes(f: RelFinObject, fp: RelFinObject) -> list:
    """Components of both objects and all their E-quotients, without repeats."""
    seen, out = set(), []
    comps = list(f.components) + list(fp.components)
    for c in comps + [e.component for c in comps for e in e_quotients(c)]:
        if c not in seen:
            seen.add(c)
            out.append(c)
    return out


EXHAUSTIVE_MAX_ORDER = 12


def exhaustive_probes(base: FiniteGroup, max_order: int) -> list:
    """Every ``H -> base`` with ``#H <= max_order``, ``H`` from the built-in table.

    Ordered by group order, table position, then the map.
    """
    if max_order > EXHAUSTIVE_MAX_ORDER:
        raise SizeLimit(f"exhaustive probes only cover groups up to order {EXHAUSTIVE_MAX_ORDER}")
    return _exhaustive_probes(base, max_order)


@lru_cache(maxsize=None)
def _exhaustive_probes(base, max_order):
    groups = small_groups(max(max_order, 1))
    ranked = sorted(enumerate(groups), key=lambda p: (p[1][1].order, p[0]))
    return tuple(h for _, (_, grp) in ranked for h in enumerate_homs(grp, base))


def probe_vector(f, probes) -> tuple:
    return tuple(hom_groupoid_cardinality(p, f) for p in probes)


def counting_distinguisher(f: RelFinObject, fp: RelFinObject, probes=None, *, exhaustive=False):
    """First probe ``S`` with differing hom cardinalities into ``f`` and ``fp``.

    Returns a :class:`Witness` or ``NoneFound``.  In exhaustive mode the
    probes are all components from the built-in group table up to the largest
    component order, and the outcome is checked against
    :func:`decide_equivalence`.
    """
    _same_base(f, fp)
    if probes is None:
        if exhaustive:
            probes = exhaustive_probes(f.base, max(f.max_component_order(), fp.max_component_order()))
        else:
            probes = default_probes(f, fp)
    elif probes:
        _same_base(f, *[_single(p) for p in probes])
    result = NoneFound
    for p in probes:
        a, b = hom_groupoid_cardinality(p, f), hom_groupoid_cardinality(p, fp)
        if a != b:
            result = Witness(_single(p), a, b)
            break
    if exhaustive:
        equivalent = decide_equivalence(f, fp).equivalent
        if equivalent and result:
            raise TheoremViolation("equivalent objects were distinguished by a hom count")
        if not equivalent and not result:
            raise TheoremViolation("inequivalent objects agree on every exhaustive probe")
    return result


# -- factorization of a 1-morphism ----------------------------------------------


def subgroup_as_group(k: FiniteGroup, elements) -> tuple:
    """``(I, inclusion)`` with the elements of ``I`` in increasing order."""
    elems = sorted(set(elements))
    pos = {x: i for i, x in enumerate(elems)}
    table = [[pos[k.table[a][b]] for b in elems] for a in elems]
    sub = FiniteGroup(table, tuple(elems))
    return sub, GroupHom(sub, k, tuple(elems))


@dataclass(frozen=True)
class RelFinFactorization:
    """``(phi, g)`` as ``(incl, e) o (iso, g) o (proj, e)`` through ``H/ker phi`` and ``im phi``."""

    quotient: GroupHom
    image: GroupHom
    e_stage: tuple
    middle: tuple
    m_stage: tuple

    def composite(self) -> tuple:
        base = self.quotient.target
        (p0, g0), (p1, g1), (p2, g2) = self.e_stage, self.middle, self.m_stage
        return p2.compose(p1.compose(p0)), base.table[g2][base.table[g1][g0]]


def relfin_factorize(pair, s, t) -> RelFinFactorization:
    s, t = _single(s), _single(t)
    _same_base(s, t)
    phi, g = (pair.phi, pair.g) if isinstance(pair, RelFinHomPair) else pair
    if not _satisfies(s, t, phi, g):
        raise ValidationError("(phi, g) is not a morphism between these components")
    proj, quot = _quotient_component(s, phi.kernel())
    img, incl = subgroup_as_group(t.source, phi.image())
    pos = {x: i for i, x in enumerate(incl.map)}
    reps = [c[0] for c in proj.target.labels]
    iso = GroupHom(proj.target, img, tuple(pos[phi.map[r]] for r in reps))
    image_comp = t.compose(incl)
    return RelFinFactorization(quot, image_comp, (proj, 0), (iso, g), (incl, 0))


def all_components(base: FiniteGroup, max_order: int) -> list:
    """Every ``H -> base`` for ``H`` in the built-in table with ``#H <= max_order``."""
    return list(exhaustive_probes(base, max_order))


def objects_up_to(base: FiniteGroup, max_order: int, max_components: int) -> list:
    """All objects with at most ``max_components`` components drawn from :func:`all_components`."""
    comps = all_components(base, max_order)
    out = []
    for r in range(max_components + 1):
        for combo in itertools.combinations_with_replacement(range(len(comps)), r):
            out.append(RelFinObject(base, [comps[i] for i in combo]))
    return out
