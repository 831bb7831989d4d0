"""Functors between finite groupoids, the (E, F, M) ternary factorization and
the cardinality comparison theorems."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidFunctor, PreconditionUnmet, TheoremViolation
from .groupoids import (
    FiniteGroupoid,
    delooping,
    functor_from_choices,
    groupoid_cardinality,
    is_equivalent,
)
from .groups import GroupHom


class GroupoidFunctor:
    """Object map plus morphism map, both dictionaries keyed by source ids."""

    def __init__(self, source: FiniteGroupoid, target: FiniteGroupoid, object_map, morphism_map):
        self.source = source
        self.target = target
        self.object_map = dict(object_map)
        self.morphism_map = dict(morphism_map)

    def __repr__(self):
        return f"GroupoidFunctor({self.source!r} -> {self.target!r})"

    def obj(self, x):
        return self.object_map[x]

    def mor(self, f):
        return self.morphism_map[f]

    def __eq__(self, other):
        if not isinstance(other, GroupoidFunctor):
            return NotImplemented
        return (
            self.source.same_as(other.source)
            and self.target.same_as(other.target)
            and self.object_map == other.object_map
            and self.morphism_map == other.morphism_map
        )

    __hash__ = None

    def validate(self):
        src, tgt = self.source, self.target
        tgt_objects = set(tgt.objects)
        for x in src.objects:
            if x not in self.object_map or self.object_map[x] not in tgt_objects:
                raise InvalidFunctor(f"object {x!r} has no image in the target")
        for m in src.morphisms:
            if m.id not in self.morphism_map:
                raise InvalidFunctor(f"morphism {m.id!r} has no image")
            fm = self.morphism_map[m.id]
            if fm not in tgt.position:
                raise InvalidFunctor(f"image of {m.id!r} is not a target morphism")
            if tgt.src[fm] != self.object_map[m.src] or tgt.dst[fm] != self.object_map[m.dst]:
                raise InvalidFunctor(f"image of {m.id!r} has the wrong endpoints")
        for x in src.objects:
            if self.morphism_map[src.identity(x)] != tgt.identity(self.object_map[x]):
                raise InvalidFunctor(f"identity of {x!r} is not preserved")
        for g, f, gf in src.composition_triples():
            if self.morphism_map[gf] != tgt.compose(self.morphism_map[g], self.morphism_map[f]):
                raise InvalidFunctor(f"composite of {g!r} after {f!r} is not preserved")
        return self

    def then(self, other: "GroupoidFunctor") -> "GroupoidFunctor":
        """``other o self``"""
        return GroupoidFunctor(
            self.source,
            other.target,
            {x: other.object_map[y] for x, y in self.object_map.items()},
            {f: other.morphism_map[g] for f, g in self.morphism_map.items()},
        )


def identity_functor(g: FiniteGroupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, {x: x for x in g.objects}, {m.id: m.id for m in g.morphisms})


def functor_from_hom(hom: GroupHom, source=None, target=None) -> GroupoidFunctor:
    """``B(hom)`` between the deloopings built by :func:`delooping`."""
    source = source or delooping(hom.source)
    target = target or delooping(hom.target)
    return GroupoidFunctor(source, target, {0: 0}, {a: hom.map[a] for a in range(hom.source.order)})


def functor_from_data(source, target, choices) -> GroupoidFunctor:
    obj_map, mor_map = functor_from_choices(source, target, choices)
    return GroupoidFunctor(source, target, obj_map, mor_map)


class FunctorClassification(NamedTuple):
    full: bool
    faithful: bool
    essentially_surjective: bool

    @property
    def is_equivalence(self):
        return self.full and self.faithful and self.essentially_surjective

    @property
    def in_E(self):
        """essentially surjective and full"""
        return self.essentially_surjective and self.full

    @property
    def in_F(self):
        """essentially surjective and faithful"""
        return self.essentially_surjective and self.faithful

    @property
    def in_M(self):
        """fully faithful"""
        return self.full and self.faithful


def classify(f: GroupoidFunctor) -> FunctorClassification:
    src, tgt = f.source, f.target
    full = faithful = True
    for x in src.objects:
        for y in src.objects:
            images = {f.morphism_map[m] for m in src.hom(x, y)}
            if len(images) != len(src.hom(x, y)):
                faithful = False
            if len(images) != len(tgt.hom(f.object_map[x], f.object_map[y])):
                full = False
    hit = {tgt.class_of(f.object_map[x]) for x in src.objects}
    ess = len(hit) == len(tgt.classes())
    return FunctorClassification(full, faithful, ess)


class TernaryFactorization(NamedTuple):
    """``F = F0 o F1 o F2`` through ``im2`` (2-coimage) and ``im1`` (1-image)."""

    f2: GroupoidFunctor
    f1: GroupoidFunctor
    f0: GroupoidFunctor

    @property
    def im2(self):
        return self.f2.target

    @property
    def im1(self):
        return self.f1.target

    def composite(self) -> GroupoidFunctor:
        return self.f2.then(self.f1).then(self.f0)


def ternary_factorize(f: GroupoidFunctor) -> TernaryFactorization:
    g, h = f.source, f.target
    fm = f.morphism_map

    # im2: same objects; morphisms with equal images in one hom-set are identified,
    # each class labelled by its earliest member
    rep_of = {}
    reps = []
    for x in g.objects:
        for y in g.objects:
            first = {}
            for m in g.hom(x, y):
                r = first.setdefault(fm[m], m)
                rep_of[m] = r
    for m in g.morphisms:
        if rep_of[m.id] == m.id:
            reps.append((m.id, m.src, m.dst))
    im2 = FiniteGroupoid(
        g.objects,
        reps,
        lambda b, a: rep_of[g.compose(b, a)],
        {x: rep_of[g.identity(x)] for x in g.objects},
        inverse=lambda a: rep_of[g.inverse(a)],
        name="im2",
    )
    f2 = GroupoidFunctor(g, im2, {x: x for x in g.objects}, dict(rep_of))

    hit = {h.class_of(f.object_map[x]) for x in g.objects}
    objs1 = [y for y in h.objects if h.class_of(y) in hit]
    keep = set(objs1)
    im1 = FiniteGroupoid(
        objs1,
        [m for m in h.morphisms if m.src in keep and m.dst in keep],
        h.compose,
        {y: h.identity(y) for y in objs1},
        inverse=h.inverse,
        name="im1",
    )
    f1 = GroupoidFunctor(im2, im1, dict(f.object_map), {r: fm[r] for r, _, _ in reps})
    f0 = GroupoidFunctor(im1, h, {y: y for y in objs1}, {m.id: m.id for m in im1.morphisms})
    return TernaryFactorization(f2, f1, f0)


@dataclass(frozen=True)
class OrderCheck:
    """Cardinality comparison along a functor.

    ``full_clause``: the functor is full, so the source is no larger.
    ``faithful_clause``: essentially surjective and faithful, so no smaller.
    """

    source_card: Fraction
    target_card: Fraction
    full_clause: bool
    faithful_clause: bool
    holds: bool


def check_order_props(f: GroupoidFunctor) -> OrderCheck:
    c = classify(f)
    a, b = groupoid_cardinality(f.source), groupoid_cardinality(f.target)
    holds = True
    if c.full and not a <= b:
        holds = False
    if c.in_F and not a >= b:
        holds = False
    return OrderCheck(a, b, c.full, c.in_F, holds)


def is_equivalence_functor(f: GroupoidFunctor) -> bool:
    return classify(f).is_equivalence


def decide_equivalence_via_card(f: GroupoidFunctor) -> bool:
    """Decide that ``f`` is an equivalence from equal cardinalities.

    Requires equal cardinalities and that ``f`` is essentially surjective and
    full, essentially surjective and faithful, or fully faithful.  The
    conclusion is cross-checked against the direct tests.
    """
    c = classify(f)
    a, b = groupoid_cardinality(f.source), groupoid_cardinality(f.target)
    if a != b:
        raise PreconditionUnmet(f"cardinalities differ: {a} vs {b}")
    if not (c.in_E or c.in_F or c.in_M):
        raise PreconditionUnmet(f"functor is in none of the three classes: {c}")
    if not c.is_equivalence or not is_equivalent(f.source, f.target):
        raise TheoremViolation(f"equal cardinalities {a} with {c} but not an equivalence")
    return True


def mutual_functor_equivalence(f: GroupoidFunctor, psi: GroupoidFunctor) -> bool:
    """``f: G -> H`` and ``psi: H -> G`` both full, or both essentially
    surjective and faithful, are equivalences."""
    if not (f.source.same_as(psi.target) and f.target.same_as(psi.source)):
        raise PreconditionUnmet("functors do not go in opposite directions between the same groupoids")
    cf, cp = classify(f), classify(psi)
    if not ((cf.full and cp.full) or (cf.in_F and cp.in_F)):
        raise PreconditionUnmet(f"need both full or both essentially surjective and faithful: {cf}, {cp}")
    if not (cf.is_equivalence and cp.is_equivalence):
        raise TheoremViolation(f"mutual functors {cf}, {cp} are not both equivalences")
    return True
