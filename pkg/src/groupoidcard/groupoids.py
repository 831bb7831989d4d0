"""Finite groupoids as explicit values.

A groupoid stores its objects, its morphisms as ``(id, src, dst)`` triples and a
composition rule.  ``compose(g, f)`` is ``g o f`` (apply ``f`` first) and needs
``src(g) == dst(f)``.  Object and morphism ids are arbitrary hashables; the
order in which they are listed is significant (class representatives and
tie-breaks use it).
"""
from __future__ import annotations

import itertools
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .errors import InvalidGroupoid, SizeLimit, ValidationError
from .groups import (
    FiniteGroup,
    GroupHom,
    count_homs,
    find_isomorphism,
    group_from_cayley,
    iter_homs,
)

MAX_FUNCTORS = 10**6
MAX_FUNCTOR_GROUPOID_MORPHISMS = 2 * 10**6


class Morphism(NamedTuple):
    id: object
    src: object
    dst: object


class VertexGroup(NamedTuple):
    """Automorphisms of ``obj`` as a :class:`FiniteGroup`.

    ``ids[i]`` is the morphism id of group element ``i``; the identity is first.
    """

    obj: object
    ids: tuple
    group: FiniteGroup
    index: dict


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x != y:
            self.parent[y] = x


class FiniteGroupoid:
    def __init__(self, objects, morphisms, compose, identities, inverse=None, name=None):
        self.objects = tuple(objects)
        self.morphisms = tuple(Morphism(*m) for m in morphisms)
        self.name = name
        if isinstance(compose, Mapping):
            table = dict(compose)

            def lookup(g, f):
                try:
                    return table[g, f]
                except KeyError:
                    raise InvalidGroupoid(f"composite of {g!r} after {f!r} is not defined") from None

            self._compose = lookup
            self._table = table
        else:
            self._compose = compose
            self._table = None
        self._identities = dict(identities)
        self._inverse_fn = inverse
        self._inverse = {}

        self.src = {}
        self.dst = {}
        self.position = {}
        self._homs = {}
        self._out = {x: [] for x in self.objects}
        obj_set = set(self.objects)
        if len(obj_set) != len(self.objects):
            raise InvalidGroupoid("duplicate object ids")
        for i, m in enumerate(self.morphisms):
            if m.id in self.position:
                raise InvalidGroupoid(f"duplicate morphism id {m.id!r}")
            if m.src not in obj_set or m.dst not in obj_set:
                raise InvalidGroupoid(f"morphism {m.id!r} has an unknown endpoint")
            self.position[m.id] = i
            self.src[m.id] = m.src
            self.dst[m.id] = m.dst
            self._homs.setdefault((m.src, m.dst), []).append(m.id)
            self._out[m.src].append(m.id)
        for x in self.objects:
            e = self._identities.get(x)
            if e is None or self.src.get(e) != x or self.dst.get(e) != x:
                raise InvalidGroupoid(f"object {x!r} has no identity morphism")
        self._classes = None
        self._vertex = {}

    # -- basic structure

    def __repr__(self):
        label = f"{self.name}, " if self.name else ""
        return f"FiniteGroupoid({label}{len(self.objects)} objects, {len(self.morphisms)} morphisms)"

    @property
    def num_objects(self):
        return len(self.objects)

    @property
    def num_morphisms(self):
        return len(self.morphisms)

    def is_empty(self):
        return not self.objects

    def hom(self, x, y):
        return tuple(self._homs.get((x, y), ()))

    def out_morphisms(self, x):
        return tuple(self._out[x])

    def identity(self, x):
        return self._identities[x]

    def compose(self, g, f):
        if self.src[g] != self.dst[f]:
            raise InvalidGroupoid(f"{g!r} cannot be composed after {f!r}")
        return self._compose(g, f)

    def inverse(self, f):
        inv = self._inverse.get(f)
        if inv is not None:
            return inv
        if self._inverse_fn is not None:
            inv = self._inverse_fn(f)
        else:
            x, y = self.src[f], self.dst[f]
            ex = self._identities[x]
            for g in self.hom(y, x):
                if self._compose(g, f) == ex:
                    inv = g
                    break
            else:
                raise InvalidGroupoid(f"morphism {f!r} has no inverse")
        self._inverse[f] = inv
        return inv

    # -- isomorphism classes

    def classes(self):
        """Isomorphism classes as tuples of objects, in order of first object."""
        if self._classes is None:
            uf = _UnionFind(self.objects)
            for m in self.morphisms:
                uf.union(m.src, m.dst)
            groups = {}
            for x in self.objects:
                groups.setdefault(uf.find(x), []).append(x)
            self._classes = tuple(tuple(v) for v in groups.values())
            self._class_of = {x: i for i, cls in enumerate(self._classes) for x in cls}
        return self._classes

    def class_of(self, x):
        self.classes()
        return self._class_of[x]

    def representatives(self):
        return tuple(cls[0] for cls in self.classes())

    def vertex_group(self, x) -> VertexGroup:
        vg = self._vertex.get(x)
        if vg is None:
            e = self._identities[x]
            ids = (e,) + tuple(m for m in self.hom(x, x) if m != e)
            index = {m: i for i, m in enumerate(ids)}
            table = [[index[self._compose(a, b)] for b in ids] for a in ids]
            group = group_from_cayley(table, labels=ids, max_order=10**7)
            vg = self._vertex[x] = VertexGroup(x, ids, group, index)
        return vg

    def validate(self):
        """Check units, typing and closure of composition, associativity, inverses."""
        comp = self._compose
        for x in self.objects:
            e = self._identities[x]
            for f in self._out[x]:
                if comp(f, e) != f:
                    raise InvalidGroupoid(f"identity of {x!r} is not a right unit for {f!r}")
            for f in self.hom(x, x):
                if comp(e, f) != f:
                    raise InvalidGroupoid(f"identity of {x!r} is not a left unit for {f!r}")
        for f in self.morphisms:
            for g in self._out[f.dst]:
                h = comp(g, f.id)
                if h not in self.position:
                    raise InvalidGroupoid(f"composite of {g!r} after {f.id!r} is not a morphism")
                if self.src[h] != f.src or self.dst[h] != self.dst[g]:
                    raise InvalidGroupoid(f"composite of {g!r} after {f.id!r} has the wrong type")
        for f in self.morphisms:
            for g in self._out[f.dst]:
                gf = comp(g, f.id)
                for k in self._out[self.dst[g]]:
                    if comp(k, gf) != comp(comp(k, g), f.id):
                        raise InvalidGroupoid(f"composition not associative at ({k!r}, {g!r}, {f.id!r})")
        for f in self.morphisms:
            g = self.inverse(f.id)
            if comp(f.id, g) != self._identities[f.dst]:
                raise InvalidGroupoid(f"morphism {f.id!r} has no two-sided inverse")
        return self

    def composition_triples(self):
        """``(g, f, g o f)`` for every composable pair, in morphism order."""
        for f in self.morphisms:
            for g in self._out[f.dst]:
                yield g, f.id, self._compose(g, f.id)

    def same_as(self, other: "FiniteGroupoid") -> bool:
        """Equality on the nose: same objects, morphisms and composition."""
        if self is other:
            return True
        if self.objects != other.objects or self.morphisms != other.morphisms:
            return False
        if self._identities != other._identities:
            return False
        return all(other._compose(g, f) == h for g, f, h in self.composition_triples())


@dataclass(frozen=True)
class SkeletalForm:
    """One ``(representative, automorphism group)`` entry per isomorphism class."""

    components: tuple

    def cardinality(self) -> Fraction:
        return sum((Fraction(1, g.order) for _, g in self.components), Fraction(0))

    def groups(self):
        return [g for _, g in self.components]


# -- constructions -----------------------------------------------------------


def empty_groupoid():
    return FiniteGroupoid((), (), {}, {}, name="empty")


def discrete(n):
    objs = list(range(n))
    return FiniteGroupoid(
        objs,
        [(x, x, x) for x in objs],
        lambda g, f: f,
        {x: x for x in objs},
        inverse=lambda f: f,
        name=f"discrete({n})",
    )


def delooping(group: FiniteGroup):
    """One object ``0`` whose morphisms are the group elements."""
    t = group.table
    return FiniteGroupoid(
        [0],
        [(a, 0, 0) for a in range(group.order)],
        lambda g, f: t[g][f],
        {0: 0},
        inverse=lambda f: group.inverse[f],
        name=f"B{group.name}" if group.name else None,
    )


def connected_groupoid(group: FiniteGroup, num_objects):
    """``num_objects`` pairwise isomorphic objects, each with vertex group ``group``.

    Morphisms are triples ``(x, y, a): x -> y``; composition multiplies labels.
    """
    t = group.table
    objs = list(range(num_objects))
    mors = [((x, y, a), x, y) for x in objs for y in objs for a in range(group.order)]
    return FiniteGroupoid(
        objs,
        mors,
        lambda g, f: (f[0], g[1], t[g[2]][f[2]]),
        {x: (x, x, 0) for x in objs},
        inverse=lambda f: (f[1], f[0], group.inverse[f[2]]),
    )


def coproduct(*parts: FiniteGroupoid):
    """Disjoint union; object ``x`` of part ``i`` becomes ``(i, x)``."""
    objs, mors, idents = [], [], {}
    for i, p in enumerate(parts):
        for x in p.objects:
            objs.append((i, x))
            idents[(i, x)] = (i, p.identity(x))
        for m in p.morphisms:
            mors.append(((i, m.id), (i, m.src), (i, m.dst)))

    def comp(g, f):
        return (g[0], parts[g[0]].compose(g[1], f[1]))

    def inv(f):
        return (f[0], parts[f[0]].inverse(f[1]))

    return FiniteGroupoid(objs, mors, comp, idents, inverse=inv)


def product(g: FiniteGroupoid, h: FiniteGroupoid):
    objs = [(x, y) for x in g.objects for y in h.objects]
    mors = [((a.id, b.id), (a.src, b.src), (a.dst, b.dst)) for a in g.morphisms for b in h.morphisms]
    return FiniteGroupoid(
        objs,
        mors,
        lambda p, q: (g.compose(p[0], q[0]), h.compose(p[1], q[1])),
        {(x, y): (g.identity(x), h.identity(y)) for x, y in objs},
        inverse=lambda p: (g.inverse(p[0]), h.inverse(p[1])),
    )


def from_skeletal(groups):
    """Coproduct of deloopings; object ``i`` has vertex group ``groups[i]``."""
    if isinstance(groups, SkeletalForm):
        groups = groups.groups()
    groups = list(groups)
    objs = list(range(len(groups)))
    mors = [((i, a), i, i) for i, grp in enumerate(groups) for a in range(grp.order)]
    return FiniteGroupoid(
        objs,
        mors,
        lambda g, f: (g[0], groups[g[0]].table[g[1]][f[1]]),
        {i: (i, 0) for i in objs},
        inverse=lambda f: (f[0], groups[f[0]].inverse[f[1]]),
    )


def action_groupoid(num_points, group: FiniteGroup, action):
    """The action groupoid X // G.

    ``action`` is either a :class:`GroupHom` into a group whose labels are
    permutation tuples (e.g. :func:`symmetric_group`) or a sequence giving a
    permutation of ``range(num_points)`` for every group element.  The
    morphism ``(x, g)`` goes from ``x`` to ``g.x``.
    """
    if isinstance(action, GroupHom):
        if action.target.labels is None:
            raise ValidationError("action target must be labelled by permutations")
        perms = [tuple(action.target.labels[action.map[a]]) for a in range(group.order)]
    else:
        perms = [tuple(p) for p in action]
    if len(perms) != group.order:
        raise ValidationError("need one permutation per group element")
    for p in perms:
        if sorted(p) != list(range(num_points)):
            raise ValidationError(f"{list(p)} is not a permutation of {num_points} points")
    t = group.table
    if perms[0] != tuple(range(num_points)):
        raise ValidationError("the identity must act trivially")
    for a in range(group.order):
        for b in range(group.order):
            if perms[t[a][b]] != tuple(perms[a][perms[b][x]] for x in range(num_points)):
                raise ValidationError(f"not an action: element {a}*{b} acts incorrectly")
    objs = list(range(num_points))
    mors = [((x, a), x, perms[a][x]) for x in objs for a in range(group.order)]
    return FiniteGroupoid(
        objs,
        mors,
        lambda g, f: (f[0], t[g[1]][f[1]]),
        {x: (x, 0) for x in objs},
        inverse=lambda f: (perms[f[1]][f[0]], group.inverse[f[1]]),
    )


# -- cardinality and equivalence -----------------------------------------------


def groupoid_cardinality(g) -> Fraction:
    """Sum over isomorphism classes of the reciprocal vertex-group order."""
    if isinstance(g, SkeletalForm):
        return g.cardinality()
    return sum((Fraction(1, len(g.hom(r, r))) for r in g.representatives()), Fraction(0))


def skeleton(g: FiniteGroupoid) -> SkeletalForm:
    return SkeletalForm(tuple((r, g.vertex_group(r).group) for r in g.representatives()))


def _as_skeletal(g):
    return g if isinstance(g, SkeletalForm) else skeleton(g)


def is_equivalent(g, h) -> bool:
    """Equivalent iff the classes biject with isomorphic vertex groups.

    Group isomorphism is an equivalence relation, so matching greedily
    within isomorphism types is exact.
    """
    a, b = _as_skeletal(g).groups(), _as_skeletal(h).groups()
    if len(a) != len(b):
        return False
    if sorted(x.order for x in a) != sorted(x.order for x in b):
        return False
    remaining = list(b)
    for x in a:
        for i, y in enumerate(remaining):
            if x.order == y.order and find_isomorphism(x, y) is not None:
                del remaining[i]
                break
        else:
            return False
    return True


# -- functors as data, functor groupoids -------------------------------------


class ComponentFrame(NamedTuple):
    """A spanning tree of one connected component: ``tree[x]: root -> x``."""

    root: object
    objects: tuple
    tree: dict
    vertex: VertexGroup


def component_frames(g: FiniteGroupoid):
    frames = []
    for cls in g.classes():
        root = cls[0]
        tree = {x: g.hom(root, x)[0] for x in cls}
        tree[root] = g.identity(root)
        frames.append(ComponentFrame(root, cls, tree, g.vertex_group(root)))
    return frames


def functor_from_choices(h: FiniteGroupoid, g: FiniteGroupoid, choices, frames=None):
    """Object and morphism maps of the functor fixed by ``choices``.

    One choice per component frame of ``h``: ``(a, psi, legs)`` where ``a`` is
    the image of the root, ``psi`` a hom from the root's vertex group into the
    vertex group of ``a`` and ``legs[x]`` a morphism out of ``a`` giving the
    image of the tree edge to ``x`` (non-root objects only).  Every functor
    arises from exactly one choice.
    """
    frames = frames or component_frames(h)
    obj_map, mor_map = {}, {}
    for frame, (a, psi, legs) in zip(frames, choices):
        ga = g.vertex_group(a)
        images = {frame.root: g.identity(a)}
        images.update(legs)
        for x in frame.objects:
            obj_map[x] = g.dst[images[x]]
        inv_tree = {x: h.inverse(frame.tree[x]) for x in frame.objects}
        inv_img = {x: g.inverse(images[x]) for x in frame.objects}
        for x in frame.objects:
            for y in frame.objects:
                for m in h.hom(x, y):
                    loop = h.compose(inv_tree[y], h.compose(m, frame.tree[x]))
                    core = ga.ids[psi.map[frame.vertex.index[loop]]]
                    mor_map[m] = g.compose(images[y], g.compose(core, inv_img[x]))
    return obj_map, mor_map


def _component_options(g: FiniteGroupoid, frame):
    k = len(frame.objects) - 1
    others = [x for x in frame.objects if x != frame.root]
    for a in g.objects:
        ga = g.vertex_group(a)
        for psi in iter_homs(frame.vertex.group, ga.group):
            for legs in itertools.product(g.out_morphisms(a), repeat=k):
                yield a, psi, dict(zip(others, legs))


def count_functors(h: FiniteGroupoid, g: FiniteGroupoid) -> int:
    total = 1
    for frame in component_frames(h):
        k = len(frame.objects) - 1
        s = 0
        for a in g.objects:
            s += count_homs(frame.vertex.group, g.vertex_group(a).group) * len(g.out_morphisms(a)) ** k
        total *= s
    return total


def count_natural_isos(h: FiniteGroupoid, g: FiniteGroupoid) -> int:
    """Morphisms of the functor groupoid: one per functor and family of components."""
    total = 1
    for frame in component_frames(h):
        k = len(frame.objects) - 1
        s = 0
        for a in g.objects:
            out = len(g.out_morphisms(a))
            s += count_homs(frame.vertex.group, g.vertex_group(a).group) * out ** (2 * k + 1)
        total *= s
    return total


def iter_functors(h: FiniteGroupoid, g: FiniteGroupoid):
    """Every functor h -> g as ``(obj_map, mor_map)`` dictionaries."""
    frames = component_frames(h)
    for choices in itertools.product(*[list(_component_options(g, f)) for f in frames]):
        yield functor_from_choices(h, g, choices, frames)


def functor_groupoid(h: FiniteGroupoid, g: FiniteGroupoid) -> FiniteGroupoid:
    """The groupoid of functors h -> g and natural isomorphisms, built by brute force.

    Objects are integers indexing ``result.functors``; a morphism is
    ``(i, alpha)`` with ``alpha`` listing one component per object of ``h``.
    Every family of components out of ``F(x)`` is a natural isomorphism onto
    the conjugated functor, so families are enumerated directly.
    """
    n = count_functors(h, g)
    if n > MAX_FUNCTORS:
        raise SizeLimit(f"{n} functors exceed the cap of {MAX_FUNCTORS}")
    total = count_natural_isos(h, g)
    if total > MAX_FUNCTOR_GROUPOID_MORPHISMS:
        raise SizeLimit(f"{total} natural isomorphisms exceed the cap of {MAX_FUNCTOR_GROUPOID_MORPHISMS}")
    functors = []
    index = {}
    for obj_map, mor_map in iter_functors(h, g):
        key = (tuple(obj_map[x] for x in h.objects), tuple(mor_map[m.id] for m in h.morphisms))
        index[key] = len(functors)
        functors.append(key)

    obj_pos = {x: i for i, x in enumerate(h.objects)}
    hom_src = [obj_pos[m.src] for m in h.morphisms]
    hom_dst = [obj_pos[m.dst] for m in h.morphisms]
    morphisms = []
    for i, (objs, mors) in enumerate(functors):
        for alpha in itertools.product(*[g.out_morphisms(x) for x in objs]):
            inv = [g.inverse(a) for a in alpha]
            new_objs = tuple(g.dst[a] for a in alpha)
            new_mors = tuple(
                g.compose(alpha[hom_dst[k]], g.compose(f, inv[hom_src[k]])) for k, f in enumerate(mors)
            )
            morphisms.append(((i, alpha), i, index[(new_objs, new_mors)]))

    def comp(b, a):
        return (a[0], tuple(g.compose(y, x) for y, x in zip(b[1], a[1])))

    dst_of = {m[0]: m[2] for m in morphisms}

    def inv(a):
        return (dst_of[a], tuple(g.inverse(x) for x in a[1]))

    idents = {i: (i, tuple(g.identity(x) for x in key[0])) for i, key in enumerate(functors)}
    result = FiniteGroupoid(range(len(functors)), morphisms, comp, idents, inverse=inv)
    result.functors = functors
    return result


def functor_groupoid_cardinality(h, g) -> Fraction:
    """Product over classes [y] of h of sum over classes [x] of g of
    #hom(h_y, g_x) / #g_x."""
    hs, gs = _as_skeletal(h).groups(), _as_skeletal(g).groups()
    total = Fraction(1)
    for k in hs:
        total *= sum((Fraction(count_homs(k, x), x.order) for x in gs), Fraction(0))
    return total
