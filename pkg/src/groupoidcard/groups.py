"""Finite groups given by Cayley tables.

Elements are the integers ``0 .. order-1`` and element ``0`` is always the
identity; tables handed to :func:`group_from_cayley` are re-indexed so that this
holds.  ``table[a][b]`` is the product ``a*b``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Callable, Hashable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import (
    DegreeTooLarge,
    GroupTooLarge,
    NoIdentity,
    NoInverse,
    NotAHomomorphism,
    NotAssociative,
    NotLatinSquare,
    NotNormal,
    ValidationError,
)

MAX_ORDER = 512
MAX_CENTRALIZER_DEGREE = 8
MAX_SYMMETRIC_TABLE_DEGREE = 6


class FiniteGroup:
    """A finite group stored as a full multiplication table.

    Construct through :func:`group_from_cayley` (validating) or one of the
    builders below; calling the constructor directly trusts the table.
    """

    __slots__ = ("table", "order", "identity", "inverse", "labels", "name", "_hash", "__dict__")

    def __init__(self, table, labels=None, name=None):
        self.table = tuple(tuple(int(x) for x in row) for row in table)
        self.order = len(self.table)
        self.identity = 0
        inv = [0] * self.order
        for a, row in enumerate(self.table):
            inv[a] = row.index(0)
        self.inverse = tuple(inv)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        self._hash = hash(self.table)

    def __len__(self):
        return self.order

    def __iter__(self):
        return iter(range(self.order))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self._hash == other._hash and self.table == other.table

    def __repr__(self):
        if self.name:
            return f"FiniteGroup({self.name})"
        return f"FiniteGroup(order={self.order})"

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse[a]

    def conj(self, g, h):
        """``g h g^-1``"""
        t = self.table
        return t[t[g][h]][self.inverse[g]]

    @cached_property
    def element_orders(self):
        orders = []
        for a in range(self.order):
            x, k = a, 1
            while x != 0:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    @cached_property
    def array(self):
        arr = np.array(self.table, dtype=np.int32)
        arr.setflags(write=False)
        return arr

    def is_abelian(self):
        arr = self.array
        return bool((arr == arr.T).all())


class GroupHom(NamedTuple):
    """A homomorphism given by its value on every element of the source."""

    source: FiniteGroup
    target: FiniteGroup
    map: tuple

    def __call__(self, a):
        return self.map[a]

    def compose(self, first: "GroupHom") -> "GroupHom":
        """``self o first``"""
        return GroupHom(first.source, self.target, tuple(self.map[x] for x in first.map))

    def kernel(self):
        return tuple(a for a, x in enumerate(self.map) if x == 0)

    def image(self):
        return tuple(sorted(set(self.map)))


class HomPredicates(NamedTuple):
    injective: bool
    surjective: bool
    isomorphism: bool


@dataclass(frozen=True)
class SubgroupClass:
    """One conjugacy class of subgroups, represented by its least member."""

    representative: tuple
    class_size: int
    index: int

    @property
    def order(self):
        return len(self.representative)


@dataclass(frozen=True)
class PermGroup:
    degree: int
    elements: frozenset

    def __post_init__(self):
        ident = tuple(range(self.degree))
        if ident not in self.elements:
            raise ValidationError("permutation group must contain the identity")
        for p in self.elements:
            if sorted(p) != list(ident):
                raise ValidationError(f"{p!r} is not a permutation of {self.degree} points")

    @property
    def order(self):
        return len(self.elements)


@dataclass(frozen=True)
class CosetAction:
    """Left translation action of a group on the left cosets of a subgroup.

    ``perms[g][i] = j`` when ``g * cosets[i] == cosets[j]``.
    """

    group: FiniteGroup
    subgroup: tuple
    cosets: tuple
    perms: tuple
    image: PermGroup

    @property
    def degree(self):
        return len(self.cosets)

    def hom(self) -> GroupHom:
        """The action as a homomorphism into :func:`symmetric_group`."""
        if self.degree > MAX_SYMMETRIC_TABLE_DEGREE:
            raise DegreeTooLarge(
                f"Cayley table of Sym({self.degree}) is too large; use .perms instead"
            )
        sym = symmetric_group(self.degree)
        index = {p: i for i, p in enumerate(sym.labels)}
        return GroupHom(self.group, sym, tuple(index[p] for p in self.perms))


# -- construction ------------------------------------------------------------


def _check_shape(table):
    n = len(table)
    if n == 0:
        raise ValidationError("a group table must have at least one row")
    for i, row in enumerate(table):
        if len(row) != n:
            raise ValidationError(f"table is not square: row {i} has {len(row)} entries, expected {n}")
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)) or not 0 <= x < n:
                raise ValidationError(f"entry table[{i}][{j}] = {x!r} is not an element index in [0, {n})")


def group_from_cayley(table, *, labels=None, name=None, max_order=MAX_ORDER) -> FiniteGroup:
    """Validate a multiplication table and return the group it defines.

    Checks run in the order associativity, identity, inverses, Latin square;
    the first failure raises with the offending triple or row.
    """
    _check_shape(table)
    n = len(table)
    if n > max_order:
        raise GroupTooLarge(f"group order {n} exceeds the cap of {max_order}")
    arr = np.asarray(table, dtype=np.int64)

    for a in range(n):
        left = arr[arr[a]]      # (a*b)*c over (b, c)
        right = arr[a][arr]     # a*(b*c)
        bad = np.argwhere(left != right)
        if len(bad):
            b, c = (int(x) for x in bad[0])
            raise NotAssociative(
                f"({a}*{b})*{c} = {int(left[b, c])} but {a}*({b}*{c}) = {int(right[b, c])}"
            )

    rng = np.arange(n)
    identity = None
    for e in range(n):
        if (arr[e] == rng).all() and (arr[:, e] == rng).all():
            identity = e
            break
    if identity is None:
        raise NoIdentity("no element is a two-sided identity")

    for a in range(n):
        both = np.flatnonzero((arr[a] == identity) & (arr[:, a] == identity))
        if not len(both):
            raise NoInverse(f"element {a} (row {a}) has no two-sided inverse")

    for i in range(n):
        if len(set(arr[i].tolist())) != n:
            raise NotLatinSquare(f"row {i} repeats an entry")
        if len(set(arr[:, i].tolist())) != n:
            raise NotLatinSquare(f"column {i} repeats an entry")

    return _reindexed(arr.tolist(), identity, labels, name)


def _reindexed(table, identity, labels, name):
    n = len(table)
    if labels is None:
        labels = list(range(n))
    if identity == 0:
        return FiniteGroup(table, labels, name)
    order = [identity] + [x for x in range(n) if x != identity]
    pos = {old: new for new, old in enumerate(order)}
    new_table = [[pos[table[a][b]] for b in order] for a in order]
    return FiniteGroup(new_table, [labels[x] for x in order], name)


def group_from_operation(elements: Sequence[Hashable], op: Callable, name=None) -> FiniteGroup:
    """Tabulate ``op`` on ``elements``; ``elements[0]`` must be the identity."""
    index = {x: i for i, x in enumerate(elements)}
    table = [[index[op(a, b)] for b in elements] for a in elements]
    return FiniteGroup(table, elements, name)


def _compose_perm(p, q):
    return tuple(p[x] for x in q)


def permutation_closure(degree, generators):
    ident = tuple(range(degree))
    gens = [tuple(g) for g in generators]
    for g in gens:
        if sorted(g) != list(ident):
            raise ValidationError(f"{list(g)} is not a permutation of range({degree})")
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose_perm(g, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def permutation_group(degree, generators, name=None, max_order=MAX_ORDER) -> FiniteGroup:
    """Cayley table of the permutation group generated by ``generators``.

    Elements are sorted lexicographically, so the identity comes first.  The
    product is ``(p*q)(x) = p(q(x))``.
    """
    elements = sorted(permutation_closure(degree, generators))
    if len(elements) > max_order:
        raise GroupTooLarge(f"generated group has order {len(elements)} > {max_order}")
    return group_from_operation(elements, _compose_perm, name)


@lru_cache(maxsize=None)
def symmetric_group(n) -> FiniteGroup:
    if n > MAX_SYMMETRIC_TABLE_DEGREE:
        raise DegreeTooLarge(f"Sym({n}) Cayley table is too large (degree cap {MAX_SYMMETRIC_TABLE_DEGREE})")
    elements = list(itertools.permutations(range(n)))
    return group_from_operation(elements, _compose_perm, f"S{n}")


@lru_cache(maxsize=None)
def cyclic(n) -> FiniteGroup:
    return group_from_operation(list(range(n)), lambda a, b: (a + b) % n, f"C{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup, name=None) -> FiniteGroup:
    elements = list(itertools.product(range(g.order), range(h.order)))
    return group_from_operation(
        elements,
        lambda x, y: (g.table[x[0]][y[0]], h.table[x[1]][y[1]]),
        name or f"{g.name}x{h.name}",
    )


@lru_cache(maxsize=None)
def dihedral(n) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n; pairs (i, j) stand for r^i s^j."""

    def op(x, y):
        i, j = x
        k, l = y
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    elements = [(i, j) for j in range(2) for i in range(n)]
    return group_from_operation(elements, op, f"D{n}")


@lru_cache(maxsize=None)
def dicyclic(n) -> FiniteGroup:
    """Order 4n: a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1.  dicyclic(2) is Q8."""
    m = 2 * n

    def op(x, y):
        i, j = x
        k, l = y
        e = (i + (k if j == 0 else -k)) % m
        if j == 1 and l == 1:
            return ((e + n) % m, 0)
        return (e, j + l)

    elements = [(i, j) for j in range(2) for i in range(m)]
    return group_from_operation(elements, op, "Q8" if n == 2 else f"Dic{n}")


@lru_cache(maxsize=None)
def alternating(n) -> FiniteGroup:
    gens = [tuple([1, 2, 0] + list(range(3, n)))] if n >= 3 else []
    for k in range(3, n):
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    return permutation_group(n, gens or [tuple(range(n))], name=f"A{n}")


def _named(group, name):
    return FiniteGroup(group.table, group.labels, name)


@lru_cache(maxsize=None)
def _small_group_catalogue():
    c2 = cyclic(2)
    return (
        ("C1", cyclic(1)),
        ("C2", c2),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("V4", _named(direct_product(c2, c2), "V4")),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", _named(symmetric_group(3), "S3")),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", direct_product(cyclic(4), c2, "C4xC2")),
        ("C2^3", direct_product(direct_product(c2, c2), c2, "C2^3")),
        ("D4", dihedral(4)),
        ("Q8", dicyclic(2)),
        ("C9", cyclic(9)),
        ("C3xC3", direct_product(cyclic(3), cyclic(3), "C3xC3")),
        ("C10", cyclic(10)),
        ("D5", dihedral(5)),
        ("C11", cyclic(11)),
        ("C12", cyclic(12)),
        ("C6xC2", direct_product(cyclic(6), c2, "C6xC2")),
        ("D6", dihedral(6)),
        ("A4", alternating(4)),
        ("Dic3", dicyclic(3)),
    )


def small_groups(max_order=8):
    """All groups of order <= max_order (max 12) up to isomorphism, in a fixed order."""
    if max_order > 12:
        raise ValidationError("the built-in table only covers orders up to 12")
    return [(name, g) for name, g in _small_group_catalogue() if g.order <= max_order]


def small_group(name) -> FiniteGroup:
    for n, g in _small_group_catalogue():
        if n == name:
            return g
    if name.startswith("S") and name[1:].isdigit():
        return symmetric_group(int(name[1:]))
    if name.startswith("C") and name[1:].isdigit():
        return cyclic(int(name[1:]))
    raise ValidationError(f"unknown group name {name!r}")


# -- subgroups ---------------------------------------------------------------


def generated_subgroup(g: FiniteGroup, gens) -> frozenset:
    t = g.table
    gens = list(gens)
    elems = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            row = t[x]
            for s in gens:
                y = row[s]
                if y not in elems:
                    elems.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(elems)


def _subset_key(s):
    return (len(s), tuple(sorted(s)))


@lru_cache(maxsize=256)
def all_subgroups(g: FiniteGroup) -> tuple:
    """Every subgroup, sorted by order and then by sorted element tuple.

    Cyclic extension: start from the cyclic subgroups and keep joining a
    known subgroup with a cyclic one until nothing new appears.
    """
    cyclic_subs = {}
    for a in range(g.order):
        c = generated_subgroup(g, [a])
        cyclic_subs.setdefault(c, a)
    gens = {frozenset([0]): []}
    for c, a in cyclic_subs.items():
        gens.setdefault(c, [a] if a else [])
    queue = list(gens)
    while queue:
        h = queue.pop()
        for c, a in cyclic_subs.items():
            if c <= h:
                continue
            k = generated_subgroup(g, gens[h] + [a])
            if k not in gens:
                gens[k] = gens[h] + [a]
                queue.append(k)
    return tuple(sorted(gens, key=_subset_key))


def conjugate_subset(g: FiniteGroup, x, subset) -> frozenset:
    return frozenset(g.conj(x, h) for h in subset)


def subgroups_up_to_conjugacy(g: FiniteGroup) -> list:
    seen = set()
    classes = []
    for h in all_subgroups(g):
        if h in seen:
            continue
        conjugates = {conjugate_subset(g, x, h) for x in range(g.order)}
        seen |= conjugates
        classes.append(SubgroupClass(tuple(sorted(h)), len(conjugates), g.order // len(h)))
    return classes


def is_subgroup(g: FiniteGroup, subset) -> bool:
    s = set(subset)
    if 0 not in s:
        return False
    return all(g.table[a][b] in s for a in s for b in s)


def is_normal(g: FiniteGroup, subset) -> bool:
    s = frozenset(subset)
    return all(conjugate_subset(g, x, s) == s for x in range(g.order))


def normal_subgroups(g: FiniteGroup) -> list:
    return [c.representative for c in subgroups_up_to_conjugacy(g) if c.class_size == 1]


def normalizer(g: FiniteGroup, subset) -> tuple:
    s = frozenset(subset)
    return tuple(x for x in range(g.order) if conjugate_subset(g, x, s) == s)


# -- actions and centralizers --------------------------------------------------


def left_cosets(g: FiniteGroup, subgroup) -> tuple:
    """Left cosets xH, each as a sorted tuple, ordered by least element."""
    seen = set()
    cosets = []
    for x in range(g.order):
        if x in seen:
            continue
        c = tuple(sorted(g.table[x][h] for h in subgroup))
        seen.update(c)
        cosets.append(c)
    return tuple(cosets)


def coset_action(g: FiniteGroup, h) -> CosetAction:
    subgroup = tuple(h.representative) if isinstance(h, SubgroupClass) else tuple(sorted(h))
    if not is_subgroup(g, subgroup):
        raise ValidationError(f"{list(subgroup)} is not a subgroup")
    cosets = left_cosets(g, subgroup)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    perms = tuple(tuple(where[g.table[x][c[0]]] for c in cosets) for x in range(g.order))
    return CosetAction(g, subgroup, cosets, perms, PermGroup(len(cosets), frozenset(perms)))


def _generating_subset(perms, degree):
    gens = []
    span = {tuple(range(degree))}
    for p in sorted(perms):
        if p not in span:
            gens.append(p)
            span = permutation_closure(degree, gens)
    return gens


def centralizer_order_in_sym(image: PermGroup) -> int:
    """Order of the centralizer of ``image`` in the full symmetric group.

    Filters all ``degree!`` permutations, so the degree is capped at 8.
    """
    d = image.degree
    if d > MAX_CENTRALIZER_DEGREE:
        raise DegreeTooLarge(f"degree {d} exceeds the centralizer cap of {MAX_CENTRALIZER_DEGREE}")
    gens = _generating_subset(image.elements, d)
    count = 0
    for s in itertools.permutations(range(d)):
        if all(all(s[p[x]] == p[s[x]] for x in range(d)) for p in gens):
            count += 1
    return count


# -- homomorphisms -------------------------------------------------------------


def make_hom(source: FiniteGroup, target: FiniteGroup, mapping) -> GroupHom:
    """Validated :class:`GroupHom`."""
    mapping = tuple(int(x) for x in mapping)
    if len(mapping) != source.order:
        raise NotAHomomorphism(f"map has {len(mapping)} entries, source has order {source.order}")
    for a, x in enumerate(mapping):
        if not 0 <= x < target.order:
            raise NotAHomomorphism(f"map[{a}] = {x} is not an element of the target")
    if mapping[0] != 0:
        raise NotAHomomorphism("identity is not sent to the identity")
    st, tt = source.table, target.table
    for a in range(source.order):
        for b in range(source.order):
            if mapping[st[a][b]] != tt[mapping[a]][mapping[b]]:
                raise NotAHomomorphism(f"map({a}*{b}) != map({a})*map({b})")
    return GroupHom(source, target, mapping)


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(range(g.order)))


def trivial_hom(source: FiniteGroup, target: FiniteGroup) -> GroupHom:
    return GroupHom(source, target, (0,) * source.order)


def iter_homs(h: FiniteGroup, g: FiniteGroup, injective=False) -> Iterator[GroupHom]:
    """All homomorphisms h -> g in lexicographic order of their map tuples.

    Backtracks on the least unassigned element; every assignment is closed
    under products with what is already assigned, so conflicts prune early.
    """
    n = h.order
    ht, gt = h.table, g.table
    if injective and n > g.order:
        return
    ho, go = h.element_orders, g.element_orders
    if injective:
        cands = [[t for t in range(g.order) if go[t] == ho[a]] for a in range(n)]
    else:
        cands = [[t for t in range(g.order) if ho[a] % go[t] == 0] for a in range(n)]

    def extend(mp, assigned, used, a, t):
        mp[a] = t
        assigned.append(a)
        if injective:
            if t in used:
                return False
            used.add(t)
        stack = [a]
        while stack:
            x = stack.pop()
            mx = mp[x]
            for y in list(assigned):
                my = mp[y]
                for z, v in ((ht[x][y], gt[mx][my]), (ht[y][x], gt[my][mx])):
                    cur = mp[z]
                    if cur < 0:
                        if injective:
                            if v in used:
                                return False
                            used.add(v)
                        mp[z] = v
                        assigned.append(z)
                        stack.append(z)
                    elif cur != v:
                        return False
        return True

    def rec(mp, assigned, used, start):
        a = start
        while a < n and mp[a] >= 0:
            a += 1
        if a == n:
            yield GroupHom(h, g, tuple(mp))
            return
        for t in cands[a]:
            mp2, as2, used2 = list(mp), list(assigned), set(used)
            if extend(mp2, as2, used2, a, t):
                yield from rec(mp2, as2, used2, a + 1)

    mp0 = [-1] * n
    assigned0, used0 = [], set()
    if not extend(mp0, assigned0, used0, 0, 0):
        return
    yield from rec(mp0, assigned0, used0, 1)


def enumerate_homs(h: FiniteGroup, g: FiniteGroup) -> list:
    return list(iter_homs(h, g))


@lru_cache(maxsize=4096)
def count_homs(h: FiniteGroup, g: FiniteGroup) -> int:
    return sum(1 for _ in iter_homs(h, g))


@lru_cache(maxsize=4096)
def find_isomorphism(h: FiniteGroup, g: FiniteGroup):
    """An isomorphism h -> g, or None."""
    if h.order != g.order or sorted(h.element_orders) != sorted(g.element_orders):
        return None
    if h.is_abelian() != g.is_abelian():
        return None
    return next(iter_homs(h, g, injective=True), None)


def is_isomorphic(h: FiniteGroup, g: FiniteGroup) -> bool:
    return find_isomorphism(h, g) is not None


def hom_predicates(f: GroupHom) -> HomPredicates:
    injective = len(set(f.map)) == f.source.order
    surjective = len(set(f.map)) == f.target.order
    return HomPredicates(injective, surjective, injective and surjective)


def quotient_group(h: FiniteGroup, normal) -> tuple:
    """``(H/N, projection)``; cosets are ordered by least element."""
    n = tuple(sorted(set(normal)))
    if not is_subgroup(h, n):
        raise ValidationError(f"{list(n)} is not a subgroup")
    if not is_normal(h, n):
        raise NotNormal(f"{list(n)} is not a normal subgroup")
    cosets = left_cosets(h, n)
    where = {}
    for i, c in enumerate(cosets):
        for x in c:
            where[x] = i
    reps = [c[0] for c in cosets]
    table = [[where[h.table[a][b]] for b in reps] for a in reps]
    q = FiniteGroup(table, cosets)
    return q, GroupHom(h, q, tuple(where[x] for x in range(h.order)))


def group_to_json(g: FiniteGroup) -> dict:
    return {"order": g.order, "table": [list(r) for r in g.table]}
