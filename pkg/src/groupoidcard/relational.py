"""Finite relational structures, homomorphism counts and the counting
isomorphism test.

Besides scalar backtracking counters there is a batched engine: for a fixed
target ``A`` and probe universe size ``m`` every labelled probe on ``[m]`` is
a bitmask over the *slots* (relation index, tuple), and ``hom(C, A)`` for all
masks at once is a superset-sum over the pullbacks of the ``n**m`` maps.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import PreconditionUnmet, SignatureMismatch, SizeLimit, TheoremViolation, UniverseTooLarge, ValidationError

MAX_IDENTITY_UNIVERSE = 6
MAX_CANONICAL_UNIVERSE = 8
MAX_SLOTS = 20


class RelationalStructure:
    """Universe ``range(n)`` with relations ``R_i`` of the given arities."""

    __slots__ = ("signature", "n", "relations", "_hash")

    def __init__(self, signature, n, relations):
        sig = tuple(int(a) for a in signature)
        if any(a < 0 for a in sig):
            raise ValidationError("arities must be non-negative")
        if not isinstance(n, int) or n < 0:
            raise ValidationError("universe size must be a non-negative integer")
        rels = list(relations)
        if len(rels) != len(sig):
            raise ValidationError(f"{len(rels)} relations given for a signature of length {len(sig)}")
        out = []
        for i, (a, r) in enumerate(zip(sig, rels)):
            tuples = set()
            for t in r:
                t = tuple(int(x) for x in t)
                if len(t) != a:
                    raise ValidationError(f"relation {i} has arity {a} but contains {list(t)}")
                if any(not 0 <= x < n for x in t):
                    raise ValidationError(f"relation {i} tuple {list(t)} leaves the universe of size {n}")
                tuples.add(t)
            out.append(frozenset(tuples))
        self.signature = sig
        self.n = n
        self.relations = tuple(out)
        self._hash = hash((sig, n, self.relations))

    def __eq__(self, other):
        return (
            isinstance(other, RelationalStructure)
            and self.signature == other.signature
            and self.n == other.n
            and self.relations == other.relations
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        rels = [sorted(r) for r in self.relations]
        return f"RelationalStructure(signature={list(self.signature)}, n={self.n}, relations={rels})"

    def relabel(self, perm) -> "RelationalStructure":
        """Image under the bijection ``x -> perm[x]``."""
        return RelationalStructure(
            self.signature, self.n, [{tuple(perm[x] for x in t) for t in r} for r in self.relations]
        )

    def disjoint_union(self, other: "RelationalStructure") -> "RelationalStructure":
        _check_signature(self, other)
        k = self.n
        return RelationalStructure(
            self.signature,
            self.n + other.n,
            [set(r) | {tuple(x + k for x in t) for t in s} for r, s in zip(self.relations, other.relations)],
        )

    def to_json(self):
        return {
            "signature": list(self.signature),
            "n": self.n,
            "relations": [[list(t) for t in sorted(r)] for r in self.relations],
        }

    @classmethod
    def from_json(cls, data):
        try:
            return cls(data["signature"], data["n"], data["relations"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed structure: {exc}") from None


def digraph(n, edges=()) -> RelationalStructure:
    return RelationalStructure((2,), n, [edges])


def empty_structure(signature) -> RelationalStructure:
    return RelationalStructure(signature, 0, [()] * len(tuple(signature)))


def _check_signature(c, a):
    if c.signature != a.signature:
        raise SignatureMismatch(f"signatures differ: {list(c.signature)} vs {list(a.signature)}")


# -- partitions -----------------------------------------------------------------


@dataclass(frozen=True)
class Partition:
    """``blocks[x]`` is the block of ``x``; block indices are ``0..k-1``."""

    blocks: tuple

    def __post_init__(self):
        b = tuple(int(x) for x in self.blocks)
        object.__setattr__(self, "blocks", b)
        if b and set(b) != set(range(max(b) + 1)):
            raise ValidationError("block indices must cover 0..k-1")

    @property
    def num_blocks(self):
        return max(self.blocks) + 1 if self.blocks else 0

    @classmethod
    def discrete(cls, n):
        return cls(tuple(range(n)))


def partitions(n):
    """All partitions of ``range(n)`` as restricted growth strings, in lexicographic order."""

    def rec(prefix, top):
        if len(prefix) == n:
            yield Partition(tuple(prefix))
            return
        for b in range(top + 2):
            prefix.append(b)
            yield from rec(prefix, max(top, b))
            prefix.pop()

    if n == 0:
        yield Partition(())
        return
    yield from rec([0], 0)


def quotient_structure(c: RelationalStructure, theta: Partition) -> RelationalStructure:
    if len(theta.blocks) != c.n:
        raise ValidationError(f"partition covers {len(theta.blocks)} points, universe has {c.n}")
    b = theta.blocks
    return RelationalStructure(
        c.signature, theta.num_blocks, [{tuple(b[x] for x in t) for t in r} for r in c.relations]
    )


# -- scalar counting --------------------------------------------------------------


def _plan(c: RelationalStructure):
    """Tuples of ``c`` grouped by the position at which they become fully assigned."""
    checks = [[] for _ in range(c.n)]
    nullary = []
    for i, r in enumerate(c.relations):
        for t in r:
            (checks[max(t)] if t else nullary).append((i, t))
    return checks, nullary


def _search(c, a, injective, stop_at_first=False):
    _check_signature(c, a)
    if injective and c.n > a.n:
        return 0, None
    checks, nullary = _plan(c)
    if any(() not in a.relations[i] for i, _ in nullary):
        return 0, None
    rels = a.relations
    f = [0] * c.n
    used = [False] * a.n
    count = 0
    found = None

    def rec(x):
        nonlocal count, found
        if x == c.n:
            count += 1
            if stop_at_first:
                found = tuple(f)
                return True
            return False
        for y in range(a.n):
            if injective and used[y]:
                continue
            f[x] = y
            if all(tuple(f[v] for v in t) in rels[i] for i, t in checks[x]):
                used[y] = True
                if rec(x + 1):
                    return True
                used[y] = False
        return False

    rec(0)
    return count, found


def count_homs(c: RelationalStructure, a: RelationalStructure) -> int:
    return _search(c, a, False)[0]


def count_injective_homs(c: RelationalStructure, a: RelationalStructure) -> int:
    return _search(c, a, True)[0]


def find_isomorphism(a: RelationalStructure, b: RelationalStructure):
    """A bijection ``a -> b`` carrying each relation onto the other, or ``None``.

    On finite sets an injective homomorphism between structures with equal
    universe and relation sizes is an isomorphism.
    """
    _check_signature(a, b)
    if a.n != b.n or [len(r) for r in a.relations] != [len(r) for r in b.relations]:
        return None
    if _degree_profile(a) != _degree_profile(b):
        return None
    return _search(a, b, True, stop_at_first=True)[1]


def _degree_profile(s: RelationalStructure):
    prof = []
    for x in range(s.n):
        prof.append(
            tuple(tuple(sum(1 for t in r if t[p] == x) for p in range(a)) for a, r in zip(s.signature, s.relations))
        )
    return sorted(prof)


def is_isomorphic(a, b) -> bool:
    return find_isomorphism(a, b) is not None


@dataclass(frozen=True)
class IdentityCheck:
    hom: int
    sum_over_partitions: int
    equal: bool


def verify_hom_inj_identity(c: RelationalStructure, a: RelationalStructure) -> IdentityCheck:
    """``hom(C, A)`` against the sum of ``inj(C/theta, A)`` over all partitions of ``C``."""
    _check_signature(c, a)
    if c.n > MAX_IDENTITY_UNIVERSE:
        raise UniverseTooLarge(f"|C| = {c.n} exceeds the partition cap of {MAX_IDENTITY_UNIVERSE}")
    h = count_homs(c, a)
    s = sum(count_injective_homs(quotient_structure(c, th), a) for th in partitions(c.n))
    return IdentityCheck(h, s, h == s)


# -- slot encoding ----------------------------------------------------------------


class SlotSpace:
    """All possible tuples over ``[m]`` for a signature; structures become bitmasks."""

    def __init__(self, signature, m):
        self.signature = tuple(signature)
        self.m = m
        self.slots = [
            (i, t) for i, a in enumerate(self.signature) for t in itertools.product(range(m), repeat=a)
        ]
        if len(self.slots) > MAX_SLOTS:
            raise SizeLimit(f"{len(self.slots)} tuple slots exceed the cap of {MAX_SLOTS}")
        self.index = {s: k for k, s in enumerate(self.slots)}

    @property
    def size(self):
        return len(self.slots)

    def encode(self, s: RelationalStructure) -> int:
        if s.signature != self.signature:
            raise SignatureMismatch("signature does not match the slot space")
        if s.n != self.m:
            raise ValidationError(f"structure has {s.n} points, slot space {self.m}")
        return sum(1 << self.index[(i, t)] for i, r in enumerate(s.relations) for t in r)

    def decode(self, mask: int) -> RelationalStructure:
        rels = [set() for _ in self.signature]
        for k, (i, t) in enumerate(self.slots):
            if mask >> k & 1:
                rels[i].add(t)
        return RelationalStructure(self.signature, self.m, rels)

    def slot_map(self, f, target: "SlotSpace"):
        """Where each slot goes under a point map ``f: [m] -> [target.m]``."""
        return np.array([target.index[(i, tuple(f[x] for x in t))] for i, t in self.slots], dtype=np.int64)

    def remap(self, masks: np.ndarray, dest: np.ndarray) -> np.ndarray:
        out = np.zeros_like(masks)
        for k in range(self.size):
            out |= ((masks >> k) & 1) << dest[k]
        return out


@lru_cache(maxsize=None)
def slot_space(signature, m) -> SlotSpace:
    return SlotSpace(signature, m)


@lru_cache(maxsize=None)
def _all_masks(signature, m):
    sp = slot_space(signature, m)
    return np.arange(1 << sp.size, dtype=np.int64)


@lru_cache(maxsize=None)
def canonical_masks(signature, m) -> np.ndarray:
    """Minimum encoding over all relabellings, for every labelled structure on ``[m]``."""
    if m > MAX_CANONICAL_UNIVERSE:
        raise UniverseTooLarge(f"canonical forms are capped at {MAX_CANONICAL_UNIVERSE} points")
    sp = slot_space(signature, m)
    masks = _all_masks(signature, m)
    best = masks.copy()
    for perm in itertools.permutations(range(m)):
        np.minimum(best, sp.remap(masks, sp.slot_map(perm, sp)), out=best)
    best.setflags(write=False)
    return best


def canonical_form(s: RelationalStructure) -> RelationalStructure:
    """A fixed representative of the isomorphism class of ``s``."""
    if s.n > MAX_CANONICAL_UNIVERSE:
        raise UniverseTooLarge(f"canonical forms are capped at {MAX_CANONICAL_UNIVERSE} points")
    sp = slot_space(s.signature, s.n)
    if sp.size <= 16:
        return sp.decode(int(canonical_masks(s.signature, s.n)[sp.encode(s)]))
    mask = sp.encode(s)
    arr = np.array([mask], dtype=np.int64)
    best = min(int(sp.remap(arr, sp.slot_map(p, sp))[0]) for p in itertools.permutations(range(s.n)))
    return sp.decode(best)


@lru_cache(maxsize=None)
def iso_class_masks(signature, m) -> tuple:
    """Canonical masks of the isomorphism classes on exactly ``m`` points, ascending."""
    return tuple(int(x) for x in np.unique(canonical_masks(signature, m)))


def structures_up_to_iso(signature, max_size) -> list:
    """One structure per isomorphism class with at most ``max_size`` points.

    Ordered by size, then by canonical encoding.
    """
    signature = tuple(signature)
    out = []
    for m in range(max_size + 1):
        sp = slot_space(signature, m)
        out.extend(sp.decode(x) for x in iso_class_masks(signature, m))
    return out


# -- batched hom profiles ---------------------------------------------------------


def _superset_sums(hist: np.ndarray, bits: int) -> np.ndarray:
    h = hist.copy()
    for k in range(bits):
        step = 1 << k
        v = h.reshape(-1, 2 * step)
        v[:, :step] += v[:, step:]
    return h


def _pullback_masks(a: RelationalStructure, m: int, injective: bool):
    sp = slot_space(a.signature, m)
    maps = itertools.permutations(range(a.n), m) if injective else itertools.product(range(a.n), repeat=m)
    out = []
    for f in maps:
        mask = 0
        for k, (i, t) in enumerate(sp.slots):
            if tuple(f[x] for x in t) in a.relations[i]:
                mask |= 1 << k
        out.append(mask)
    return np.array(out, dtype=np.int64), sp


def hom_profile(a: RelationalStructure, m: int, injective=False) -> np.ndarray:
    """``out[mask] = hom(C, A)`` (or ``inj``) for every labelled ``C`` on ``[m]``."""
    pulls, sp = _pullback_masks(a, m, injective)
    hist = np.bincount(pulls, minlength=1 << sp.size).astype(np.int64)
    return _superset_sums(hist, sp.size)


@lru_cache(maxsize=None)
def _probe_index(signature, bound):
    """Per size ``m``, the canonical masks of the probes used by the isomorphism test."""
    return tuple(np.array(iso_class_masks(signature, m), dtype=np.int64) for m in range(bound + 1))


@lru_cache(maxsize=4096)
def _signature_vector(a: RelationalStructure, bound: int) -> np.ndarray:
    parts = [hom_profile(a, m)[idx] for m, idx in enumerate(_probe_index(a.signature, bound))]
    return np.concatenate(parts)


def hom_signature(a: RelationalStructure, bound: int) -> np.ndarray:
    """``hom(C, A)`` for the probes ``C`` of :func:`structures_up_to_iso` (same order)."""
    return _signature_vector(a, bound)


@dataclass(frozen=True)
class LovaszVerdict:
    distinguished_by: RelationalStructure | None
    hom_counts: tuple | None
    isomorphic: bool

    @property
    def indistinguishable(self):
        return self.distinguished_by is None


def lovasz_iso_test(a: RelationalStructure, b: RelationalStructure, size_bound: int) -> LovaszVerdict:
    """Compare hom counts from every structure with at most ``size_bound`` points.

    The first probe with differing counts is the witness.  The verdict is
    checked against a direct isomorphism search.
    """
    _check_signature(a, b)
    if size_bound < max(a.n, b.n):
        raise PreconditionUnmet(f"bound {size_bound} is below the universe sizes {a.n}, {b.n}")
    va, vb = hom_signature(a, size_bound), hom_signature(b, size_bound)
    diff = np.flatnonzero(va != vb)
    iso = find_isomorphism(a, b) is not None
    if diff.size == 0:
        if not iso:
            raise TheoremViolation("non-isomorphic structures agree on every probe")
        return LovaszVerdict(None, None, True)
    if iso:
        raise TheoremViolation("isomorphic structures have different hom counts")
    k = int(diff[0])
    probe = _probe_at(a.signature, size_bound, k)
    return LovaszVerdict(probe, (int(va[k]), int(vb[k])), False)


def _probe_at(signature, bound, k):
    for m, idx in enumerate(_probe_index(signature, bound)):
        if k < len(idx):
            return slot_space(signature, m).decode(int(idx[k]))
        k -= len(idx)
    raise IndexError(k)


@lru_cache(maxsize=None)
def _quotient_remaps(signature, m):
    """For every partition of ``[m]``: number of blocks and the quotient mask of every labelled ``C``."""
    sp = slot_space(signature, m)
    masks = _all_masks(signature, m)
    out = []
    for th in partitions(m):
        k = th.num_blocks
        q = sp.remap(masks, sp.slot_map(th.blocks, slot_space(signature, k)))
        q.setflags(write=False)
        out.append((k, q))
    return tuple(out)


def identity_failures(a: RelationalStructure, m: int) -> int:
    """Check ``hom(C, A) = sum_theta inj(C/theta, A)`` for every labelled ``C`` on ``[m]``.

    Returns the number of ``C`` for which it fails.
    """
    sig = a.signature
    if m > MAX_IDENTITY_UNIVERSE:
        raise UniverseTooLarge(f"|C| = {m} exceeds the partition cap of {MAX_IDENTITY_UNIVERSE}")
    sp = slot_space(sig, m)
    hom = hom_profile(a, m)
    inj = {k: hom_profile(a, k, injective=True) for k in range(m + 1)}
    total = np.zeros(1 << sp.size, dtype=np.int64)
    for k, quotient in _quotient_remaps(sig, m):
        total += inj[k][quotient]
    return int((total != hom).sum())
