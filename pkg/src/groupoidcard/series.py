"""Truncated exact-rational power series, the G-set generating function and the
representation-series tameness bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DegreeTooLarge, ExpNonzeroConstant, ValidationError
from .groupoids import FiniteGroupoid
from .groups import (
    MAX_CENTRALIZER_DEGREE,
    FiniteGroup,
    centralizer_order_in_sym,
    coset_action,
    subgroups_up_to_conjugacy,
)

DEFAULT_TRUNCATION = 16


@dataclass(frozen=True)
class RationalSeries:
    """``c0 + c1 x + ... + cN x^N`` with exact coefficients."""

    truncation: int
    coeffs: tuple

    def __post_init__(self):
        if self.truncation < 0:
            raise ValidationError("truncation must be non-negative")
        cs = tuple(Fraction(c) for c in self.coeffs)
        if len(cs) > self.truncation + 1:
            raise ValidationError("more coefficients than the truncation allows")
        cs = cs + (Fraction(0),) * (self.truncation + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, n):
        return cls(n, ())

    @classmethod
    def one(cls, n):
        return cls(n, (1,))

    @classmethod
    def monomial(cls, n, k, c=1):
        """``c x^k``, dropped entirely when ``k > n``."""
        if k > n:
            return cls(n, ())
        return cls(n, (0,) * k + (c,))

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return len(self.coeffs)

    def truncate(self, n):
        return RationalSeries(min(n, self.truncation), self.coeffs[: min(n, self.truncation) + 1])

    def __add__(self, other):
        return series_add(self, other)

    def __neg__(self):
        return RationalSeries(self.truncation, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return series_add(self, -other)

    def __mul__(self, other):
        return series_mul(self, other)

    def exp(self):
        return series_exp(self)

    def evaluate(self, x):
        return sum(c * Fraction(x) ** k for k, c in enumerate(self.coeffs))

    def to_json(self):
        return {"truncation": self.truncation, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["truncation"]), tuple(Fraction(c) for c in data["coeffs"]))

    def __str__(self):
        return format_series(self)


def format_series(s: RationalSeries) -> str:
    parts = []
    for k, c in enumerate(s.coeffs):
        if c == 0:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if k == 0:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)} {mono}"
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{sign} {body}")
    return " ".join(parts) if parts else "0"


def series_add(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.truncation, b.truncation)
    return RationalSeries(n, tuple(a.coeffs[k] + b.coeffs[k] for k in range(n + 1)))


def series_mul(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    n = min(a.truncation, b.truncation)
    out = [Fraction(0)] * (n + 1)
    for i in range(n + 1):
        ai = a.coeffs[i]
        if ai:
            for j in range(n + 1 - i):
                out[i + j] += ai * b.coeffs[j]
    return RationalSeries(n, tuple(out))


def series_exp(a: RationalSeries) -> RationalSeries:
    if a.coeffs[0] != 0:
        raise ExpNonzeroConstant(f"constant term {a.coeffs[0]} is not zero")
    n = a.truncation
    b = [Fraction(1)] + [Fraction(0)] * n
    for m in range(1, n + 1):
        b[m] = sum(k * a.coeffs[k] * b[m - k] for k in range(1, m + 1)) / m
    return RationalSeries(n, tuple(b))


# -- G-sets ---------------------------------------------------------------------


def gset_terms(g: FiniteGroup, max_index=None):
    """``(index, centralizer order)`` per conjugacy class of subgroups.

    Classes whose index exceeds ``max_index`` are skipped without computing
    their centralizer.
    """
    out = []
    for cls in subgroups_up_to_conjugacy(g):
        if max_index is not None and cls.index > max_index:
            continue
        if cls.index > MAX_CENTRALIZER_DEGREE:
            raise DegreeTooLarge(
                f"coset space of size {cls.index} exceeds the centralizer cap of {MAX_CENTRALIZER_DEGREE}"
            )
        out.append((cls.index, centralizer_order_in_sym(coset_action(g, cls).image)))
    return out


def gset_log(g: FiniteGroup, n=DEFAULT_TRUNCATION) -> RationalSeries:
    """The series whose exponential is :func:`gset_egf`."""
    s = RationalSeries.zero(n)
    for index, c in gset_terms(g, max_index=n):
        s = s + RationalSeries.monomial(n, index, Fraction(1, c))
    return s


def gset_egf(g: FiniteGroup, n=DEFAULT_TRUNCATION) -> RationalSeries:
    """Generating function of finite G-sets: coefficient ``k`` is the
    cardinality of the groupoid of ``k``-element G-sets."""
    return series_exp(gset_log(g, n))


def gset_factors(g: FiniteGroup, n=DEFAULT_TRUNCATION) -> list:
    """One exponential factor per subgroup class; their product is :func:`gset_egf`."""
    return [
        series_exp(RationalSeries.monomial(n, index, Fraction(1, c)))
        for index, c in gset_terms(g, max_index=n)
    ]


@dataclass(frozen=True)
class GroupoidExponent:
    exponent: Fraction

    @property
    def value(self) -> float:
        return math.exp(self.exponent)


def gset_groupoid_exponent(g: FiniteGroupoid) -> GroupoidExponent:
    """Cardinality of the groupoid of functors into finite sets is ``e`` to this exponent."""
    total = Fraction(0)
    for x in g.representatives():
        for _, c in gset_terms(g.vertex_group(x).group):
            total += Fraction(1, c)
    return GroupoidExponent(total)


# -- representation series ------------------------------------------------------


def _prime_power(q):
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    e = 0
    while q % p == 0:
        q //= p
        e += 1
    return (p, e) if q == 1 else None


def is_prime_power(q) -> bool:
    return isinstance(q, int) and _prime_power(q) is not None


def gl_order(n: int, q: int) -> int:
    if n < 0:
        raise ValidationError("n must be non-negative")
    if not is_prime_power(q):
        raise ValidationError(f"{q} is not a prime power")
    return math.prod(q**n - q**i for i in range(n))


@dataclass(frozen=True)
class RepComponentParams:
    """An irreducible V of dimension ``dim_v`` whose endomorphism field has ``q**d`` elements."""

    dim_v: int
    q: int
    d: int = 1

    def __post_init__(self):
        if not (isinstance(self.dim_v, int) and self.dim_v >= 1):
            raise ValidationError("dim_v must be a positive integer")
        if not is_prime_power(self.q):
            raise ValidationError(f"q={self.q} is not a prime power")
        if not (isinstance(self.d, int) and self.d >= 1):
            raise ValidationError("d must be a positive integer")

    @property
    def field_size(self):
        return self.q**self.d

    @property
    def a(self):
        """``#Aut(V)``"""
        return self.field_size - 1


def rep_component_series(p: RepComponentParams, n=DEFAULT_TRUNCATION) -> RationalSeries:
    coeffs = [Fraction(0)] * (n + 1)
    k = 0
    while k * p.dim_v <= n:
        coeffs[k * p.dim_v] = Fraction(1, gl_order(k, p.field_size))
        k += 1
    return RationalSeries(n, tuple(coeffs))


def borel_order(n: int, a: int) -> int:
    """``a^n (a+1)^{T_{n-1}}``: invertible block upper triangular matrices."""
    if n == 0:
        return 1
    return a**n * (a + 1) ** ((n - 1) * n // 2)


@dataclass(frozen=True)
class TamenessCheck:
    partial_sum: Fraction
    bound: Fraction
    holds: bool


def tameness_bound_check(p: RepComponentParams, n=DEFAULT_TRUNCATION) -> TamenessCheck:
    """Compare ``sum 1/#GL_k`` against the geometric-style upper-triangular bound, termwise."""
    a, field = p.a, p.field_size
    partial = Fraction(0)
    bound = Fraction(0)
    holds = True
    for k in range(n + 1):
        gl = gl_order(k, field)
        b = borel_order(k, a)
        partial += Fraction(1, gl)
        bound += Fraction(1, b)
        if not (b <= gl and gl % b == 0):
            holds = False
    return TamenessCheck(partial, bound, holds and partial <= bound)
