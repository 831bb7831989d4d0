"""Homotopy cardinality of pi-finite data and the n <= 2 image inequalities."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import TheoremViolation, ValidationError
from .functors import GroupoidFunctor, ternary_factorize
from .groupoids import FiniteGroupoid, groupoid_cardinality


@dataclass(frozen=True)
class PiFiniteSpace:
    """Per component, the orders ``[#pi_1, #pi_2, ...]`` (trivial beyond the list)."""

    components: tuple

    def __post_init__(self):
        comps = []
        for c in self.components:
            c = tuple(c)
            for k in c:
                if not isinstance(k, int) or isinstance(k, bool) or k < 1:
                    raise ValidationError(f"homotopy group orders must be positive integers, got {k!r}")
            comps.append(c)
        object.__setattr__(self, "components", tuple(comps))

    def to_json(self):
        return {"components": [list(c) for c in self.components]}

    @classmethod
    def from_json(cls, data):
        try:
            return cls(tuple(data["components"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed space: {exc}") from None


def homotopy_cardinality(x: PiFiniteSpace) -> Fraction:
    total = Fraction(0)
    for comp in x.components:
        term = Fraction(1)
        for k, order in enumerate(comp, start=1):
            term = term * order if k % 2 == 0 else term / order
        total += term
    return total


def groupoid_to_pifinite(g: FiniteGroupoid) -> PiFiniteSpace:
    return PiFiniteSpace(tuple((len(g.hom(r, r)),) for r in g.representatives()))


@dataclass(frozen=True)
class PostnikovImages:
    im1_card: Fraction
    im2_card: Fraction
    inequality_holds: bool
    im1_bounded_by_target: bool


def postnikov_images_n12(f: GroupoidFunctor) -> PostnikovImages:
    """Cardinalities of the 2-image and the 1-image of ``f``.

    The 2-image is the intermediate groupoid after the (essentially surjective
    and full) stage; the 1-image is the full subgroupoid on objects hit up to
    isomorphism.  Expected: ``|im2| >= |im1|`` and ``|im1| <= |target|``.
    """
    t = ternary_factorize(f)
    a, b = groupoid_cardinality(t.im2), groupoid_cardinality(t.im1)
    target = groupoid_cardinality(f.target)
    res = PostnikovImages(b, a, a >= b, b <= target)
    if not (res.inequality_holds and res.im1_bounded_by_target):
        raise TheoremViolation(f"image inequalities fail: |im2|={a}, |im1|={b}, |target|={target}")
    return res
