"""Exception hierarchy.

Everything raised on bad input derives from :class:`ValidationError`, which the
CLI maps to exit status 2.
"""


class GroupoidCardError(Exception):
    pass


class ValidationError(GroupoidCardError, ValueError):
    pass


# group tables
class NotAssociative(ValidationError):
    pass


class NotLatinSquare(ValidationError):
    pass


class NoIdentity(ValidationError):
    pass


class NoInverse(ValidationError):
    pass


class NotNormal(ValidationError):
    pass


class NotAHomomorphism(ValidationError):
    pass


class GroupTooLarge(ValidationError):
    pass


class DegreeTooLarge(ValidationError):
    pass


# groupoids and functors
class InvalidGroupoid(ValidationError):
    pass


class InvalidFunctor(ValidationError):
    pass


class SizeLimit(ValidationError):
    pass


class PreconditionUnmet(ValidationError):
    pass


# series
class ExpNonzeroConstant(ValidationError):
    pass


# relative finite functors
class BaseMismatch(ValidationError):
    pass


# relational structures
class SignatureMismatch(ValidationError):
    pass


class UniverseTooLarge(ValidationError):
    pass


class TheoremViolation(GroupoidCardError, AssertionError):
    """A computed instance contradicts a proven statement. Always a bug."""
