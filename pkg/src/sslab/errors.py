"""Exception hierarchy.

Everything raised on purpose by this package derives from SsLabError, so
callers can catch one type at the CLI boundary.  Names describe the violated
precondition rather than the operation that noticed it.
"""


class SsLabError(Exception):
    """Base class for all errors raised by sslab."""


class CompositeP(SsLabError):
    """The characteristic passed in is not a prime number."""


class PrimeTooLarge(SsLabError):
    """The prime exceeds the supported bound (1000)."""


class DegreeTooLarge(SsLabError):
    pass


class NoRoot(SsLabError):
    """A square root or polynomial root was requested but does not exist."""


class SingularCurve(SsLabError):
    """The coefficients define a curve with vanishing discriminant."""


class FieldMismatch(SsLabError):
    """Operands live in different fields with no declared embedding."""


class TooLarge(SsLabError):
    pass


class ZeroTwist(SsLabError):
    pass


class FieldTooSmall(SsLabError):
    pass


class BadN(SsLabError):
    """The requested multiplication-by-n is divisible by the characteristic."""


class ExtensionTooLarge(SsLabError):
    """A construction would need a field extension beyond the configured cap."""


class NotASubgroup(SsLabError):
    pass


class InseparableKernel(SsLabError):
    pass


class InseparableInput(SsLabError):
    pass


class NotSupersingular(SsLabError):
    pass


class NoDecomposition(SsLabError):
    pass


class TruncationTooSmall(SsLabError):
    """A power series was requested or combined past its stored precision."""


class Inconclusive(SsLabError):
    """A height probe could not distinguish the two possible answers."""


class NotAnAutomorphism(SsLabError):
    pass


class NonPIntegral(SsLabError):
    """A q-expansion coefficient has the working prime in its denominator."""


class NotInSpan(SsLabError):
    pass


class WeightMismatch(SsLabError):
    pass


class PrecisionLoss(SsLabError):
    pass


class NotConnected(SsLabError):
    pass


class NotNormal(SsLabError):
    pass
