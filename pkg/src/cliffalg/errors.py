"""Exception types raised by the kernel.

Everything derives from :class:`CliffordError`, so callers (and the CLI) can
catch the whole family at once.  ``MathDomainError`` marks inputs that are
well formed but outside the domain of an operation.
"""


class CliffordError(ValueError):
    pass


class MathDomainError(CliffordError):
    pass


class SignatureMismatch(CliffordError):
    pass


class DegeneratePseudoscalar(MathDomainError):
    pass


class DegenerateSignature(MathDomainError):
    pass


class ExactSeriesUnsupported(MathDomainError):
    pass


class NonHomogeneous(MathDomainError):
    pass


class NotABlade(MathDomainError):
    pass


class NullBlade(MathDomainError):
    pass


class ZeroBlade(MathDomainError):
    pass


class DependentBasis(MathDomainError):
    pass


class SingularMap(MathDomainError):
    pass


class UnsupportedDimension(MathDomainError):
    pass


class NotInvertible(MathDomainError):
    pass


class NotOrthogonal(MathDomainError):
    pass


class MissingCoordinates(MathDomainError):
    pass


class RegistryMismatch(CliffordError):
    pass


class GridShapeMismatch(CliffordError):
    pass
