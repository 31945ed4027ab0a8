"""Exception types shared across the package.

``DomainError`` covers invalid-but-well-formed requests (resonant carrier
wavenumber, Floquet exponent out of range, a query below the instability
threshold, ...).  The command line maps these to exit code 2.  Anything
else is an internal failure.
"""


class DomainError(Exception):
    """Request outside the mathematical domain of the analysis."""


class ResonantWavenumber(DomainError):
    """Carrier wavenumber at or too close to a harmonic resonance."""


class DivisionByZero(DomainError):
    """Bloch index n + xi too close to zero."""


class Singularity(DomainError):
    """Collision-kernel evaluation at a pole or zero of its denominator."""


class NoCollision(DomainError):
    """The requested mode pair admits no eigenvalue collision."""


class NotACollision(DomainError):
    """(n, m, xi0) does not satisfy the collision condition at tolerance."""


class NotUnstable(DomainError):
    """Growth rate requested where the discriminant is non-negative."""


class WrongDispersionSign(DomainError):
    """Operation requires the opposite sign of the dispersion coefficient."""


class OrderNotAnalyzed(DomainError):
    """No reduced pencil is constructed for mode separations >= 3."""


class XiOutOfRange(DomainError):
    """Floquet exponent outside (0, 1/2]."""


class IndefiniteNearZero(DomainError):
    """Krein quadratic form numerically zero; signature undefined."""


class ConvergenceFailure(Exception):
    """The dense eigensolver failed to converge (internal failure)."""
