"""Exception types raised across the library."""


class XQCorrError(ValueError):
    """Base class for all validation and domain errors in xqcorr."""


class NonHermitianInput(XQCorrError):
    """A matrix required to be Hermitian is not, within tolerance."""


class NotPSD(XQCorrError):
    """A matrix required to be positive semidefinite has a negative eigenvalue."""


class DimensionMismatch(XQCorrError):
    """Operands have incompatible dimensions."""


class BadSubsystem(XQCorrError):
    """A qubit index or index set is empty or out of range."""


class BadPair(XQCorrError):
    """An unknown qubit pair was requested."""


class TraceError(XQCorrError):
    """A density matrix does not have unit trace."""


class NegativeDiagonal(XQCorrError):
    """A diagonal probability weight is negative."""


class CoherenceTooLarge(XQCorrError):
    """An anti-diagonal coherence violates the 2x2 block positivity bound."""


class DomainError(XQCorrError):
    """A family or channel parameter lies outside its valid range."""


class DegenerateBlock(XQCorrError):
    """A zero 2x2 block carries nonzero entries, so its closed form is ill posed."""


class OutOfClass(XQCorrError):
    """The state is outside the class covered by a closed-form expression."""


class NotSymmetric(XQCorrError):
    """A state required to be permutation symmetric is not, within tolerance."""


class NotNormalized(XQCorrError):
    """A state vector does not have unit norm."""


class NumericalDomain(XQCorrError):
    """A closed-form expression is undefined at this point (negative sqrt/log argument)."""
