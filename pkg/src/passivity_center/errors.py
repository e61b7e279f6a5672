"""Exception hierarchy shared by all modules."""


class PassivityError(Exception):
    """Base class for every error raised by this package."""


class ShapeError(PassivityError, ValueError):
    """Inconsistent or non-square matrix dimensions."""


class NotPSDError(PassivityError):
    """A matrix expected to be positive semidefinite is not."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class NotPDError(NotPSDError):
    """A matrix expected to be positive definite is not."""


class SingularOperatorError(PassivityError):
    """A linear operator on the Hermitian space is numerically singular."""

    def __init__(self, message, cond=None):
        super().__init__(message)
        self.cond = cond


class SingularHessianError(SingularOperatorError):
    """The Newton system for the barrier could not be solved."""


class R0SingularError(PassivityError):
    """The lower-right block R0 of the LMI is singular, so F and P do not exist."""


class BoundaryError(PassivityError):
    """X is not strictly feasible for the LMI (W(X) is not positive definite)."""

    def __init__(self, message, min_eig=None):
        super().__init__(message)
        self.min_eig = min_eig


class PoleError(PassivityError):
    """A resolvent was evaluated at an eigenvalue of A."""


class BoundarySpectrumError(PassivityError):
    """Hamiltonian/symplectic spectrum touches the imaginary axis/unit circle."""


class SubspaceError(PassivityError):
    """The stable invariant subspace basis is too ill-conditioned to recover X."""


class XiTooLargeError(PassivityError):
    """The shifted model used for initialization is no longer strictly passive."""


class NotStrictlyPassiveError(PassivityError):
    """No strictly feasible starting point exists for the model."""


class DegenerateDirectionError(PassivityError):
    """A line search was requested along a direction with zero curvature."""


class InvalidScalarModelError(PassivityError, ValueError):
    """Scalar closed forms requested for a model violating passivity conditions."""


class TransformPoleError(PassivityError):
    """The bilinear transform is undefined because I - A is singular."""


class ModelFileError(PassivityError, ValueError):
    """A model file does not conform to the schema."""

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field
