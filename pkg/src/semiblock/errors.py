"""Exception types shared across the package."""


class SemiblockError(Exception):
    """Base class for all package errors."""


class SingularMatrixError(SemiblockError):
    """Linear system refused because the matrix is singular to tolerance."""


class EigenSolverError(SemiblockError):
    """Eigenvalue iteration failed to converge."""


class OrbitClassificationError(SemiblockError):
    """Invariant-subspace splitting failed while classifying an orbit."""


class UnsupportedCaseError(SemiblockError):
    """The operation's special-case preconditions do not hold."""


class QuadratureError(SemiblockError):
    """Panel refinement did not reach the requested tolerance.

    Carries the best value computed so far in ``value`` together with the
    panel count and the last refinement difference.
    """

    def __init__(self, message, value=None, panels=0, est_error=float("inf")):
        super().__init__(message)
        self.value = value
        self.panels = panels
        self.est_error = est_error
