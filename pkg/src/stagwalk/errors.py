"""Exception types shared across the package."""


class StagwalkError(Exception):
    """Base class for library-specific failures."""


class ProportionalityError(StagwalkError):
    """A clique block is not a scalar multiple of the reference clique state.

    Carries the offending residual norm and, when known, the pair of
    tessellation indices that disagree.
    """

    def __init__(self, message, residual, tessellations=None):
        super().__init__(message)
        self.residual = residual
        self.tessellations = tessellations


class NumericalDriftError(StagwalkError):
    """State norm drifted beyond tolerance during evolution."""

    def __init__(self, message, drift):
        super().__init__(message)
        self.drift = drift


class InternalInconsistencyError(StagwalkError):
    """A result failed its own self-check; indicates a bug or inconsistent input."""
