"""Exception types. Each one names the stage that failed."""


class CendError(Exception):
    """Base class for engine failures."""


class NoSolution(CendError):
    """A linear system that should be solvable was not."""


class MissingTableEntry(CendError):
    """A bimodule table does not cover a required (key, n) pair."""


class ClosureDiverged(CendError):
    """Orbit closure did not stabilise within the iteration cap."""


class NotSemisimple(CendError):
    """L_1 is not diagonalisable with non-negative integer eigenvalues."""


class NormalizationFailed(CendError):
    """R_k still acts nontrivially on the normalised phi_1 for some k >= 2."""


class NotACocycle(CendError):
    """The input 2-cochain failed the cocycle check."""

    def __init__(self, message: str, violation: dict | None = None):
        super().__init__(message)
        self.violation = violation


class Unbounded(CendError):
    """No locality bound can be certified from the constructor data."""


class NotClosed(CendError):
    """The splitting embedding is not closed under n-products."""
