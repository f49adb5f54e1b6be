"""Exception types shared across the package."""


class PlantedMSTError(Exception):
    """Base class for package errors."""


class CapacityError(PlantedMSTError):
    """A requested size exceeds a configured guard (memory or enumeration)."""


class ConvergenceError(PlantedMSTError):
    """An iterative numerical routine failed to reach its tolerance.

    Carries the last observed residual so callers can report how far off
    the iteration was when it gave up.
    """

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual
