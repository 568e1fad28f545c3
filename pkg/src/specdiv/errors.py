"""Error types shared across the package."""


class SpecdivError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(SpecdivError, ValueError):
    """Matrix shape does not fit the requested operation."""


class ParseError(SpecdivError, ValueError):
    """A polynomial or session literal failed to parse."""

    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at column {position + 1})"
        super().__init__(message)


class UnsupportedBaseError(SpecdivError, ValueError):
    """The base chart does not support the requested operation."""


class DegreeUndefinedError(SpecdivError, ValueError):
    """A divisor degree was requested for a non-Artinian quotient."""


class RankError(SpecdivError, ValueError):
    """A module is not free of the expected rank over the base chart."""


class CoverMismatchError(SpecdivError, ValueError):
    """Data is incompatible with the cover it was paired with."""


class InvolutionError(SpecdivError, ValueError):
    """The sign involution is undefined on this cover."""


class CharacteristicError(SpecdivError, ValueError):
    """The field characteristic obstructs the requested division."""
