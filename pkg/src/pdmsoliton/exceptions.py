"""Exception types raised by pdmsoliton."""


class GridMismatchError(ValueError):
    """Two fields that must share a grid do not."""


class NodeError(ValueError):
    """A function expected to be nodeless changes sign.

    Attributes
    ----------
    location : float
        Abscissa of the first detected sign change.
    """

    def __init__(self, message, location):
        super().__init__(message)
        self.location = location


class NormalizationError(ValueError):
    """A state that should be square integrable is not."""


class NumericalGuardError(RuntimeError):
    """Time stepping left its stability region or blew up."""
