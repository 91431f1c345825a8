"""Exception types shared across the library."""


class PolyParseError(ValueError):
    """Raised on malformed polynomial text; carries the character position."""

    def __init__(self, message, pos):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class SingularPointError(ValueError):
    """The point is not a usable smooth point of the variety."""


class UncertainRankError(ValueError):
    """A rank decision sits too close to the tolerance to be trusted."""


class NonConvergenceError(RuntimeError):
    """An iterative solver ran out of iterations."""


class IterateLeftTorusError(RuntimeError):
    """A refinement iterate drifted onto a coordinate hyperplane."""


class DegenerateParametrizationError(RuntimeError):
    """Affine sampling rejected almost every draw."""


class InsufficientRegularTrialsError(RuntimeError):
    """Too many covering trials landed on non-regular values."""


class UnsupportedShapeError(ValueError):
    """The (n, k, l) combination is outside the supported samplers."""
