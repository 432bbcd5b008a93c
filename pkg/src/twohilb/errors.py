"""Exception types shared across the package."""


class TwoHilbError(Exception):
    """Base class for all library errors."""


class CompositionError(TwoHilbError):
    """Endpoints of two morphisms (or a functor and its argument) do not match."""


class ValidationError(TwoHilbError):
    """Structural axioms violated beyond tolerance.

    The ``violation`` attribute holds the largest observed deviation when one
    is meaningful for the failed check.
    """

    def __init__(self, message, violation=None):
        super().__init__(message)
        self.violation = violation


class TangleSyntaxError(TwoHilbError):
    """Tangle expression failed to parse; ``position`` is a character offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class TangleTypeError(TwoHilbError):
    """Tangle expression is syntactically valid but boundary words do not match."""
