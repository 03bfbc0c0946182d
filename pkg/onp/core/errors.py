"""Exception hierarchy shared by the library and the CLI."""
from typing import Optional, Tuple


class OnpError(Exception):
    """Base class for all library errors; `exit_code` is used by the CLI."""

    exit_code = 1

    def __init__(self, message: str):
        self.message = message
        super().__init__(message)


class MalformedInputError(OnpError, ValueError):
    """Input violates a representation invariant (digit >= p, non-prime p, ...)."""

    exit_code = 2


class ExpressionSyntaxError(OnpError, ValueError):
    """Expression text does not conform to the grammar."""

    exit_code = 2

    def __init__(self, message: str, position: Optional[Tuple[int, int]] = None, source: str = ""):
        self.position = position
        self.source = source
        super().__init__(message)

    def describe(self) -> str:
        """Render the message with a caret line under the offending span."""
        if self.position is None or not self.source:
            return self.message
        start, end = self.position
        highlight = " " * start + "^" * max(1, end - start)
        return f"{self.message}:\n  {self.source}\n  {highlight}"


class OutOfRangeError(OnpError, ValueError):
    """Value is at or above the first transcendental [w^w^w]."""

    exit_code = 3


class ResourceLimitError(OnpError, RuntimeError):
    """A configured search or iteration cap was exceeded."""

    exit_code = 4


class ZeroElementError(OnpError, ZeroDivisionError):
    """Operation undefined at zero (multiplicative order, inverse)."""

    exit_code = 2
