"""Shared exception types."""


class StructuralError(ValueError):
    """Inputs violate a structural precondition (dimensions, signs, ranks)."""


class FormatError(ValueError):
    """A textual input file is malformed; carries a line number when known."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
