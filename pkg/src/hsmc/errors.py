class ParseError(ValueError):
    """Malformed input text. `where` is a 1-based line or character position."""

    def __init__(self, message, where=None):
        self.where = where
        if where is not None:
            message = f"{message} (at {where})"
        super().__init__(message)


class InvariantViolation(RuntimeError):
    pass
