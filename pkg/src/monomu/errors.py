"""Exception types shared across the package."""


class ParseError(ValueError):
    """Raised on malformed formula text; carries a 1-based line and column."""

    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class ModelError(ValueError):
    """Raised when a model violates its structural invariants."""

    def __init__(self, problems):
        if isinstance(problems, str):
            problems = [problems]
        self.problems = list(problems)
        super().__init__("; ".join(self.problems))


class GuardError(ValueError):
    """Raised when an input exceeds a combinatorial size guard."""
