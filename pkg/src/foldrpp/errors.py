"""Exception hierarchy shared across the toolchain."""


class FoldRppError(Exception):
    """Base class for every error this package raises on purpose."""


class DataError(FoldRppError):
    """Problem with an input file: bad CSV, bad model text, bad schema."""


class MissingColumnError(DataError):
    pass


class RaggedRowError(DataError):
    pass


class SchemaMismatchError(DataError):
    """Model and data disagree about the feature layout."""


class AspSyntaxError(DataError):
    """Malformed rule text; carries the 1-based line/column of the problem."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class StratificationError(FoldRppError):
    """The abnormal-predicate dependency graph is cyclic or has dangling refs."""


class MissingTemplateError(FoldRppError):
    pass
