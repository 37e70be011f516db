"""Exception hierarchy shared across the toolkit.

Exit-code mapping used by the CLI: ValidationError -> 1, NumericError -> 2,
I/O failures (OSError) -> 3.
"""


class RlevalError(Exception):
    """Base class for all toolkit errors."""


class ValidationError(RlevalError):
    """Input violates a documented precondition or schema constraint."""


class ConfigSyntaxError(ValidationError):
    """Config document is not well formed. Carries a document position."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"{message} (line {line}, column {column})"
        super().__init__(message)


class SchemaError(ValidationError):
    """Config document violates the schema. Names the offending key."""

    def __init__(self, key, message):
        self.key = key
        super().__init__(f"{key}: {message}")


class DuplicateKeyError(ConfigSyntaxError):
    """The same mapping key appears twice in one document."""


class DataError(ValidationError):
    """A run-log stream is malformed or internally inconsistent."""


class NumericError(RlevalError):
    """A numeric routine was asked to operate outside its valid domain."""


class ConfigWarning(UserWarning):
    """Non-fatal config issue, e.g. unknown keys preserved during parsing."""
