"""Exception hierarchy shared across the package."""


class PropSearchError(Exception):
    """Base class for all errors raised by this package."""


class FormatError(PropSearchError):
    """A text input does not conform to its declared format."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class DimensionMismatchError(PropSearchError):
    """Two vectors of different lengths were combined."""


class ParseError(PropSearchError):
    """A metadata record could not be parsed."""

    def __init__(self, message, record=None):
        if record is not None:
            message = f"record {record}: {message}"
        super().__init__(message)
        self.record = record


class ValidationError(PropSearchError):
    """Parsed data violates a cross-file consistency requirement."""


class BuildError(PropSearchError):
    """Index construction was attempted with unusable inputs."""


class ScopeError(PropSearchError):
    """A candidate scope references ids missing from the index, or is empty."""


class IndexFormatError(PropSearchError):
    """A persisted index stream has the wrong magic or version."""


class IndexCorruptionError(PropSearchError):
    """A persisted index stream is truncated or fails its checksum."""

    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte offset {offset})"
        super().__init__(message)
        self.offset = offset
