"""Trace decoding failures."""
from typing import Any, Optional, Union


class RecordFailure(Exception):
    """A trace line that could not be turned into a record; failures compare by kind and line."""

    def __init__(self, line: int) -> None:
        self.__line = line

    def __eq__(self, x: Any) -> bool:
        return type(x) is type(self) and self.line == x.line

    def __str__(self) -> str:
        return f'<{type(self).__name__} line={self.line}>'

    @property
    def line(self) -> int:
        return self.__line


class MalformedRecord(RecordFailure):
    """Not a JSON object."""


class TruncatedRecord(RecordFailure):
    """Last line cut short before its newline."""


class SchemaMismatch(RecordFailure):
    def __init__(self, line: int, exception: Optional[Exception] = None) -> None:
        super().__init__(line)
        self.exception = exception


FailureReason = Union[MalformedRecord, TruncatedRecord, SchemaMismatch]


class DecodingError(Exception):
    def __init__(self, reason: FailureReason) -> None:
        self.__reason = reason

    def __eq__(self, x: Any) -> bool:
        if isinstance(x, DecodingError):
            return self.reason == x.reason
        else:
            return False

    def __str__(self) -> str:
        return f'<DecodingError reason={self.reason}>'

    @property
    def reason(self) -> FailureReason:
        return self.__reason
