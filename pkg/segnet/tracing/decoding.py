"""Trace decoding."""
import json
from pathlib import Path
from typing import Iterable, Iterator, List, Union

from pydantic import ValidationError

from ..base.exceptions import TraceError
from .base import DecodingError, MalformedRecord, SchemaMismatch, TruncatedRecord
from .records import TraceRecord


def decode_record(text: str, line: int) -> Union[TraceRecord, DecodingError]:
    try:
        data = json.loads(text)

    except json.JSONDecodeError:
        return DecodingError(MalformedRecord(line))

    if not isinstance(data, dict):
        return DecodingError(MalformedRecord(line))

    try:
        return TraceRecord.model_validate(data)

    except ValidationError as e:
        return DecodingError(reason=SchemaMismatch(line, exception=e))


def decode_lines(text: str) -> Iterator[Union[TraceRecord, DecodingError]]:
    """
    Decode a JSON-lines trace record by record.

    A final line that lacks its newline and does not decode is reported as truncated.
    """
    lines = text.split('\n')
    complete = text.endswith('\n') or not text

    for number, raw in enumerate(lines, start=1):
        if not raw.strip():
            continue

        decoded = decode_record(raw, number)

        if isinstance(decoded, DecodingError) and number == len(lines) and not complete:
            yield DecodingError(TruncatedRecord(number))

        else:
            yield decoded


def collect(decoded: Iterable[Union[TraceRecord, DecodingError]]) -> List[TraceRecord]:
    records = []

    for item in decoded:
        if isinstance(item, DecodingError):
            raise TraceError(str(item))

        records.append(item)

    return records


def read_trace(path: Union[str, Path]) -> List[TraceRecord]:
    """
    Read a trace file written by `write_trace`.

    :raises: TraceError on the first record that does not decode
    """
    try:
        text = Path(path).read_text(encoding='UTF-8')

    except OSError as e:
        raise TraceError(f'{path}: {e.strerror}') from None

    try:
        return collect(decode_lines(text))

    except TraceError as e:
        raise TraceError(f'{path}: {e}') from None
