"""Trace writing."""
from pathlib import Path
from typing import Iterable, Union

from .records import TraceRecord


def write_trace(records: Iterable[TraceRecord], path: Union[str, Path]) -> Path:
    """Write one JSON object per line, newline-terminated."""
    path = Path(path)

    with path.open('w', encoding='UTF-8', newline='\n') as handle:
        for record in records:
            handle.write(record.to_line())
            handle.write('\n')

    return path
