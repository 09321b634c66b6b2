"""Trace records."""
from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class RecordKind(str, Enum):

    HEADER = 'header'
    SEND = 'send'
    DELIVER = 'deliver'
    DROP = 'drop'
    ROLE = 'role'
    CLASSIFY = 'classify'
    UNREACHABLE = 'unreachable'
    PARK = 'park'
    POWER = 'power'
    STAMP = 'stamp'
    OBSERVE = 'observe'
    VERDICT = 'verdict'
    DISPOSITION = 'disposition'
    WATCHDOG = 'watchdog'
    DEATH = 'death'
    WINDOW = 'window'
    RECONFIGURE = 'reconfigure'
    DEGRADED = 'degraded'
    DEACTIVATED = 'deactivated'
    INJECT = 'inject'
    NOTE = 'note'
    END = 'end'


class TraceRecord(BaseModel):
    """One line of a run trace; records are totally ordered by (time, seq)."""

    model_config = ConfigDict(extra='forbid', frozen=True)

    time: float
    seq: int = Field(..., ge=0)
    kind: RecordKind
    node: Optional[int] = None
    peer: Optional[int] = None
    message: Optional[str] = None
    msg_id: Optional[int] = None
    pkt_id: Optional[int] = None
    verdict: Optional[str] = None
    reason: Optional[str] = None
    forged: Optional[bool] = None
    data: Optional[Dict[str, Any]] = None

    def to_line(self) -> str:
        return self.model_dump_json(exclude_none=True)


class TraceLog:
    """Append-only record sink that numbers records as they are emitted."""

    def __init__(self) -> None:
        self.records: List[TraceRecord] = []

    def emit(self, time: float, kind: RecordKind, **fields: Any) -> TraceRecord:
        # values come from the kernel itself, skip re-validation
        record = TraceRecord.model_construct(time=float(time), seq=len(self.records), kind=kind, **fields)
        self.records.append(record)

        return record

    def __len__(self) -> int:
        return len(self.records)
