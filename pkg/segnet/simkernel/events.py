"""Event queue."""
import heapq
import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List, Optional

from ..base.units import NodeId


class EventKind(str, Enum):

    MESSAGE_DELIVERY = 'MessageDelivery'
    TIMER_EXPIRY = 'TimerExpiry'
    DUTY_CYCLE_BOUNDARY = 'DutyCycleBoundary'
    RECONFIGURE_TRIGGER = 'ReconfigureTrigger'
    ATTACKER_ACTION = 'AttackerAction'
    WINDOW_ROLLOVER = 'WindowRollover'


@dataclass(frozen=True, order=True)
class Event:

    time: float
    seq: int
    kind: EventKind = field(compare=False)
    payload: Any = field(compare=False, default=None)


@dataclass(frozen=True)
class Timer:
    """Payload of a TimerExpiry: what the timer is for and whose it is."""

    purpose: str
    node: Optional[NodeId] = None
    data: Dict[str, Any] = field(default_factory=dict)


class EventQueue:
    """Min-heap of events popped in (time, seq) order; seq is insertion order."""

    def __init__(self) -> None:
        self._heap: List[Event] = []
        self._seq = itertools.count()

    def push(self, time: float, kind: EventKind, payload: Any = None) -> Event:
        event = Event(time, next(self._seq), kind, payload)
        heapq.heappush(self._heap, event)

        return event

    def pop(self) -> Event:
        return heapq.heappop(self._heap)

    def peek(self) -> Optional[Event]:
        return self._heap[0] if self._heap else None

    def drain(self) -> Iterator[Event]:
        while self._heap:
            yield heapq.heappop(self._heap)

    def __len__(self) -> int:
        return len(self._heap)

    def __bool__(self) -> bool:
        return bool(self._heap)
