"""Duty-cycle schedule."""
from typing import Iterator, Tuple

from ..topology.types import SleepSchedule


def _offset(schedule: SleepSchedule, t: float) -> float:
    return (t - schedule.sleep_start) % schedule.period


def in_sleep_window(schedule: SleepSchedule, t: float) -> bool:
    """True iff `t mod period` lies in the closed window `[sleep_start, sleep_end]`."""
    return _offset(schedule, t) <= schedule.sleep_end - schedule.sleep_start


def scheduled_asleep(schedule: SleepSchedule, t: float) -> bool:
    """Power-state view of the same window, half-open: the node wakes at `sleep_end`."""
    return _offset(schedule, t) < schedule.sleep_end - schedule.sleep_start


def boundaries(schedule: SleepSchedule, until: float) -> Iterator[Tuple[float, bool]]:
    """
    Yield `(time, asleep)` duty-cycle transitions in `[0, until)`.

    `asleep` is True at the start of a sleep window, False when it ends.
    """
    cycle = 0

    while True:
        base = cycle * schedule.period
        start, end = base + schedule.sleep_start, base + schedule.sleep_end

        if start >= until:
            return

        yield start, True

        if end < until:
            yield end, False

        cycle += 1
