"""Sliding-window detection bookkeeping."""
from collections import defaultdict, deque
from typing import DefaultDict, Deque, Dict, FrozenSet, List, Set, Tuple

from ..base.units import NodeId
from .tickets import WarningTicket


class DetectionLedger:
    """
    Counters the detection stages and watchdogs read.

    Every windowed counter covers `(now - t_interval, now]`. Entries are only ever forgotten,
    so dropping old ones cannot raise a count. Flow volumes are per closed window instead.
    """

    def __init__(self, t_interval: float) -> None:
        self.t_interval = t_interval
        self._observations: DefaultDict[Tuple[NodeId, NodeId], Deque[float]] = defaultdict(deque)
        self._warnings: DefaultDict[NodeId, Deque[Tuple[float, NodeId, int]]] = defaultdict(deque)
        self._issuers: DefaultDict[int, Set[NodeId]] = defaultdict(set)
        self._issued: DefaultDict[NodeId, Deque[Tuple[float, int]]] = defaultdict(deque)
        self._false_detections: DefaultDict[NodeId, Deque[float]] = defaultdict(deque)
        self._flow_current: DefaultDict[Tuple[NodeId, NodeId], int] = defaultdict(int)
        self._flow_history: DefaultDict[Tuple[NodeId, NodeId], List[int]] = defaultdict(list)

    def _cutoff(self, now: float) -> float:
        return now - self.t_interval

    def _forget_times(self, entries: Deque[float], now: float) -> Deque[float]:
        cutoff = self._cutoff(now)

        while entries and entries[0] <= cutoff:
            entries.popleft()

        return entries

    def _forget_tuples(self, entries: Deque, now: float) -> Deque:  # type: ignore[type-arg]
        cutoff = self._cutoff(now)

        while entries and entries[0][0] <= cutoff:
            entries.popleft()

        return entries

    # MN side

    def record_observation(self, mn: NodeId, origin: NodeId, time: float) -> None:
        self._observations[(mn, origin)].append(time)

    def observed_count(self, mn: NodeId, origin: NodeId, now: float) -> int:
        """count(p_i from N_i) as seen by one monitor node."""
        return len(self._forget_times(self._observations[(mn, origin)], now))

    def record_flow(self, mn: NodeId, co: NodeId) -> None:
        self._flow_current[(mn, co)] += 1

    # CO side

    def record_ticket(self, ticket: WarningTicket, time: float) -> None:
        if ticket.subject_packet is None:
            raise ValueError('only per-packet tickets count towards warnings')

        self._warnings[ticket.subject_node].append((time, ticket.issuer, ticket.subject_packet))
        self._issuers[ticket.subject_packet].add(ticket.issuer)
        self._issued[ticket.issuer].append((time, ticket.subject_packet))

    def warning_count(self, origin: NodeId, now: float) -> int:
        """cnt(Warning) for a node within the window."""
        return len(self._forget_tuples(self._warnings[origin], now))

    def issuers(self, pkt_id: int) -> FrozenSet[NodeId]:
        return frozenset(self._issuers.get(pkt_id, ()))

    def reporting_mns(self, now: float) -> FrozenSet[NodeId]:
        return frozenset(mn for mn in sorted(self._issued) if self._forget_tuples(self._issued[mn], now))

    def uncorroborated(self, mn: NodeId, now: float) -> int:
        """Packets ticketed by `mn` in the window that no second monitor ticketed."""
        return sum(1 for _, pkt_id in self._forget_tuples(self._issued[mn], now)
                   if self._issuers[pkt_id] == {mn})

    def record_false_detection(self, zo: NodeId, time: float) -> None:
        self._false_detections[zo].append(time)

    def false_detections(self, zo: NodeId, now: float) -> int:
        return len(self._forget_times(self._false_detections[zo], now))

    def flow_volumes(self, co: NodeId) -> Dict[NodeId, Tuple[Tuple[int, ...], int]]:
        """(previous window volumes, current volume) per observing MN."""
        keys = sorted(set(self._flow_current) | set(self._flow_history))

        return {mn: (tuple(self._flow_history.get((mn, c), ())), self._flow_current.get((mn, c), 0))
                for mn, c in keys if c == co}

    def close_window(self) -> None:
        for key in sorted(set(self._flow_current) | set(self._flow_history)):
            self._flow_history[key].append(self._flow_current.get(key, 0))

        self._flow_current.clear()
