"""Wake-up coin bookkeeping."""
from collections import defaultdict
from typing import DefaultDict, Dict, List, Tuple

from ..base.units import NodeId


class CoinLedger:
    """
    Coins issued by zone owners and unsolicited wake-ups seen by sensing nodes.

    Counts cover the current tumbling window; `roll` starts a new one.
    Coin identities outlive the window so a coin in flight across a rollover stays legitimate.
    """

    def __init__(self) -> None:
        self._issued: DefaultDict[NodeId, List[Tuple[int, float]]] = defaultdict(list)
        self._unsolicited: DefaultDict[NodeId, int] = defaultdict(int)
        self._known: Dict[int, Tuple[NodeId, NodeId]] = {}

    def issue(self, sn: NodeId, coin_id: int, time: float, issuer: NodeId) -> None:
        self._issued[sn].append((coin_id, time))
        self._known[coin_id] = (sn, issuer)

    def is_legitimate(self, sn: NodeId, coin_id: int, issuer: NodeId) -> bool:
        return self._known.get(coin_id) == (sn, issuer)

    def record_unsolicited(self, sn: NodeId) -> None:
        self._unsolicited[sn] += 1

    def issued(self, sn: NodeId) -> Tuple[Tuple[int, float], ...]:
        return tuple(self._issued.get(sn, ()))

    def unsolicited(self, sn: NodeId) -> int:
        return self._unsolicited.get(sn, 0)

    def wake_count(self, sn: NodeId) -> int:
        """cnt(wakeup) within the current window: issued plus unsolicited."""
        return len(self._issued.get(sn, ())) + self._unsolicited.get(sn, 0)

    def roll(self) -> None:
        self._issued.clear()
        self._unsolicited.clear()
