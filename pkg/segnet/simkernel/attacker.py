"""Sleep-deprivation attacker."""
import logging
import random
from typing import Callable, List, Sequence, Tuple

from ..base.units import NodeId
from ..config.schema import Arrivals, AttackerModel
from ..protocol.messages import WakeUpCoin
from ..topology.types import Network

LOGGER = logging.getLogger(__name__)


def active_until(model: AttackerModel, duration: float) -> float:
    return duration if model.stop is None else min(model.stop, duration)


def in_active_window(model: AttackerModel, t: float, duration: float) -> bool:
    return model.start <= t < active_until(model, duration)


def arrival_times(model: AttackerModel, duration: float, seed: int) -> List[Tuple[float, NodeId]]:
    """
    Injection instants per target, ordered by (time, target).

    Periodic arrivals sit at exact multiples of 1/rate from `start`; poisson arrivals draw
    exponential gaps from a generator seeded apart from the simulation's own.
    """
    stop = active_until(model, duration)
    arrivals: List[Tuple[float, NodeId]] = []

    if model.arrivals is Arrivals.PERIODIC:
        for target in sorted(set(model.targets)):
            index = 0

            while (t := model.start + index / model.rate) < stop:
                arrivals.append((t, target))
                index += 1

    else:
        rng = random.Random(f'attacker-{seed}')

        for target in sorted(set(model.targets)):
            t = model.start

            while (t := t + rng.expovariate(model.rate)) < stop:
                arrivals.append((t, target))

    return sorted(arrivals)


def attacker_step(model: AttackerModel, network: Network, t: float, targets: Sequence[NodeId],
                  new_msg_id: Callable[[], int], duration: float) -> Tuple[List[WakeUpCoin], List[NodeId]]:
    """
    Forge one wake-up coin per live target.

    :returns: (coins to inject, targets skipped because dead or not deployed)
    """
    if not in_active_window(model, t, duration):
        return [], []

    coins, skipped = [], []

    for target in targets:
        if target not in network or not network[target].alive:
            skipped.append(target)
            continue

        msg_id = new_msg_id()
        coins.append(WakeUpCoin(msg_id=msg_id, src=model.node_id, dst=target, sent_at=t, coin_id=msg_id,
                                issuer=model.node_id, forged=True))

    if skipped:
        LOGGER.debug('attacker skipped targets %s at %s', skipped, t)

    return coins, skipped
