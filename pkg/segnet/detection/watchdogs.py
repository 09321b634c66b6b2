"""Watchdogs over the detection roles themselves."""
from dataclasses import dataclass, field
from typing import Any, Collection, Dict, List, Mapping, Optional, Sequence, Tuple

from ..base.units import NodeId
from ..config.schema import Thresholds

TRAILING_WINDOWS = 4


@dataclass(frozen=True)
class WatchdogFinding:

    kind: str
    subject: NodeId
    reporters: Tuple[NodeId, ...]
    evidence: Dict[str, Any] = field(default_factory=dict)


def watchdog_zo(zo: NodeId, mns_in_range: Sequence[NodeId], false_detections: int,
                thresholds: Thresholds) -> Optional[WatchdogFinding]:
    """A ZO whose un-ticketed suspected packets exceed the threshold is reported by the MNs hearing it."""
    if false_detections <= thresholds.false_detection_threshold or not mns_in_range:
        return None

    return WatchdogFinding('zo', zo, tuple(sorted(mns_in_range)), {
        'false_detections': false_detections,
        'threshold': thresholds.false_detection_threshold,
    })


def watchdog_mn(mns: Sequence[NodeId], reporting: Collection[NodeId], uncorroborated: Mapping[NodeId, int],
                thresholds: Thresholds) -> List[WatchdogFinding]:
    """
    Name the MNs to block once the warning ticket rate is exceeded.

    Only an MN whose tickets went uncorroborated for more than `false_detection_threshold`
    packets is a culprit.
    """
    if not mns:
        return []

    rate = len(set(reporting) & set(mns)) / len(mns)

    if rate <= thresholds.ticket_rate_threshold:
        return []

    return [
        WatchdogFinding('mn', mn, (mn,), {'ticket_rate': rate, 'uncorroborated': uncorroborated[mn],
                                          'threshold': thresholds.false_detection_threshold})
        for mn in sorted(mns) if uncorroborated.get(mn, 0) > thresholds.false_detection_threshold
    ]


def flow_abnormal(history: Sequence[int], volume: int, flow_factor: float) -> bool:
    previous = history[-TRAILING_WINDOWS:]

    if not previous:
        return False

    mean = sum(previous) / len(previous)

    return mean > 0 and volume > flow_factor * mean


def flow_detectors(volumes: Mapping[NodeId, Tuple[Sequence[int], int]], thresholds: Thresholds) -> List[NodeId]:
    return [mn for mn in sorted(volumes) if flow_abnormal(volumes[mn][0], volumes[mn][1], thresholds.flow_factor)]


def watchdog_co(co: NodeId, volumes: Mapping[NodeId, Tuple[Sequence[int], int]],
                thresholds: Thresholds) -> Optional[WatchdogFinding]:
    """Abnormal CO forward volume, acted upon only when more than one MN sees it."""
    detectors = flow_detectors(volumes, thresholds)

    if len(detectors) <= 1:
        return None

    return WatchdogFinding('co', co, tuple(detectors), {
        'volumes': {str(mn): volumes[mn][1] for mn in detectors},
        'flow_factor': thresholds.flow_factor,
    })
