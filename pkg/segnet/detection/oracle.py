"""Standalone re-evaluation of recorded detection verdicts."""
import logging
from dataclasses import dataclass, field
from typing import Any, Iterable, List, Optional, Sequence

from ..base.exceptions import ReplayMismatchError
from ..config.schema import BandMode, ScenarioConfig
from ..tracing.records import RecordKind, TraceRecord
from ..topology.types import SleepSchedule
from .rules import anomaly_status, choose_action, intrusion_reason, should_block

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class Divergence:

    seq: int
    time: float
    kind: str
    node: Optional[int]
    expected: Any
    recorded: Any

    def __str__(self) -> str:
        return (f'seq {self.seq} t={self.time} {self.kind} at node {self.node}: '
                f'expected {self.expected!r}, recorded {self.recorded!r}')


@dataclass
class ReplayReport:

    checked: int = 0
    skipped: int = 0
    divergences: List[Divergence] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.divergences


def _header(records: Sequence[TraceRecord]) -> Optional[TraceRecord]:
    return next((r for r in records if r.kind is RecordKind.HEADER), None)


def check_compatible(header: TraceRecord, scenario: ScenarioConfig) -> None:
    """
    :raises: ReplayMismatchError when the trace was not produced from `scenario`
    """
    data = header.data or {}
    nodes = sorted(data.get('nodes', ()))
    expected = sorted(node.id for node in scenario.nodes)

    if nodes != expected:
        raise ReplayMismatchError(f'trace node set {nodes} differs from scenario node set {expected}')

    if data.get('scenario_seed') != scenario.sim.seed:
        raise ReplayMismatchError(f'trace scenario seed {data.get("scenario_seed")} differs from '
                                  f'scenario seed {scenario.sim.seed}')


def replay(records: Iterable[TraceRecord], scenario: ScenarioConfig) -> ReplayReport:
    """
    Recompute every ZO stamp, MN confirmation, CO verdict and threshold block from its recorded inputs.

    Verdicts of nodes the scenario declares compromised are skipped.

    :raises: ReplayMismatchError
    """
    records = list(records)
    report = ReplayReport()
    header = _header(records)

    if header is None:
        LOGGER.warning('trace holds no header record, nothing to replay')
        return report

    check_compatible(header, scenario)

    thresholds = scenario.thresholds
    duty = scenario.duty_cycle
    schedule = SleepSchedule(sleep_start=duty.sleep_start, sleep_end=duty.sleep_end, period=duty.period)
    band_mode = BandMode((header.data or {}).get('band_mode', scenario.band_mode.value))
    compromised = {node.id for node in scenario.nodes if node.compromised is not None}

    def diverge(record: TraceRecord, expected: Any, recorded: Any) -> None:
        report.checked += 1

        if expected != recorded:
            report.divergences.append(Divergence(record.seq, record.time, record.kind.value, record.node,
                                                 expected, recorded))

    for record in records:
        data = record.data or {}

        if record.kind not in (RecordKind.STAMP, RecordKind.OBSERVE, RecordKind.VERDICT, RecordKind.DISPOSITION):
            continue

        if record.kind is RecordKind.OBSERVE and data.get('flow'):
            continue

        if record.kind is RecordKind.DISPOSITION and record.reason != 'warning_threshold':
            continue

        decider = record.peer if record.kind is RecordKind.DISPOSITION else record.node

        if decider in compromised:
            report.skipped += 1
            continue

        if record.kind is RecordKind.STAMP:
            status = anomaly_status(schedule if data.get('known') else None, data['t1'], data['wake_count'],
                                    thresholds.th_token)
            diverge(record, str(status), record.verdict)

        elif record.kind is RecordKind.OBSERVE:
            reason = intrusion_reason(data['count'], data['residual'], thresholds, band_mode)
            diverge(record, None if reason is None else reason.value, record.reason)

        elif record.kind is RecordKind.VERDICT:
            diverge(record, choose_action(data.get('status'), data.get('issuers', ())).value, record.verdict)

        else:
            diverge(record, should_block(data['count'], thresholds), record.verdict == 'blocked')

    if report.divergences:
        LOGGER.info('replay found %d divergences over %d verdicts', len(report.divergences), report.checked)

    return report
