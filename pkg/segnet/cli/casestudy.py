"""
The worked example of the 14-node deployment, checked step by step against a run trace.

Node labels follow the drawing: N is the gateway, M the cluster owner, G to L its
monitors, E and F the zone owners of A, B and C, D respectively.
"""
import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, Iterable, List, Optional, Sequence

from ..base.exceptions import ConfigurationError
from ..base.units import NodeId
from ..config.schema import ScenarioConfig
from ..simkernel.result import RunResult
from ..tracing.records import RecordKind, TraceRecord

LABELS = 'ABCDEFGHIJKLMN'


class Status(str, Enum):

    PASS = 'PASS'
    FAIL = 'FAIL'
    NOT_REACHED = 'NOT-REACHED'
    NO_ATTACK = 'NO-ATTACK'


@dataclass(frozen=True)
class StepOutcome:

    name: str
    status: Status
    detail: str = ''
    record: Optional[TraceRecord] = None

    def line(self) -> str:
        text = f'{self.status.value:<12} {self.name}'

        if self.detail:
            text += f': {self.detail}'

        if self.record is not None and self.status is Status.FAIL:
            text += f' [{self.record.to_line()}]'

        return text


def _ids(scenario: ScenarioConfig) -> Dict[str, NodeId]:
    try:
        return {label: scenario.node_by_label(label).id for label in LABELS}

    except KeyError as e:
        raise ConfigurationError(f'case-study scenario needs a node labelled {e.args[0]}') from None


def _select(trace: Sequence[TraceRecord], kind: RecordKind,
            where: Callable[[TraceRecord], bool] = lambda r: True) -> List[TraceRecord]:
    return [r for r in trace if r.kind is kind and where(r)]


def _first(records: Iterable[TraceRecord]) -> Optional[TraceRecord]:
    return next(iter(records), None)


def check_narrative(result: RunResult, scenario: ScenarioConfig) -> List[StepOutcome]:
    """
    Walk the expected sequence over the trace of `result`.

    P1 is the first packet of A that a monitor ticketed, P2 the first packet of D that F stamped.
    Without an attacker the attack steps report NO-ATTACK as long as nobody ticketed A.
    """
    ids = _ids(scenario)
    a, d, e, f, g, h, i, j, m, n = (ids[label] for label in 'ADEFGHIJMN')
    trace = result.trace
    outcomes: List[StepOutcome] = []

    tickets_on_a = _select(trace, RecordKind.OBSERVE, lambda r: r.peer == a and r.verdict == 'ticket')

    if scenario.attacker is None:
        status = Status.NO_ATTACK if not tickets_on_a else Status.FAIL
        detail = 'no attacker, no tickets' if not tickets_on_a else 'ticket raised without an attacker'
        record = _first(tickets_on_a)

        for name in ('E stamps P1 suspected', 'G and H ticket P1', 'M drops P1 as fake', 'A observed',
                     'A blocked'):
            outcomes.append(StepOutcome(name, status, detail, record))

    else:
        outcomes.extend(_attack_steps(trace, scenario, tickets_on_a, a, e, g, h, m))

    outcomes.extend(_forward_steps(trace, d, f, i, j, m, n))

    return outcomes


def _attack_steps(trace: Sequence[TraceRecord], scenario: ScenarioConfig, tickets_on_a: List[TraceRecord],
                  a: NodeId, e: NodeId, g: NodeId, h: NodeId, m: NodeId) -> List[StepOutcome]:
    names = ('E stamps P1 suspected', 'G and H ticket P1', 'M drops P1 as fake', 'A observed', 'A blocked')

    if not tickets_on_a:
        return [StepOutcome(name, Status.FAIL, 'no monitor ticketed A') for name in names]

    p1 = tickets_on_a[0].pkt_id
    outcomes = []

    stamp = _first(_select(trace, RecordKind.STAMP, lambda r: r.pkt_id == p1))
    ok = stamp is not None and stamp.node == e and stamp.verdict == '1'
    outcomes.append(StepOutcome(names[0], Status.PASS if ok else Status.FAIL, f'packet {p1}', stamp))

    ticketing = _select(trace, RecordKind.OBSERVE, lambda r: r.pkt_id == p1 and r.verdict == 'ticket')
    issuers = {r.node for r in ticketing}
    ok = issuers == {g, h}
    outcomes.append(StepOutcome(names[1], Status.PASS if ok else Status.FAIL, f'issuers {sorted(issuers)}',
                                _first(ticketing)))

    verdict = _first(_select(trace, RecordKind.VERDICT, lambda r: r.pkt_id == p1))
    ok = verdict is not None and verdict.node == m and verdict.verdict == 'DropFake'
    outcomes.append(StepOutcome(names[2], Status.PASS if ok else Status.FAIL, '', verdict))

    observed = _first(_select(trace, RecordKind.DISPOSITION, lambda r: r.node == a and r.verdict == 'observed'))
    ok = observed is not None and observed.peer == m
    outcomes.append(StepOutcome(names[3], Status.PASS if ok else Status.FAIL, '', observed or verdict))

    blocked = _first(_select(trace, RecordKind.DISPOSITION, lambda r: r.node == a and r.verdict == 'blocked'))

    if blocked is None:
        status = Status.NOT_REACHED if math.isinf(scenario.thresholds.warning_block_threshold) else Status.FAIL
        outcomes.append(StepOutcome(names[4], status, 'warning threshold never exceeded'))

    else:
        ok = blocked.reason == 'warning_threshold' and blocked.peer == m
        outcomes.append(StepOutcome(names[4], Status.PASS if ok else Status.FAIL, f'at t={blocked.time}', blocked))

    return outcomes


def _forward_steps(trace: Sequence[TraceRecord], d: NodeId, f: NodeId, i: NodeId, j: NodeId, m: NodeId,
                   n: NodeId) -> List[StepOutcome]:
    names = ('F stamps P2 normal', 'I and J observe P2', 'M forwards P2', 'P2 delivered to N')
    stamp = _first(_select(trace, RecordKind.STAMP, lambda r: r.peer == d and r.node == f))

    if stamp is None:
        return [StepOutcome(name, Status.FAIL, 'F never stamped a packet of D') for name in names]

    p2 = stamp.pkt_id
    outcomes = [StepOutcome(names[0], Status.PASS if stamp.verdict == '0' else Status.FAIL, f'packet {p2}', stamp)]

    observers = _select(trace, RecordKind.OBSERVE, lambda r: r.pkt_id == p2 and not (r.data or {}).get('flow'))
    nodes = {r.node for r in observers}
    clear = all(r.verdict == 'clear' for r in observers)
    outcomes.append(StepOutcome(names[1], Status.PASS if nodes == {i, j} and clear else Status.FAIL,
                                f'observers {sorted(nodes)}', _first(observers)))

    verdict = _first(_select(trace, RecordKind.VERDICT, lambda r: r.pkt_id == p2))
    ok = verdict is not None and verdict.node == m and verdict.verdict == 'Forward'
    outcomes.append(StepOutcome(names[2], Status.PASS if ok else Status.FAIL, '', verdict))

    delivered = _first(_select(trace, RecordKind.DELIVER,
                               lambda r: r.pkt_id == p2 and r.message == 'DataPacket' and r.node == n))
    outcomes.append(StepOutcome(names[3], Status.PASS if delivered else Status.FAIL,
                                f'at t={delivered.time}' if delivered else 'never delivered', delivered or verdict))

    return outcomes


def failed(outcomes: Iterable[StepOutcome]) -> bool:
    return any(o.status is Status.FAIL for o in outcomes)
