"""Run metrics."""
import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, Union

from ..base.units import Micro, NodeId, format_units
from ..tracing.records import RecordKind, TraceRecord

SCALARS = ('detection_rate', 'false_positive_rate', 'packets_generated', 'packets_delivered',
           'packets_dropped_fake', 'packets_dropped_erroneous', 'packet_overhead', 'warning_tickets',
           'observed_nodes', 'blocked_nodes', 'dead_nodes', 'network_lifetime')

METRICS_FILE = 'metrics.csv'
ENERGY_FILE = 'energy.csv'


@dataclass(frozen=True)
class GroundTruth:

    nodes: Tuple[NodeId, ...]
    gn: NodeId
    attacked: FrozenSet[NodeId] = frozenset()
    compromised: FrozenSet[NodeId] = frozenset()

    @property
    def clean(self) -> FrozenSet[NodeId]:
        return frozenset(self.nodes) - self.attacked - self.compromised

    @classmethod
    def from_trace(cls, trace: Sequence[TraceRecord]) -> 'GroundTruth':
        header = next((r for r in trace if r.kind is RecordKind.HEADER), None)

        if header is None or header.data is None:
            raise ValueError('trace holds no header record')

        data = header.data

        return cls(nodes=tuple(data['nodes']), gn=data['gn'], attacked=frozenset(data.get('attacked', ())),
                   compromised=frozenset(data.get('compromised', ())))


@dataclass(frozen=True)
class Metrics:

    detection_rate: float
    false_positive_rate: float
    packets_generated: int
    packets_delivered: int
    packets_dropped_fake: int
    packets_dropped_erroneous: int
    packet_overhead: float
    warning_tickets: int
    observed_nodes: int
    blocked_nodes: int
    dead_nodes: int
    network_lifetime: float
    energy_series: Dict[NodeId, Tuple[Tuple[float, Micro], ...]] = field(default_factory=dict)

    def scalars(self) -> Dict[str, Union[int, float]]:
        return {name: getattr(self, name) for name in SCALARS}


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator else 0.0


def death_times(trace: Sequence[TraceRecord]) -> Dict[NodeId, float]:
    return {r.node: r.time for r in trace if r.kind is RecordKind.DEATH and r.node is not None}


def _energy_series(trace: Sequence[TraceRecord]) -> Dict[NodeId, Tuple[Tuple[float, Micro], ...]]:
    series: Dict[NodeId, List[Tuple[float, Micro]]] = {}

    for record in trace:
        if record.kind not in (RecordKind.WINDOW, RecordKind.END) or not record.data:
            continue

        for node, energy in sorted(record.data.get('energy', {}).items(), key=lambda item: int(item[0])):
            series.setdefault(int(node), []).append((record.time, energy))

    return {node: tuple(samples) for node, samples in sorted(series.items())}


def compute_metrics(trace: Sequence[TraceRecord], ground_truth: Optional[GroundTruth] = None) -> Metrics:
    """Score a complete trace; ground truth defaults to the trace header."""
    truth = ground_truth or GroundTruth.from_trace(trace)

    observed: Set[NodeId] = set()
    blocked: Set[NodeId] = set()
    generated: Set[int] = set()
    delivered: Set[int] = set()
    fake: Set[int] = set()
    erroneous: Set[int] = set()
    control = data = tickets = 0
    lifetime: Optional[float] = None
    end = 0.0

    for record in trace:
        kind = record.kind

        if kind is RecordKind.SEND:
            if record.message == 'DataPacket':
                data += 1

                if record.pkt_id is not None and record.data and record.data.get('origin') == record.node:
                    generated.add(record.pkt_id)

            elif not record.forged:
                control += 1

            if record.message == 'WarningTicket':
                tickets += 1

        elif kind is RecordKind.DELIVER:
            if record.message == 'DataPacket' and record.node == truth.gn and record.pkt_id is not None:
                delivered.add(record.pkt_id)

        elif kind is RecordKind.VERDICT and record.pkt_id is not None:
            if record.verdict == 'DropFake':
                fake.add(record.pkt_id)

            elif record.verdict == 'DropErroneous':
                erroneous.add(record.pkt_id)

        elif kind is RecordKind.DISPOSITION and record.node is not None:
            if record.verdict == 'observed':
                observed.add(record.node)

            elif record.verdict == 'blocked':
                blocked.add(record.node)

        elif kind is RecordKind.DEACTIVATED and lifetime is None:
            lifetime = record.time

        elif kind is RecordKind.END:
            end = record.time

    flagged = observed | blocked

    return Metrics(
        detection_rate=_ratio(len(flagged & truth.attacked), len(truth.attacked)),
        false_positive_rate=_ratio(len(flagged & truth.clean), len(truth.clean)),
        packets_generated=len(generated),
        packets_delivered=len(delivered),
        packets_dropped_fake=len(fake),
        packets_dropped_erroneous=len(erroneous),
        packet_overhead=_ratio(control, data),
        warning_tickets=tickets,
        observed_nodes=len(observed),
        blocked_nodes=len(blocked),
        dead_nodes=len(death_times(trace)),
        network_lifetime=lifetime if lifetime is not None else end,
        energy_series=_energy_series(trace),
    )


def format_value(value: Union[int, float]) -> str:
    return repr(value) if isinstance(value, float) else str(value)


def write_metrics(metrics: Metrics, out_dir: Union[str, Path]) -> Tuple[Path, Path]:
    """Write `metrics.csv` (metric,value) and `energy.csv` (time,node,energy) into `out_dir`."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    metrics_path, energy_path = out_dir / METRICS_FILE, out_dir / ENERGY_FILE

    with metrics_path.open('w', encoding='UTF-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(('metric', 'value'))
        writer.writerows((name, format_value(value)) for name, value in metrics.scalars().items())

    with energy_path.open('w', encoding='UTF-8', newline='') as handle:
        writer = csv.writer(handle, lineterminator='\n')
        writer.writerow(('time', 'node', 'energy'))

        for node, samples in metrics.energy_series.items():
            writer.writerows((format_value(time), node, format_units(energy)) for time, energy in samples)

    return metrics_path, energy_path
