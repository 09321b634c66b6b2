"""Run results."""
from dataclasses import dataclass
from typing import Iterator, List, Optional

from ..config.schema import ScenarioConfig
from ..energy.ledger import EnergyLedger
from ..topology.types import Hierarchy, Network
from ..tracing.records import TraceRecord
from .metrics import Metrics


@dataclass
class RunResult:
    """Self-contained outcome of one simulation; `error` is set when initialization failed."""

    scenario: ScenarioConfig
    seed: int
    detection_enabled: bool
    trace: List[TraceRecord]
    network: Network
    hierarchy: Hierarchy
    energy: EnergyLedger
    metrics: Optional[Metrics] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None

    def trace_lines(self) -> Iterator[str]:
        return (record.to_line() for record in self.trace)
