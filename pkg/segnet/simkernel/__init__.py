from .attacker import arrival_times, attacker_step
from .events import Event, EventKind, EventQueue, Timer
from .kernel import Simulation, run
from .metrics import GroundTruth, Metrics, compute_metrics, death_times, write_metrics
from .result import RunResult

__all__ = ['Simulation', 'run', 'RunResult', 'Metrics', 'GroundTruth', 'compute_metrics', 'write_metrics',
           'death_times', 'EventQueue', 'Event', 'EventKind', 'Timer', 'arrival_times', 'attacker_step']
