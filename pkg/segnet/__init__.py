from .base import ConfigurationError, ElectionError, ProtocolError, ReplayMismatchError, SegnetError, TraceError
from .config import ScenarioConfig, load_fixture, load_scenario
from .detection import replay
from .simkernel import RunResult, run

__all__ = ['ScenarioConfig', 'load_scenario', 'load_fixture', 'run', 'RunResult', 'replay', 'SegnetError',
           'ConfigurationError', 'ElectionError', 'ProtocolError', 'TraceError', 'ReplayMismatchError']
