from .exceptions import (ConfigurationError, ElectionError, ProtocolError,
                         ReplayMismatchError, SegnetError, TraceError)
from .units import MICRO_PER_UNIT, Micro, NodeId, format_units, to_micro, to_units

__all__ = ['SegnetError', 'ConfigurationError', 'ElectionError', 'ProtocolError', 'TraceError',
           'ReplayMismatchError', 'NodeId', 'Micro', 'MICRO_PER_UNIT', 'to_micro', 'to_units', 'format_units']
