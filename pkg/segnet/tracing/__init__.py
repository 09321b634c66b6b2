from .base import DecodingError, FailureReason, MalformedRecord, RecordFailure, SchemaMismatch, TruncatedRecord
from .decoding import collect, decode_lines, decode_record, read_trace
from .records import RecordKind, TraceLog, TraceRecord
from .writer import write_trace

__all__ = ['RecordKind', 'TraceRecord', 'TraceLog', 'DecodingError', 'FailureReason', 'RecordFailure',
           'MalformedRecord', 'TruncatedRecord', 'SchemaMismatch', 'decode_record', 'decode_lines', 'collect',
           'read_trace', 'write_trace']
