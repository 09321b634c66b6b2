"""Exceptions."""


class SegnetError(Exception):
    ...


class ConfigurationError(SegnetError):
    ...


class ElectionError(SegnetError):
    ...


class ProtocolError(SegnetError):
    ...


class TraceError(SegnetError):
    ...


class ReplayMismatchError(SegnetError):
    ...
