"""Identifiers and fixed-point energy units."""
from decimal import Decimal
from typing import NewType

NodeId = NewType('NodeId', int)

# Balances and charges are integers in micro-units so conservation holds exactly.
MICRO_PER_UNIT = 1_000_000

Micro = int


def to_micro(value: float) -> Micro:
    """Convert an energy amount in units to micro-units."""
    return int(round(Decimal(repr(value)) * MICRO_PER_UNIT))


def to_units(value: Micro) -> float:
    """Convert micro-units back to units for reporting."""
    return value / MICRO_PER_UNIT


def format_units(value: Micro) -> str:
    """Render micro-units as an exact decimal string."""
    text = format(Decimal(value).scaleb(-6), 'f')

    if '.' in text:
        text = text.rstrip('0').rstrip('.')

    return text
