from .ledger import PER_EVENT, Activity, Charge, EnergyLedger
from .lifetime import check_deactivation, network_alive_fraction

__all__ = ['Activity', 'Charge', 'EnergyLedger', 'PER_EVENT', 'network_alive_fraction', 'check_deactivation']
