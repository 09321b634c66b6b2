from .flows import (Transport, handle_new_node_mid_cycle, issue_query, next_hop, relay_query,
                    route_packet, send_wakeup, sense, wake_zone)
from .ledger import CoinLedger
from .messages import (Ack, BlockNotice, DataPacket, EnergyQuery, EnergyReport, Hello, Message, Overhear,
                       Packet, SensingQuery, SleepSignal, WakeUpCoin, WarningTicketMessage)
from .schedule import boundaries, in_sleep_window, scheduled_asleep

__all__ = ['Message', 'Hello', 'Ack', 'EnergyQuery', 'EnergyReport', 'SensingQuery', 'WakeUpCoin', 'DataPacket',
           'WarningTicketMessage', 'SleepSignal', 'BlockNotice', 'Overhear', 'Packet', 'CoinLedger',
           'in_sleep_window', 'scheduled_asleep', 'boundaries', 'Transport', 'next_hop', 'issue_query', 'relay_query',
           'send_wakeup', 'wake_zone', 'sense', 'route_packet', 'handle_new_node_mid_cycle']
