from .ledger import DetectionLedger
from .module import DetectionHost, detection_stage
from .oracle import Divergence, ReplayReport, check_compatible, replay
from .rules import (Action, Decision, anomaly_detect, anomaly_status, choose_action, confirm_intrusion,
                    count_anomalous, decide_action, intrusion_reason, should_block)
from .tickets import TicketReason, WarningTicket
from .watchdogs import (TRAILING_WINDOWS, WatchdogFinding, flow_abnormal, flow_detectors, watchdog_co,
                        watchdog_mn, watchdog_zo)

__all__ = ['DetectionLedger', 'DetectionHost', 'detection_stage', 'Divergence', 'ReplayReport', 'replay',
           'check_compatible', 'Action', 'Decision', 'anomaly_detect', 'anomaly_status', 'confirm_intrusion',
           'intrusion_reason', 'count_anomalous', 'choose_action', 'decide_action', 'should_block',
           'TicketReason', 'WarningTicket', 'WatchdogFinding', 'TRAILING_WINDOWS', 'flow_abnormal',
           'flow_detectors', 'watchdog_zo', 'watchdog_mn', 'watchdog_co']
