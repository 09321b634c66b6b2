from .casestudy import Status, StepOutcome, check_narrative
from .logging_ import configure_logging
from .main import main
from .sweep import parse_seeds, parse_vary, run_sweep

__all__ = ['main', 'configure_logging', 'check_narrative', 'StepOutcome', 'Status', 'run_sweep', 'parse_seeds',
           'parse_vary']
