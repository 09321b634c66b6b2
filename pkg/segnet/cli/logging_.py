"""Diagnostic logging on standard error."""
import logging
import os
import sys
from typing import Optional

ENV_VAR = 'SEGNET_LOG'

LEVELS = {
    'error': logging.ERROR,
    'info': logging.INFO,
    'debug': logging.DEBUG,
}

_HANDLER_NAME = 'segnet-stderr'


def configure_logging(level: Optional[str] = None) -> logging.Logger:
    """Install one stderr handler on the `segnet` logger at the level named by `level` or `SEGNET_LOG`."""
    name = (level if level is not None else os.environ.get(ENV_VAR, 'error')).strip().lower()
    logger = logging.getLogger('segnet')
    logger.setLevel(LEVELS.get(name, logging.ERROR))
    logger.propagate = False

    for handler in list(logger.handlers):
        if handler.get_name() == _HANDLER_NAME:
            logger.removeHandler(handler)

    handler = logging.StreamHandler(sys.stderr)
    handler.set_name(_HANDLER_NAME)
    handler.setFormatter(logging.Formatter('%(levelname)s %(name)s: %(message)s'))
    logger.addHandler(handler)

    if name not in LEVELS:
        logger.error('unknown %s value %r, using error', ENV_VAR, name)

    return logger
