"""Pre-loaded detection module."""
import logging
from typing import Any, Callable, Dict, Protocol, Tuple

import wrapt

from ..base.units import NodeId

LOGGER = logging.getLogger(__name__)


class DetectionHost(Protocol):

    def detection_active(self, node: NodeId) -> bool:
        ...

    def charge_detection(self, node: NodeId) -> None:
        ...


def _evaluating_node(args: Tuple[Any, ...], kwargs: Dict[str, Any]) -> NodeId:
    if 'node' in kwargs:
        return kwargs['node']  # type: ignore[no-any-return]

    return args[0]  # type: ignore[no-any-return]


@wrapt.decorator
def detection_stage(wrapped: Callable[..., Any], instance: DetectionHost, args: Tuple[Any, ...],
                    kwargs: Dict[str, Any]) -> Any:
    """
    Run a detection evaluation on the node given as first argument.

    The stage is skipped, returning None, while that node's module is disabled;
    otherwise the node pays one detection charge.
    """
    node = _evaluating_node(args, kwargs)

    if not instance.detection_active(node):
        LOGGER.debug('%s skipped on node %s', wrapped.__name__, node)
        return None

    instance.charge_detection(node)

    return wrapped(*args, **kwargs)
