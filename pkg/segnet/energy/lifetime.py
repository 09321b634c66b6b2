"""Network lifetime."""
from ..topology.types import Network


def network_alive_fraction(network: Network) -> float:
    return network.alive_fraction()


def check_deactivation(ratio: float, lifetime_threshold: float) -> bool:
    """The network is deactivated once its alive fraction drops strictly below the threshold."""
    return ratio < lifetime_threshold
