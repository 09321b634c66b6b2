from .deployment import (deploy, discover_neighbors, form_cluster, gateway_of, infer_category,
                         initial_energy, make_node, reachable)
from .election import (ElectionParameters, classify_nodes, elect, form_zones, reconfigure,
                       select_co, select_mns, select_zos)
from .types import (Designation, Disposition, Handshake, Hierarchy, Network, NodeState, Position,
                    PowerMode, RoleAssignment, RoleChange, SleepSchedule)

__all__ = ['Designation', 'Disposition', 'PowerMode', 'Position', 'SleepSchedule', 'NodeState', 'Network',
           'RoleAssignment', 'RoleChange', 'Handshake', 'Hierarchy', 'deploy', 'discover_neighbors',
           'form_cluster', 'gateway_of', 'infer_category', 'initial_energy', 'make_node', 'reachable',
           'ElectionParameters', 'classify_nodes', 'select_co', 'select_mns', 'select_zos', 'form_zones',
           'elect', 'reconfigure']
