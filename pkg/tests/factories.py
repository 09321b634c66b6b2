"""Scenario builders shared by the tests."""
from importlib import resources
from typing import Any, Dict, List, Optional

from segnet.base.units import NodeId
from segnet.config import ScenarioConfig, decode_scenario, load_fixture


def node(node_id: int, x: float, y: float, category: str = 'simple', **extra: Any) -> Dict[str, Any]:
    return {'id': node_id, 'x': x, 'y': y, 'category': category, **extra}


def scenario(nodes: List[Dict[str, Any]], seed: int = 1, **fields: Any) -> ScenarioConfig:
    sim = {'seed': seed, **fields.pop('sim', {})}
    data: Dict[str, Any] = {'nodes': nodes, 'radio_range': 30.0, 'sim': sim, **fields}

    return decode_scenario(data)


def fixture_text(name: str) -> str:
    return resources.files('segnet.config').joinpath('fixtures', f'{name}.toml').read_text(encoding='UTF-8')


def fixture_with(name: str, extra_nodes: Optional[List[Dict[str, Any]]] = None, **fields: Any) -> ScenarioConfig:
    """A shipped fixture with nodes appended and top-level fields replaced."""
    data = load_fixture(name).model_dump(mode='json', exclude_unset=True)
    data['nodes'].extend(extra_nodes or [])
    data.update(fields)

    return decode_scenario(data)


def ids(config: ScenarioConfig) -> Dict[str, NodeId]:
    """Label -> id for the labelled nodes of a scenario."""
    return {spec.name: spec.id for spec in config.nodes if spec.label is not None}
