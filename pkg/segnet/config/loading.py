"""Scenario loading."""
import json
import logging
import tomllib
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Mapping, Union

from pydantic import ValidationError

from ..base.exceptions import ConfigurationError
from .schema import ScenarioConfig, SimParameters, Thresholds

LOGGER = logging.getLogger(__name__)

FIXTURES = ('casestudy', 'clean', 'attack', 'compromised_zo', 'compromised_mn', 'compromised_co',
            'compromised_co_single')


def _describe(error: ValidationError) -> str:
    """Flatten pydantic errors into `field.path: message` lines."""
    lines = []

    for item in error.errors():
        path = '.'.join(str(part) for part in item['loc']) or '<root>'
        lines.append(f'{path}: {item["msg"]}')

    return '\n'.join(lines)


def _parse_text(text: str, fmt: str) -> Dict[str, Any]:
    """
    Parse the raw scenario text.

    :raises: ConfigurationError carrying the parser's line/column
    """
    try:
        if fmt == 'json':
            data = json.loads(text)

        else:
            data = tomllib.loads(text)

    except json.JSONDecodeError as e:
        raise ConfigurationError(f'line {e.lineno}, column {e.colno}: {e.msg}') from None

    except tomllib.TOMLDecodeError as e:
        raise ConfigurationError(str(e)) from None

    if not isinstance(data, dict):
        raise ConfigurationError('scenario must be a table/object at top level')

    return data


def decode_scenario(data: Mapping[str, Any]) -> ScenarioConfig:
    """
    Validate a raw mapping against the scenario schema.

    :raises: ConfigurationError
    """
    try:
        return ScenarioConfig.model_validate(data)

    except ValidationError as e:
        raise ConfigurationError(_describe(e)) from None


def parse_scenario(text: str, fmt: str = 'toml') -> ScenarioConfig:
    return decode_scenario(_parse_text(text, fmt))


def load_scenario(path: Union[str, Path]) -> ScenarioConfig:
    """Load a `.toml` or `.json` scenario file."""
    path = Path(path)

    try:
        text = path.read_text(encoding='UTF-8')

    except OSError as e:
        raise ConfigurationError(f'{path}: {e.strerror}') from None

    fmt = 'json' if path.suffix.lower() == '.json' else 'toml'

    try:
        return parse_scenario(text, fmt)

    except ConfigurationError as e:
        raise ConfigurationError(f'{path}: {e}') from None


def load_fixture(name: str) -> ScenarioConfig:
    """Load one of the scenarios shipped with the package."""
    if name not in FIXTURES:
        raise ConfigurationError(f'unknown fixture {name!r}, expected one of {", ".join(FIXTURES)}')

    text = resources.files(__package__).joinpath('fixtures', f'{name}.toml').read_text(encoding='UTF-8')

    return parse_scenario(text)


def defaults_applied(config: ScenarioConfig) -> List[str]:
    """Names of threshold and sim fields that fell back to schema defaults."""
    missing = [f'thresholds.{name}' for name in Thresholds.model_fields
               if name not in config.thresholds.model_fields_set]
    missing.extend(f'sim.{name}' for name in SimParameters.model_fields if name not in config.sim.model_fields_set)

    return missing


def _resolve_key(config: ScenarioConfig, key: str) -> List[str]:
    """Map a dotted or bare override key onto a path in the schema."""
    parts = key.split('.')

    if len(parts) == 1:
        for section, model in (('thresholds', Thresholds), ('sim', SimParameters)):
            if key in model.model_fields:
                return [section, key]

        if key in ScenarioConfig.model_fields and key != 'nodes':
            return [key]

        raise ConfigurationError(f'unknown key {key!r}')

    current: Any = config
    for part in parts:
        fields = getattr(type(current), 'model_fields', None)

        if fields is None or part not in fields:
            raise ConfigurationError(f'unknown key {key!r}')

        current = getattr(current, part)

    return parts


def with_overrides(config: ScenarioConfig, overrides: Mapping[str, Any]) -> ScenarioConfig:
    """
    Return a re-validated copy of `config` with dotted-key overrides applied.

    Fields set in the original stay marked as set so `defaults_applied` keeps its meaning.

    :raises: ConfigurationError for unknown keys or invalid values
    """
    data = config.model_dump(mode='json', exclude_unset=True)

    for key, value in overrides.items():
        path = _resolve_key(config, key)
        node = data

        for part in path[:-1]:
            node = node.setdefault(part, {})

        node[path[-1]] = value

    return decode_scenario(data)
