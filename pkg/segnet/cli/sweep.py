"""Parameter sweeps over independent runs."""
import csv
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Dict, List, Mapping, Sequence, TextIO, Tuple

from ..base.exceptions import ConfigurationError
from ..config.loading import with_overrides
from ..config.schema import ScenarioConfig
from ..simkernel.kernel import run
from ..simkernel.metrics import SCALARS, format_value

LOGGER = logging.getLogger(__name__)

Row = Dict[str, Any]
Job = Tuple[ScenarioConfig, int, Dict[str, Any]]


def parse_seeds(text: str) -> List[int]:
    """`a..b` (inclusive) or a single seed."""
    try:
        if '..' in text:
            low, high = (int(part) for part in text.split('..', 1))

        else:
            low = high = int(text)

    except ValueError:
        raise ConfigurationError(f'seeds must look like a..b, got {text!r}') from None

    if high < low:
        raise ConfigurationError(f'empty seed range {text!r}')

    return list(range(low, high + 1))


def _coerce(text: str) -> Any:
    lowered = text.strip().lower()

    if lowered in ('true', 'false'):
        return lowered == 'true'

    if lowered in ('inf', 'infinity'):
        return math.inf

    for kind in (int, float):
        try:
            return kind(lowered)

        except ValueError:
            continue

    return text.strip()


def parse_vary(items: Sequence[str]) -> Dict[str, List[Any]]:
    """Turn `key=v1,v2` arguments into an ordered mapping of candidate values."""
    vary: Dict[str, List[Any]] = {}

    for item in items:
        key, sep, values = item.partition('=')

        if not sep or not key.strip() or not values.strip():
            raise ConfigurationError(f'--vary expects key=v1,v2,..., got {item!r}')

        vary[key.strip()] = [_coerce(value) for value in values.split(',')]

    return vary


def _run_one(job: Job) -> Row:
    scenario, seed, params = job
    result = run(scenario, seed=seed)
    row: Row = {'seed': seed, **params}

    if result.metrics is None:
        row['error'] = result.error

    else:
        row.update(result.metrics.scalars())

    return row


def run_sweep(scenario: ScenarioConfig, seeds: Sequence[int], vary: Mapping[str, Sequence[Any]],
              workers: int = 1) -> List[Row]:
    """
    One row per (parameter combination, seed), ordered by combination then seed.

    Every combination is validated before any run starts.

    :raises: ConfigurationError for an unknown key or an invalid value
    """
    keys = list(vary)
    jobs: List[Job] = []

    for combination in itertools.product(*(vary[key] for key in keys)):
        overrides = dict(zip(keys, combination))
        configured = with_overrides(scenario, overrides) if overrides else scenario
        jobs.extend((configured, seed, overrides) for seed in seeds)

    LOGGER.info('sweeping %d runs over %d workers', len(jobs), workers)

    if workers <= 1:
        rows = [_run_one(job) for job in jobs]

    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_run_one, jobs))

    LOGGER.info('sweep finished, %d rows', len(rows))

    return rows


def _cell(value: Any) -> str:
    if value is None:
        return ''

    if isinstance(value, bool):
        return str(value).lower()

    if isinstance(value, (int, float)):
        return format_value(value)

    return str(value)


def write_rows(rows: Sequence[Row], keys: Sequence[str], handle: TextIO) -> None:
    columns = ['seed', *keys, *SCALARS]

    if any('error' in row for row in rows):
        columns.append('error')

    writer = csv.writer(handle, lineterminator='\n')
    writer.writerow(columns)

    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
