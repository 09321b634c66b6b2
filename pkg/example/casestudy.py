"""Case study."""
import sys
from pathlib import Path

from segnet.cli import check_narrative
from segnet.config import load_fixture
from segnet.detection import replay
from segnet.simkernel import run, write_metrics
from segnet.tracing import write_trace

OUT = Path(sys.argv[1] if len(sys.argv) > 1 else 'casestudy-out')

scenario = load_fixture('casestudy')
result = run(scenario)

for outcome in check_narrative(result, scenario):
    print(outcome.line())

write_metrics(result.metrics, OUT)
write_trace(result.trace, OUT / 'trace.jsonl')

report = replay(result.trace, scenario)
print(f'replay: {report.checked} verdicts checked, {len(report.divergences)} divergences')

attack = load_fixture('attack')

for seed in range(1, 6):
    protected = run(attack, seed=seed).metrics.network_lifetime
    exposed = run(attack, seed=seed, detection_enabled=False).metrics.network_lifetime
    print(f'seed {seed}: lifetime {protected} with detection, {exposed} without')
