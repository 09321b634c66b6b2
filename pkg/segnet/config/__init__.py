from .loading import (FIXTURES, decode_scenario, defaults_applied, load_fixture,
                      load_scenario, parse_scenario, with_overrides)
from .schema import (Arrivals, AttackerModel, BandMode, Behavior, CompromisedBehavior,
                     DutyCycle, EnergyModel, NodeCategory, NodeSpec, ScenarioConfig,
                     SimParameters, Thresholds)

__all__ = ['ScenarioConfig', 'NodeSpec', 'Thresholds', 'DutyCycle', 'EnergyModel', 'AttackerModel',
           'SimParameters', 'CompromisedBehavior', 'NodeCategory', 'BandMode', 'Behavior', 'Arrivals',
           'FIXTURES', 'load_scenario', 'load_fixture', 'parse_scenario', 'decode_scenario',
           'defaults_applied', 'with_overrides']
