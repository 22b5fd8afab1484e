from .config import SamplerConfig, faithful_eta
from .reservoir import Reservoir
from .walks import (
    FailCause,
    SampleOutcome,
    SharedPass,
    expected_success_rate,
    samples_with_reset,
    simulate_walks,
    walk_from_template,
    walk_target_probability,
)

__all__ = [
    'SamplerConfig', 'faithful_eta', 'Reservoir', 'FailCause', 'SampleOutcome',
    'SharedPass', 'walk_from_template', 'samples_with_reset', 'simulate_walks',
    'walk_target_probability', 'expected_success_rate',
]
