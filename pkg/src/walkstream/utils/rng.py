"""
Seeded, splittable random number substreams.

Every random choice in walkstream comes from numpy's PCG64 bit generator fed
by a ``SeedSequence``. Substreams are addressed by spawn keys, so the draws of
walk instance ``i`` depend only on ``(seed, i)`` and never on how instances
are scheduled across workers.
"""

import os
from typing import Optional, Tuple

import numpy as np

from ..errors import ConfigError

SEED_ENV_VAR = "WALKSTREAM_SEED"

# Spawn-key prefixes keep the purposes of a single seed apart.
MASTER_KEY = 0
INSTANCE_KEY = 1
STREAM_KEY = 2
TRIAL_KEY = 3
ESTIMATOR_KEY = 4
PROTOCOL_KEY = 5
GENERATOR_KEY = 6


def _check_seed(seed: int) -> int:
    seed = int(seed)
    if seed < 0 or seed >= 2 ** 64:
        raise ConfigError(f"Seed must be an unsigned 64-bit integer, got {seed}")
    return seed


def generator(seed: int, *key: int) -> np.random.Generator:
    """PCG64 generator for the substream ``key`` of ``seed``."""
    sequence = np.random.SeedSequence(_check_seed(seed), spawn_key=tuple(int(k) for k in key))
    return np.random.Generator(np.random.PCG64(sequence))


class SubstreamFactory:
    """Hands out per-instance generators derived from one seed."""

    def __init__(self, seed: int):
        self.seed = _check_seed(seed)

    def master(self) -> np.random.Generator:
        return generator(self.seed, MASTER_KEY)

    def instance(self, index: int) -> np.random.Generator:
        return generator(self.seed, INSTANCE_KEY, index)

    def estimator(self) -> np.random.Generator:
        return generator(self.seed, ESTIMATOR_KEY)

    def protocol(self) -> np.random.Generator:
        return generator(self.seed, PROTOCOL_KEY)

    def trial_seed(self, trial: int) -> int:
        """A derived 64-bit seed for repetition ``trial`` of an experiment."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(TRIAL_KEY, int(trial)))
        state: Tuple[int, int] = sequence.generate_state(2, dtype=np.uint32)
        return (int(state[0]) << 32) | int(state[1])


def seed_from_env(default: Optional[int] = None) -> Optional[int]:
    """Seed from ``WALKSTREAM_SEED`` when set, otherwise ``default``."""
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw == "":
        return default
    try:
        return _check_seed(int(raw))
    except ValueError as e:
        raise ConfigError(f"{SEED_ENV_VAR}={raw!r} is not a valid seed") from e
