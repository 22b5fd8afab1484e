from .rng import SEED_ENV_VAR, SubstreamFactory, generator, seed_from_env

__all__ = ['SEED_ENV_VAR', 'SubstreamFactory', 'generator', 'seed_from_env']
