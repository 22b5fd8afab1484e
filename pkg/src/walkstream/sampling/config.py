"""
Sampler configuration.

Two modes share one model:

* ``faithful`` derives ``eta = eps^8 * 2^(-C k)`` and
  ``s = b * 100 * eta^(-k) * k!`` and rejects overrides. For any interesting
  ``eps, k`` that ``s`` is astronomically large, so a faithful run refuses to
  start once ``s`` exceeds ``s_budget``.
* ``lab`` takes ``eta`` directly (``0 < eta < 1/k``) and either an explicit
  ``s`` or the same ``s`` formula evaluated at the supplied ``eta``.
"""

import logging
import math
from decimal import ROUND_CEILING, Decimal, localcontext
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import ConfigError

logger = logging.getLogger(__name__)

DEFAULT_C = 8.0
DEFAULT_D = 100.0
DEFAULT_S_BUDGET = 10 ** 7


class SamplerConfig(BaseModel):
    """All tunables of the walk sampler."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    k: int = Field(ge=1, description="Walk length")
    epsilon: float = Field(default=0.25, gt=0.0, lt=0.5, description="Precision")
    b: int = Field(default=1, ge=0, description="Requested number of walks")
    C: float = Field(default=DEFAULT_C, gt=0.0, description="Constant in the eta formula")
    D: float = Field(default=DEFAULT_D, gt=0.0, description="Constant in estimator batch sizes")
    eta_override: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    s_override: Optional[int] = Field(default=None, ge=0)
    mode: Literal["faithful", "lab"] = "lab"
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    s_budget: int = Field(default=DEFAULT_S_BUDGET, ge=1, description="Largest s a pass may run")

    @model_validator(mode="after")
    def _check_mode(self) -> "SamplerConfig":
        if self.mode == "faithful":
            if self.eta_override is not None or self.s_override is not None:
                raise ConfigError("Faithful mode computes eta and s itself; overrides are rejected")
            return self
        if self.eta_override is None:
            raise ConfigError("Lab mode needs an explicit eta")
        if self.eta_override * self.k >= 1.0:
            raise ConfigError(f"Lab mode needs eta < 1/k so {self.k} windows fit in [0, 1); got eta={self.eta_override}")
        if self.num_instances < self.b:
            raise ConfigError(f"s={self.num_instances} is smaller than b={self.b}")
        return self

    @property
    def eta(self) -> float:
        if self.mode == "lab":
            return float(self.eta_override)
        return self.epsilon ** 8 * 2.0 ** (-self.C * self.k)

    @property
    def num_instances(self) -> int:
        """The pass size s."""
        if self.mode == "lab" and self.s_override is not None:
            return self.s_override
        return instances_for(self.b, self.k, self._eta_decimal())

    def _eta_decimal(self) -> Decimal:
        with localcontext() as ctx:
            ctx.prec = 60
            if self.mode == "lab":
                return Decimal(repr(self.eta_override))
            return Decimal(repr(self.epsilon)) ** 8 * Decimal(2) ** Decimal(repr(-self.C * self.k))

    @property
    def log2_num_instances(self) -> float:
        return math.log2(self.num_instances) if self.num_instances > 0 else float("-inf")

    def check_budget(self) -> None:
        """Raise :class:`ConfigError` when s is beyond ``s_budget``."""
        s = self.num_instances
        if s > self.s_budget:
            logger.warning(
                "%s mode asks for s=2^%.1f walk instances (k=%d, eps=%g, eta=%.3g); "
                "budget is %d. Use lab mode with an explicit eta and s for runnable experiments.",
                self.mode, self.log2_num_instances, self.k, self.epsilon, self.eta, self.s_budget)
            raise ConfigError(f"s={s} exceeds the instance budget {self.s_budget}")

    def replace(self, **changes) -> "SamplerConfig":
        """A validated copy with some fields changed."""
        return SamplerConfig(**{**self.model_dump(), **changes})


def instances_for(b: int, k: int, eta: Decimal) -> int:
    """``ceil(b * 100 * eta^(-k) * k!)`` in exact big-integer arithmetic."""
    with localcontext() as ctx:
        ctx.prec = 60
        value = Decimal(b) * 100 * Decimal(math.factorial(k)) / eta ** k
        return int(value.to_integral_value(rounding=ROUND_CEILING))


def faithful_eta(epsilon: float, k: int, C: float = DEFAULT_C) -> float:
    return epsilon ** 8 * 2.0 ** (-C * k)
