"""Validated estimator requests and their JSON result records."""

import logging
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..core.stream import Stream
from ..errors import ConfigError, SamplingFailed
from ..sampling.config import SamplerConfig
from ..sampling.walks import simulate_walks
from .pagerank import approx_pagerank
from .rp import Sampler, approx_rp, batch_size

logger = logging.getLogger(__name__)


class EstimatorRequest(BaseModel):
    """One run of approx_rp or approx_pagerank.

    ``target`` lists the vertices of T for PageRank requests; the library
    functions also accept a membership predicate.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    kind: Literal["return-probability", "pagerank"]
    epsilon: float = Field(gt=0.0, lt=0.5)
    k: Optional[int] = Field(default=None, ge=1)
    alpha: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    target: Tuple[int, ...] = ()
    cfg: SamplerConfig

    @model_validator(mode="after")
    def _check_kind(self) -> "EstimatorRequest":
        if self.kind == "return-probability" and self.k is None:
            raise ConfigError("A return-probability request needs k")
        if self.kind == "pagerank" and self.alpha is None:
            raise ConfigError("A pagerank request needs alpha")
        return self

    @property
    def k_or_alpha(self) -> float:
        return self.k if self.kind == "return-probability" else self.alpha


class EstimateResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: str
    estimate: Optional[float]
    b: int
    k_or_alpha: float
    epsilon: float
    seed: int
    failed: bool


def run_estimator(request: EstimatorRequest,
                  stream: Stream,
                  sampler: Sampler = simulate_walks) -> EstimateResult:
    """Run the requested estimator; a sampler FAIL becomes ``failed=True``."""
    cfg = request.cfg
    try:
        if request.kind == "return-probability":
            estimate = approx_rp(stream, request.k, request.epsilon, cfg, sampler=sampler)
        else:
            estimate = approx_pagerank(stream, request.alpha, request.target, request.epsilon, cfg,
                                       sampler=sampler)
        failed = False
    except SamplingFailed as e:
        logger.warning("%s estimator failed: %s", request.kind, e)
        estimate, failed = None, True
    return EstimateResult(kind=request.kind, estimate=estimate, b=batch_size(request.epsilon, cfg.D),
                          k_or_alpha=request.k_or_alpha, epsilon=request.epsilon, seed=cfg.seed,
                          failed=failed)
