"""
Running black-box stream algorithms as Indexing protocols.

An algorithm is any callable ``algorithm(public_instance, rng)`` returning a
:class:`Walk` (walk-endpoint rule) or a real estimate of the PageRank mass of
the bit-0 sinks (threshold-half rule). It never sees the ground truth.
"""

import logging
import math
import numbers
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from typing import Any, Callable, Dict, List, Literal, Optional

import numpy as np

from ..core.graph import Walk
from ..errors import ConfigError, ProtocolError
from ..utils.rng import PROTOCOL_KEY, SubstreamFactory, generator
from .instances import (
    HardInstance,
    InstanceKind,
    PublicInstance,
    gen_chosen_vertex_instance,
    gen_digraph_instance,
    random_indexing_input,
)

logger = logging.getLogger(__name__)

DecisionRule = Literal["walk-endpoint", "threshold-half"]
Algorithm = Callable[[PublicInstance, np.random.Generator], Any]


def beta_for_walks(epsilon: float) -> int:
    """``ceil(12 / (1/4 - eps))``: funnel width that leaves the walk protocol an edge."""
    if not 0.0 <= epsilon < 0.25:
        raise ConfigError(f"Walk lower bound needs 0 <= eps < 1/4, got {epsilon}")
    return math.ceil(12.0 / (0.25 - epsilon))


def beta_for_pagerank(alpha: float, epsilon: float) -> int:
    """``ceil(12 / ((1 - alpha)^3 - 1/2 - eps))``."""
    margin = (1.0 - alpha) ** 3 - 0.5 - epsilon
    if not 0.0 < alpha < 1.0 or margin <= 0.0:
        raise ConfigError(f"Need (1 - alpha)^3 > 1/2 + eps, got alpha={alpha}, eps={epsilon}")
    return math.ceil(12.0 / margin)


def walk_success_floor(epsilon: float, beta: int) -> float:
    return 0.75 - epsilon - 6.0 / beta


def chosen_vertex_success_floor(k: int, epsilon: float) -> float:
    return 0.75 - 2.0 ** (-2 - k // 2) - epsilon


def pagerank_sink_mass_floor(beta: int, alpha: float) -> float:
    """Least PageRank mass on the correct sinks when the instance event holds."""
    return (1.0 - 6.0 / beta) * (1.0 - alpha) ** 3


def _walk_guess(public: PublicInstance, output: Any) -> Optional[int]:
    if not isinstance(output, Walk):
        raise ProtocolError(f"walk-endpoint rule needs a Walk, got {type(output).__name__}")
    n = public.stream.n
    if any(not 0 <= v < n for v in output.vertices):
        raise ProtocolError(f"Walk {output.vertices} leaves the vertex range 0..{n - 1}")
    sink_bits = {v: z for z, sinks in public.sinks.items() for v in sinks}
    if public.kind == "chosen-vertex":
        for v in output.vertices:
            if v in sink_bits:
                return sink_bits[v]
        return None
    return sink_bits.get(output.end)


def _threshold_guess(output: Any) -> int:
    if isinstance(output, bool) or not isinstance(output, numbers.Real):
        raise ProtocolError(f"threshold-half rule needs a real estimate, got {type(output).__name__}")
    if not math.isfinite(output):
        raise ProtocolError(f"Estimate {output} is not finite")
    return 0 if output >= 0.5 else 1


def run_indexing_protocol(instance: HardInstance,
                          algorithm: Algorithm,
                          decision_rule: DecisionRule,
                          rng: np.random.Generator) -> int:
    """Bob's guess for ``x_I`` after running the algorithm on the public stream.

    walk-endpoint answers z when the walk ends in the z sinks (digraph) or
    first reaches ``c_z`` (chosen-vertex), otherwise a uniform bit.
    threshold-half answers 0 iff the estimate is at least 1/2.
    """
    output = algorithm(instance.public, rng)
    if decision_rule == "walk-endpoint":
        guess = _walk_guess(instance.public, output)
        if guess is None:
            guess = int(rng.integers(0, 2))
        return guess
    if decision_rule == "threshold-half":
        return _threshold_guess(output)
    raise ConfigError(f"Unknown decision rule {decision_rule!r}")


@dataclass(frozen=True)
class TrialReport:
    rows: List[Dict[str, int]]

    @property
    def trials(self) -> int:
        return len(self.rows)

    @property
    def success_rate(self) -> float:
        return sum(row["correct"] for row in self.rows) / len(self.rows) if self.rows else 0.0

    def summary(self) -> Dict[str, float]:
        return {"trials": self.trials, "success_rate": self.success_rate}


def build_instance(kind: InstanceKind, n: int, beta: int, seed: int) -> HardInstance:
    """A random instance with a uniform Indexing input, deterministic in seed."""
    rng = generator(seed, PROTOCOL_KEY, 0)
    if kind == "digraph":
        return gen_digraph_instance(n, beta, random_indexing_input(n, rng), seed)
    if kind == "chosen-vertex":
        return gen_chosen_vertex_instance(n, random_indexing_input(n - 3, rng), seed)
    raise ConfigError(f"Unknown instance kind {kind!r}")


def run_trial(seed: int,
              kind: InstanceKind,
              n: int,
              beta: int,
              algorithm: Algorithm,
              decision_rule: DecisionRule) -> Dict[str, int]:
    instance = build_instance(kind, n, beta, seed)
    guess = run_indexing_protocol(instance, algorithm, decision_rule, generator(seed, PROTOCOL_KEY, 1))
    return {
        "seed": seed,
        "J": instance.J,
        "hidden_bit": instance.hidden_bit,
        "guess": guess,
        "correct": int(guess == instance.hidden_bit),
    }


def run_trials(kind: InstanceKind,
               n: int,
               algorithm: Algorithm,
               decision_rule: DecisionRule,
               trials: int,
               seed: int,
               beta: int = 1,
               workers: int = 1) -> TrialReport:
    """Independent protocol runs; rows come back in trial order.

    With ``workers > 1`` trials run in a process pool, so the algorithm must
    be picklable.
    """
    if trials < 1:
        raise ConfigError(f"trials must be positive, got {trials}")
    factory = SubstreamFactory(seed)
    seeds = [factory.trial_seed(t) for t in range(trials)]
    job = partial(run_trial, kind=kind, n=n, beta=beta, algorithm=algorithm, decision_rule=decision_rule)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(job, seeds, chunksize=max(1, trials // (4 * workers))))
    else:
        rows = [job(s) for s in seeds]
    report = TrialReport(rows)
    logger.info("%d %s trials (%s): success rate %.4f", trials, kind, decision_rule, report.success_rate)
    return report
