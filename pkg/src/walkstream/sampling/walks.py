"""
Single-pass random walk sampling from a random-order edge stream.

Each walk instance owns a start vertex and a template. The first ``k * eta``
of the stream is cut into windows ``[eta (j-1), eta j)``. On a fresh step
(``pi_j = j``) the instance reservoir-samples one edge incident to its current
vertex from window j; on a back step it re-traverses ``f_{pi_j}``. The rest of
the stream, ``[eta k, 1]``, is used to estimate the degrees of the walk's
vertices, after which the candidate walk is kept with probability
``prod_j min(eta / (gamma_j * d_hat_{j-1}), 1)``.

All instances of a batch share one pass: every window is the same for every
instance, so a stream event is dispatched only to the instances whose current
vertex it touches.
"""

import logging
import math
from collections import defaultdict
from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.graph import Edge, Graph, Walk
from ..core.stream import Stream
from ..core.templates import WalkTemplate, sample_templates
from ..errors import ConfigError, SamplingFailed, TemplateError
from ..utils.rng import SubstreamFactory
from .config import SamplerConfig
from .reservoir import Reservoir

logger = logging.getLogger(__name__)

RngFactory = Callable[[int], np.random.Generator]


class FailCause(str, Enum):
    EMPTY_WINDOW = "empty-window"
    BACK_EDGE_MISMATCH = "back-edge-mismatch"
    INCONSISTENT_TEMPLATE = "inconsistent-template"
    REJECTED = "rejection"


@dataclass(frozen=True)
class StepRecord:
    j: int
    fresh: bool
    window_size: int
    gamma: float


@dataclass(frozen=True)
class Failure:
    cause: FailCause
    step: Optional[int] = None


@dataclass
class SampleTrace:
    """Diagnostics of one instance: per-step windows and the rejection step."""
    steps: List[StepRecord] = field(default_factory=list)
    degree_estimates: List[int] = field(default_factory=list)
    acceptance: Optional[float] = None
    peak_words: int = 0


@dataclass
class SampleOutcome:
    index: int
    start: int
    template: WalkTemplate
    walk: Optional[Walk]
    trace: SampleTrace
    failure: Optional[Failure] = None

    @property
    def succeeded(self) -> bool:
        return self.walk is not None

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "start": self.start,
            "template": list(self.template.entries),
            "walk": list(self.walk.vertices) if self.walk is not None else None,
            "failure": None if self.failure is None else {
                "cause": self.failure.cause.value, "step": self.failure.step},
            "trace": {
                "steps": [asdict(step) for step in self.trace.steps],
                "degree_estimates": list(self.trace.degree_estimates),
                "acceptance": self.trace.acceptance,
                "peak_words": self.trace.peak_words,
            },
        }


def _other_end(edge: Edge, u: int) -> int:
    return edge[1] if edge[0] == u else edge[0]


class WalkInstance:
    """State of one walk construction.

    Retained state is the template, the walk vertices, the chosen edges, the
    gammas, at most one live reservoir and, during the tail, one degree
    counter per distinct walk vertex. ``retained_words`` counts it.
    """

    __slots__ = ("index", "template", "k", "eta", "_rng_factory", "_rng",
                 "vertices", "edges", "gammas", "reservoir", "degrees",
                 "failure", "trace")

    def __init__(self, index: int, start: int, template: Tuple[int, ...], eta: float,
                 rng_factory: RngFactory):
        self.index = index
        self.template = template
        self.k = len(template)
        self.eta = eta
        self._rng_factory = rng_factory
        self._rng: Optional[np.random.Generator] = None
        self.vertices: List[int] = [start]
        self.edges: List[Edge] = []
        self.gammas: List[float] = []
        self.reservoir: Optional[Reservoir] = None
        self.degrees: Optional[Dict[int, int]] = None
        self.failure: Optional[Failure] = None
        self.trace = SampleTrace()

    @property
    def rng(self) -> np.random.Generator:
        if self._rng is None:
            self._rng = self._rng_factory(self.index)
        return self._rng

    @property
    def alive(self) -> bool:
        return self.failure is None

    def retained_words(self) -> int:
        words = self.k + len(self.vertices) + 2 * len(self.edges) + len(self.gammas)
        if self.reservoir is not None:
            words += Reservoir.words
        if self.degrees is not None:
            words += 2 * len(self.degrees)
        return words

    def _account(self) -> None:
        words = self.retained_words()
        if words > self.trace.peak_words:
            self.trace.peak_words = words

    def _fail(self, cause: FailCause, step: Optional[int]) -> None:
        self.failure = Failure(cause, step)
        self.reservoir = None

    def _advance(self, j: int, edge: Edge, gamma: float, fresh: bool, window_size: int) -> None:
        u = self.vertices[-1]
        self.edges.append(edge)
        self.gammas.append(gamma)
        self.vertices.append(_other_end(edge, u))
        self.trace.steps.append(StepRecord(j, fresh, window_size, gamma))

    def open_step(self, j: int) -> Optional[int]:
        """Start step j; returns the vertex to listen on for a fresh step."""
        if not self.alive:
            return None
        p = self.template[j - 1]
        u = self.vertices[-1]
        if p == j:
            self.reservoir = Reservoir()
            self._account()
            return u
        if self.template[p - 1] != p:
            self._fail(FailCause.INCONSISTENT_TEMPLATE, j)
            return None
        edge = self.edges[p - 1]
        if u not in edge:
            self._fail(FailCause.BACK_EDGE_MISMATCH, j)
            return None
        self._advance(j, edge, 1.0, fresh=False, window_size=0)
        self._account()
        return None

    def offer(self, edge: Edge) -> None:
        self.reservoir.offer(edge, self.rng)

    def close_step(self, j: int) -> None:
        """End of window j: commit the reservoir sample of a fresh step."""
        if not self.alive or self.reservoir is None:
            return
        reservoir, self.reservoir = self.reservoir, None
        if reservoir.count == 0:
            self._fail(FailCause.EMPTY_WINDOW, j)
            return
        self._advance(j, reservoir.item, self.eta / reservoir.count, fresh=True,
                      window_size=reservoir.count)

    def begin_tail(self) -> List[int]:
        """Seed degree counters from the chosen edges; returns vertices to watch."""
        if not self.alive:
            return []
        watched = set(self.vertices[:self.k])
        chosen = set(self.edges)
        self.degrees = {v: sum(1 for e in chosen if v in e) for v in watched}
        self._account()
        return list(watched)

    def count_tail(self, v: int) -> None:
        self.degrees[v] += 1

    def finish(self) -> SampleOutcome:
        walk = None
        if self.alive:
            estimates = [self.degrees[self.vertices[j]] for j in range(self.k)]
            acceptance = 1.0
            for gamma, d_hat in zip(self.gammas, estimates):
                acceptance *= min(self.eta / (gamma * d_hat), 1.0)
            self.trace.degree_estimates = estimates
            self.trace.acceptance = acceptance
            if acceptance >= 1.0 or self.rng.random() < acceptance:
                walk = Walk(tuple(self.vertices))
            else:
                self._fail(FailCause.REJECTED, None)
        return SampleOutcome(self.index, self.vertices[0], WalkTemplate(self.template),
                             walk, self.trace, self.failure)


class SharedPass:
    """Runs many walk instances over one pass of a stream.

    Instances never communicate; the draws of instance i come only from
    ``rng_factory(i)``, so outcomes do not depend on scheduling.
    """

    def __init__(self, k: int, eta: float, rng_factory: RngFactory):
        if k < 1:
            raise ConfigError(f"k must be positive, got {k}")
        if not 0.0 < eta or eta * k > 1.0:
            raise ConfigError(f"Need 0 < eta and eta*k <= 1, got eta={eta}, k={k}")
        self.k = k
        self.eta = eta
        self.rng_factory = rng_factory
        self.bounds = [eta * j for j in range(1, k + 1)]

    def run(self,
            stream: Stream,
            starts: np.ndarray,
            templates: np.ndarray,
            keep_failures: bool = True) -> Iterator[SampleOutcome]:
        """Yield outcomes in instance order after a single pass over ``stream``.

        With ``keep_failures=False`` only successful outcomes are yielded and
        instances that never saw an edge are not materialized at all.
        """
        if stream.directed:
            raise ConfigError("Walk sampling runs on undirected streams only")
        k = self.k
        count = len(starts)
        templates = np.asarray(templates, dtype=np.int64).reshape(count, k)
        limits = np.arange(1, k + 1)
        bad = np.flatnonzero(np.any((templates < 1) | (templates > limits), axis=1))
        if bad.size:
            raise TemplateError(f"Row {int(bad[0])} is not a template: {templates[bad[0]].tolist()}")

        def template_row(i: int) -> Tuple[int, ...]:
            return tuple(templates[i].tolist())

        # Window 1 is fresh for every instance; instances stay implicit until offered an edge.
        pending: Dict[int, List[int]] = defaultdict(list)
        for i, u in enumerate(np.asarray(starts).tolist()):
            pending[u].append(i)
        instances: Dict[int, WalkInstance] = {}

        def materialize(i: int) -> WalkInstance:
            inst = instances.get(i)
            if inst is None:
                inst = WalkInstance(i, int(starts[i]), template_row(i), self.eta, self.rng_factory)
                inst.open_step(1)
                instances[i] = inst
            return inst

        waiting: Dict[int, List[WalkInstance]] = {}
        watchers: Dict[int, List[WalkInstance]] = defaultdict(list)
        j = 1

        def advance_window() -> None:
            nonlocal j, waiting
            live = [instances[i] for i in sorted(instances)]
            for inst in live:
                inst.close_step(j)
            j += 1
            if j <= k:
                waiting = defaultdict(list)
                for inst in live:
                    u = inst.open_step(j)
                    if u is not None:
                        waiting[u].append(inst)
            else:
                for inst in live:
                    for v in inst.begin_tail():
                        watchers[v].append(inst)
            dead = [i for i, inst in instances.items() if not inst.alive]
            if not keep_failures:
                for i in dead:
                    del instances[i]

        for u, v, t, _ in stream:
            while j <= k and t >= self.bounds[j - 1]:
                advance_window()
            if j == 1:
                edge = (u, v)
                for i in pending.get(u, ()):
                    materialize(i).offer(edge)
                for i in pending.get(v, ()):
                    materialize(i).offer(edge)
            elif j <= k:
                edge = (u, v)
                for inst in waiting.get(u, ()):
                    inst.offer(edge)
                for inst in waiting.get(v, ()):
                    inst.offer(edge)
            else:
                for inst in watchers.get(u, ()):
                    inst.count_tail(u)
                for inst in watchers.get(v, ()):
                    inst.count_tail(v)
        while j <= k:
            advance_window()

        succeeded = 0
        for i in range(count):
            inst = instances.get(i)
            if inst is None:
                if keep_failures:
                    yield _empty_window_outcome(i, int(starts[i]), template_row(i))
                continue
            outcome = inst.finish()
            if outcome.succeeded:
                succeeded += 1
                yield outcome
            elif keep_failures:
                yield outcome
        logger.debug("Pass over %d events: %d instances, %d walks kept (k=%d, eta=%g)",
                     stream.m, count, succeeded, k, self.eta)


def _empty_window_outcome(index: int, start: int, template: Tuple[int, ...]) -> SampleOutcome:
    trace = SampleTrace(peak_words=len(template) + 1 + Reservoir.words)
    return SampleOutcome(index, start, WalkTemplate(template), None, trace,
                         Failure(FailCause.EMPTY_WINDOW, 1))


def walk_from_template(stream: Stream,
                       u0: int,
                       template: Union[WalkTemplate, Sequence[int]],
                       k: int,
                       eta: float,
                       rng: Union[int, np.random.Generator]) -> SampleOutcome:
    """Build one walk from ``u0`` conforming with ``template`` in a single pass.

    Only stream events, ``u0``, the template, ``k`` and ``eta`` are consulted.
    FAIL is returned as an outcome with ``walk=None``.
    """
    if not isinstance(template, WalkTemplate):
        template = WalkTemplate(tuple(template))
    if template.k != k:
        raise TemplateError(f"Template has length {template.k}, expected k={k}")
    if eta * k > 1.0:
        raise ConfigError(f"eta*k must be at most 1, got {eta * k}")
    if not 0 <= u0 < stream.n:
        raise ConfigError(f"Start vertex {u0} outside 0..{stream.n - 1}")
    generator = rng if isinstance(rng, np.random.Generator) else SubstreamFactory(rng).instance(0)
    shared = SharedPass(k, eta, lambda _: generator)
    starts = np.array([u0], dtype=np.int64)
    templates = np.array([template.entries], dtype=np.int64)
    return next(shared.run(stream, starts, templates, keep_failures=True))


def _draw_instances(stream: Stream, cfg: SamplerConfig) -> Tuple[np.ndarray, np.ndarray, SubstreamFactory]:
    cfg.check_budget()
    if stream.n < 1:
        raise ConfigError("Cannot draw start vertices from an empty vertex set")
    factory = SubstreamFactory(cfg.seed)
    master = factory.master()
    s = cfg.num_instances
    starts = master.integers(0, stream.n, size=s)
    templates = sample_templates(cfg.k, s, master)
    return starts, templates, factory


def samples_with_reset(stream: Stream, cfg: SamplerConfig) -> List[SampleOutcome]:
    """Run s instances with iid uniform starts and templates over one pass."""
    starts, templates, factory = _draw_instances(stream, cfg)
    shared = SharedPass(cfg.k, cfg.eta, factory.instance)
    return list(shared.run(stream, starts, templates, keep_failures=True))


def simulate_walks(stream: Stream, cfg: SamplerConfig) -> List[Walk]:
    """The first b successful walks in instance order.

    Raises:
        SamplingFailed: fewer than b of the s instances succeeded
    """
    starts, templates, factory = _draw_instances(stream, cfg)
    shared = SharedPass(cfg.k, cfg.eta, factory.instance)
    walks = [outcome.walk for outcome in shared.run(stream, starts, templates, keep_failures=False)]
    if len(walks) < cfg.b:
        raise SamplingFailed(cfg.b, len(walks), len(starts))
    logger.info("simulate_walks: %d of %d instances succeeded, returning %d", len(walks), len(starts), cfg.b)
    return walks[:cfg.b]


def walk_target_probability(walk: Walk, g: Graph, eta: float) -> float:
    """``eta^k * prod_j 1/d(v_{j-1})``: the per-invocation target law of a conforming walk."""
    prob = eta ** walk.length
    for v in walk.vertices[:-1]:
        prob /= g.degree(v)
    return prob


def expected_success_rate(k: int, eta: float) -> float:
    """Leading-order success probability of one instance under a uniform template."""
    return eta ** k / math.factorial(k)
