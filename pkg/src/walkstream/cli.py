"""
Command-line front door.

    walkstream gen-graph --family cycle --n 6 --out c6.txt
    walkstream sample-walks --graph-file c6.txt --k 2 --b 10 --eta 0.1
    walkstream rp --family cycle --n 6 --k 2 --epsilon 0.15 --eta 0.1 --trials 20
    walkstream pagerank --family random-regular --n 8 --d 3 --alpha 0.3 --epsilon 0.2 --target 0 1
    walkstream lb-sim --instance digraph --algorithm walk --n 10 --beta 24 --trials 10000

Exit codes: 0 on success, 1 on configuration or I/O errors, 2 when more than
half of the trials failed.
"""

import argparse
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import __version__
from .core.generators import FAMILIES, generate_graph
from .core.graph import Graph, read_edge_list, write_edge_list
from .core.stream import make_stream
from .errors import ConfigError, SamplingFailed, WalkStreamError
from .estimators.request import EstimatorRequest, run_estimator
from .lowerbound.protocol import beta_for_pagerank, beta_for_walks, run_trials
from .oracles.reference import ConstantAnswer, FullMemoryPageRank, FullMemoryWalk, FullMemoryWalkSampler
from .sampling.config import DEFAULT_C, DEFAULT_D, SamplerConfig
from .sampling.walks import simulate_walks
from .utils.rng import SubstreamFactory, seed_from_env
from .utils.serialization import format_rows_csv, format_walks, to_json, write_rows_csv, write_walks

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_FAILED = 2

Command = Literal["gen-graph", "sample-walks", "rp", "pagerank", "lb-sim"]


class ExperimentSpec(BaseModel):
    """A fully resolved command-line invocation."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    command: Command
    graph_file: Optional[Path] = None
    family: Optional[str] = None
    n: Optional[int] = Field(default=None, ge=1)
    d: Optional[int] = Field(default=None, ge=1)
    components: int = Field(default=2, ge=1)
    base: str = 'complete'
    k: Optional[int] = Field(default=None, ge=1)
    epsilon: float = Field(default=0.25, gt=0.0, lt=0.5)
    alpha: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    target: Tuple[int, ...] = ()
    b: int = Field(default=1, ge=0)
    eta: Optional[float] = Field(default=None, gt=0.0, lt=1.0)
    s: Optional[int] = Field(default=None, ge=0)
    C: float = Field(default=DEFAULT_C, gt=0.0)
    D: float = Field(default=DEFAULT_D, gt=0.0)
    mode: Literal["faithful", "lab"] = "lab"
    sampler: Literal["streaming", "full-memory"] = "streaming"
    instance: Literal["digraph", "chosen-vertex"] = "digraph"
    algorithm: Literal["walk", "pagerank", "constant"] = "walk"
    beta: Optional[int] = Field(default=None, ge=1)
    seed: int = Field(default=0, ge=0, lt=2 ** 64)
    trials: int = Field(default=1, ge=1)
    workers: int = Field(default=1, ge=1)
    out: Optional[Path] = None
    format: Literal["csv", "json", "walks"] = "json"

    @model_validator(mode="after")
    def _check_sources(self) -> "ExperimentSpec":
        if self.format == "walks" and self.command != "sample-walks":
            raise ConfigError("--format walks is only for sample-walks")
        if self.command == "lb-sim":
            if self.n is None:
                raise ConfigError("lb-sim needs --n")
            return self
        if self.graph_file is not None:
            if self.family is not None:
                raise ConfigError("Give either --graph-file or --family, not both")
            if not self.graph_file.exists():
                raise ConfigError(f"Graph file {self.graph_file} does not exist")
        elif self.family is None or self.n is None:
            raise ConfigError("Need --graph-file or --family with --n")
        elif self.family not in FAMILIES and self.family != 'disjoint-union':
            raise ConfigError(f"Unknown family {self.family!r}")
        if self.command in ("sample-walks", "rp") and self.k is None:
            raise ConfigError(f"{self.command} needs --k")
        if self.command == "pagerank" and self.alpha is None:
            raise ConfigError("pagerank needs --alpha")
        return self

    def load_graph(self) -> Graph:
        if self.graph_file is not None:
            return read_edge_list(self.graph_file)
        return generate_graph(self.family, self.n, d=self.d, components=self.components,
                              base=self.base, seed=self.seed)

    def sampler_config(self, seed: int, k: Optional[int] = None) -> SamplerConfig:
        return SamplerConfig(k=k if k is not None else (self.k or 1), epsilon=self.epsilon, b=self.b,
                             C=self.C, D=self.D, mode=self.mode, seed=seed,
                             eta_override=self.eta if self.mode == "lab" else None,
                             s_override=self.s if self.mode == "lab" else None)

    def parameters(self) -> Dict[str, Any]:
        """The parameter set every result row carries."""
        return self.model_dump(mode="json", exclude={"out", "format", "workers"})


def _walk_trial(spec: ExperimentSpec, graph: Graph, trial: int) -> Dict[str, Any]:
    seed = SubstreamFactory(spec.seed).trial_seed(trial)
    stream = make_stream(graph, seed)
    cfg = spec.sampler_config(seed)
    sampler = FullMemoryWalkSampler() if spec.sampler == "full-memory" else simulate_walks
    try:
        walks = sampler(stream, cfg)
    except SamplingFailed as e:
        logger.warning("Trial %d failed: %s", trial, e)
        return {"trial": trial, "seed": seed, "failed": True, "walks": []}
    return {"trial": trial, "seed": seed, "failed": False, "walks": [list(w.vertices) for w in walks]}


def _estimate_trial(spec: ExperimentSpec, graph: Graph, trial: int) -> Dict[str, Any]:
    seed = SubstreamFactory(spec.seed).trial_seed(trial)
    stream = make_stream(graph, seed)
    request = EstimatorRequest(
        kind="return-probability" if spec.command == "rp" else "pagerank",
        epsilon=spec.epsilon,
        k=spec.k if spec.command == "rp" else None,
        alpha=spec.alpha,
        target=spec.target,
        cfg=spec.sampler_config(seed),
    )
    sampler = FullMemoryWalkSampler() if spec.sampler == "full-memory" else simulate_walks
    result = run_estimator(request, stream, sampler=sampler)
    return {"trial": trial, **result.model_dump()}


def _map_trials(job, spec: ExperimentSpec, graph: Graph) -> List[Dict[str, Any]]:
    task = partial(job, spec, graph)
    if spec.workers > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            return list(pool.map(task, range(spec.trials)))
    return [task(t) for t in range(spec.trials)]


def _emit(spec: ExperimentSpec, payload: Any, rows: Optional[List[Dict[str, Any]]] = None,
          walks: Optional[List[List[int]]] = None) -> None:
    if spec.format == "walks" and walks is not None:
        if spec.out is None:
            sys.stdout.write(format_walks(walks))
        else:
            write_walks(walks, spec.out)
        return
    if spec.format == "csv" and rows is not None:
        if spec.out is None:
            sys.stdout.write(format_rows_csv(rows))
        else:
            write_rows_csv(rows, spec.out)
        return
    text = to_json(payload)
    if spec.out is None:
        sys.stdout.write(text)
    else:
        spec.out.write_text(text)


def _lb_algorithm(spec: ExperimentSpec):
    if spec.algorithm == "walk":
        return FullMemoryWalk(spec.k or 3), "walk-endpoint"
    if spec.algorithm == "pagerank":
        return FullMemoryPageRank(spec.alpha if spec.alpha is not None else 0.15), "threshold-half"
    return ConstantAnswer(1.0), "threshold-half"


def _lb_beta(spec: ExperimentSpec) -> int:
    if spec.beta is not None:
        return spec.beta
    if spec.algorithm == "pagerank":
        return beta_for_pagerank(spec.alpha if spec.alpha is not None else 0.15, spec.epsilon)
    if spec.instance == "chosen-vertex":
        return 1
    return beta_for_walks(spec.epsilon)


def run_experiment(spec: ExperimentSpec) -> int:
    """Execute one command; returns the process exit code."""
    if spec.command == "lb-sim":
        algorithm, rule = _lb_algorithm(spec)
        beta = _lb_beta(spec)
        report = run_trials(spec.instance, spec.n, algorithm, rule, spec.trials, spec.seed,
                            beta=beta, workers=spec.workers)
        summary = {**report.summary(), "beta": beta, "decision_rule": rule, "parameters": spec.parameters()}
        if spec.format == "csv":
            _emit(spec, None, rows=report.rows)
            if spec.out is not None:
                spec.out.with_suffix(".summary.json").write_text(to_json(summary))
        else:
            _emit(spec, {"summary": summary, "rows": report.rows})
        return EXIT_OK

    graph = spec.load_graph()
    if spec.command == "gen-graph":
        if spec.out is None:
            sys.stdout.write(f"n={graph.n}\n" + "".join(f"{u} {v}\n" for u, v in graph.edges()))
        else:
            write_edge_list(graph, spec.out)
        return EXIT_OK

    if spec.command == "sample-walks":
        results = _map_trials(_walk_trial, spec, graph)
        rows = [{"trial": r["trial"], "seed": r["seed"], "walk": w} for r in results for w in r["walks"]]
        _emit(spec, {"parameters": spec.parameters(), "trials": results}, rows=rows,
              walks=[row["walk"] for row in rows])
    else:
        results = _map_trials(_estimate_trial, spec, graph)
        params = spec.parameters()
        # per-trial fields win over the invocation's; the master seed keeps its own column
        rows = [{**r, **{key: value for key, value in params.items() if key not in r},
                 "n": graph.n, "master_seed": spec.seed} for r in results]
        _emit(spec, {"parameters": params, "trials": results}, rows=rows)

    failed = sum(1 for r in results if r["failed"])
    if failed * 2 > len(results):
        logger.error("%d of %d trials failed", failed, len(results))
        return EXIT_FAILED
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walkstream", description="Random walks from random-order edge streams")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="Master seed (default: $WALKSTREAM_SEED or 0)")
    common.add_argument("--out", type=Path, default=None, help="Output file (default: stdout)")
    common.add_argument("--format", choices=["csv", "json", "walks"], default="json",
                        help="walks: one walk per line (sample-walks only)")

    graph = argparse.ArgumentParser(add_help=False)
    graph.add_argument("--graph-file", type=Path, default=None, help="Edge-list file")
    graph.add_argument("--family", choices=sorted(FAMILIES) + ["disjoint-union"], default=None)
    graph.add_argument("--n", type=int, default=None, help="Vertex count (per component for unions)")
    graph.add_argument("--d", type=int, default=None, help="Degree for random-regular")
    graph.add_argument("--components", type=int, default=2)
    graph.add_argument("--base", choices=sorted(FAMILIES), default="complete")

    sampling = argparse.ArgumentParser(add_help=False)
    sampling.add_argument("--k", type=int, default=None, help="Walk length")
    sampling.add_argument("--epsilon", type=float, default=0.25)
    sampling.add_argument("--b", type=int, default=1, help="Requested walks")
    sampling.add_argument("--eta", type=float, default=None, help="Window width (lab mode)")
    sampling.add_argument("--s", type=int, default=None, help="Walk instances per pass (lab mode)")
    sampling.add_argument("--C", type=float, default=DEFAULT_C)
    sampling.add_argument("--D", type=float, default=DEFAULT_D)
    sampling.add_argument("--mode", choices=["faithful", "lab"], default="lab")
    sampling.add_argument("--sampler", choices=["streaming", "full-memory"], default="streaming")
    sampling.add_argument("--trials", type=int, default=1)
    sampling.add_argument("--workers", type=int, default=1)

    sub.add_parser("gen-graph", parents=[common, graph], help="Generate a graph family as an edge list")
    sub.add_parser("sample-walks", parents=[common, graph, sampling], help="Sample walks in one pass")
    sub.add_parser("rp", parents=[common, graph, sampling], help="Estimate the average return probability")
    pr = sub.add_parser("pagerank", parents=[common, graph, sampling], help="Estimate PageRank mass of a vertex set")
    pr.add_argument("--alpha", type=float, required=True)
    pr.add_argument("--target", type=int, nargs="+", required=True, help="Vertices of T")

    lb = sub.add_parser("lb-sim", parents=[common], help="Run Indexing protocols on hard instances")
    lb.add_argument("--instance", choices=["digraph", "chosen-vertex"], default="digraph")
    lb.add_argument("--algorithm", choices=["walk", "pagerank", "constant"], default="walk")
    lb.add_argument("--n", type=int, required=True)
    lb.add_argument("--beta", type=int, default=None)
    lb.add_argument("--k", type=int, default=None)
    lb.add_argument("--alpha", type=float, default=None)
    lb.add_argument("--epsilon", type=float, default=0.05)
    lb.add_argument("--trials", type=int, default=1000)
    lb.add_argument("--workers", type=int, default=1)
    return parser


def spec_from_args(args: argparse.Namespace) -> ExperimentSpec:
    fields = {key: value for key, value in vars(args).items()
              if key not in ("verbose",) and value is not None}
    fields["seed"] = args.seed if args.seed is not None else seed_from_env(0)
    if "target" in fields:
        fields["target"] = tuple(fields["target"])
    return ExperimentSpec(**fields)


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING if verbosity <= 0 else logging.INFO if verbosity == 1 else logging.DEBUG
    logging.basicConfig(level=level, format="%(asctime)s %(name)s %(levelname)s %(message)s")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        spec = spec_from_args(args)
        return run_experiment(spec)
    except (ValidationError, WalkStreamError, ValueError, OSError) as e:
        logger.error("%s", e)
        print(f"walkstream: error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
