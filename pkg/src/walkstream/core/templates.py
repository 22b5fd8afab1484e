"""
Walk templates.

A k-walk template ``pi = (pi_1, ..., pi_k)`` lies in ``Pi_k = [1] x [2] x ... x [k]``.
A walk conforms with ``pi`` when ``pi_j`` is the first step at which the
walk's j-th edge was traversed. Every walk conforms with exactly one template,
and that template is self-consistent (``pi_{pi_j} = pi_j``).
"""

import itertools
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

import numpy as np

from ..errors import TemplateError
from .graph import Edge, Graph, Walk, validate_walk

# 10! = 3628800 tuples is the largest listing we hand out.
MAX_ENUMERABLE_K = 10


@dataclass(frozen=True)
class WalkTemplate:
    entries: Tuple[int, ...]

    def __post_init__(self):
        entries = tuple(int(p) for p in self.entries)
        for j, p in enumerate(entries, start=1):
            if not 1 <= p <= j:
                raise TemplateError(f"Template entry pi_{j}={p} outside [1, {j}]")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, *entries: int) -> "WalkTemplate":
        return cls(tuple(entries))

    @property
    def k(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> int:
        """One-based access: ``template[j] == pi_j``."""
        if not 1 <= j <= len(self.entries):
            raise IndexError(f"Template index {j} outside [1, {len(self.entries)}]")
        return self.entries[j - 1]

    def is_fresh(self, j: int) -> bool:
        return self[j] == j

    @property
    def is_self_consistent(self) -> bool:
        """True iff every back-reference points at a step that took a new edge."""
        return all(self.entries[p - 1] == p for p in self.entries)

    def prefix(self, length: int) -> "WalkTemplate":
        return WalkTemplate(self.entries[:length])


def _first_occurrence(edges: List[Edge]) -> List[int]:
    first: Dict[Edge, int] = {}
    result = []
    for j, e in enumerate(edges, start=1):
        result.append(first.setdefault(e, j))
    return result


def template_of(w: Walk, g: Graph) -> WalkTemplate:
    """The unique template the walk conforms with: ``pi_j = min{i : e_i = e_j}``."""
    validate_walk(w, g)
    if w.length < 1:
        raise TemplateError("Template of a walk needs length k >= 1")
    return WalkTemplate(tuple(_first_occurrence(w.edges())))


def conforms(w: Walk, template: WalkTemplate, g: Graph) -> bool:
    """Whether w conforms with the length-``len(w)`` prefix of the template."""
    validate_walk(w, g)
    if w.length > template.k:
        raise TemplateError(f"Walk of length {w.length} is longer than the template (k={template.k})")
    expected = _first_occurrence(w.edges())
    return tuple(expected) == template.entries[:w.length]


def num_templates(k: int) -> int:
    """``|Pi_k| = k!``."""
    return math.factorial(k)


def enumerate_templates(k: int) -> List[WalkTemplate]:
    """All of ``Pi_k`` in lexicographic order."""
    if k < 1:
        raise TemplateError(f"k must be positive, got {k}")
    if k > MAX_ENUMERABLE_K:
        raise TemplateError(f"k={k} gives {num_templates(k)} templates; enumeration stops at k={MAX_ENUMERABLE_K}")
    ranges = [range(1, j + 1) for j in range(1, k + 1)]
    return [WalkTemplate(entries) for entries in itertools.product(*ranges)]


def sample_templates(k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Draw ``count`` templates uniformly from ``Pi_k`` as a ``(count, k)`` array.

    Column j (one-based) is uniform on ``[1, j]`` independently, which is the
    uniform law on the product set.
    """
    out = np.empty((count, k), dtype=np.int64)
    for j in range(1, k + 1):
        out[:, j - 1] = rng.integers(1, j + 1, size=count)
    return out


def sample_template(k: int, rng: np.random.Generator) -> WalkTemplate:
    return WalkTemplate(tuple(sample_templates(k, 1, rng)[0].tolist()))
