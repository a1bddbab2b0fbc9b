"""Attribute decomposition into redundant, unique and synergetic parts.

Lattice nodes are antichains of attribute subsets. The cumulative value of
a node is the inequality of the meet of its sources' between-group
zonogons; a Moebius pass over the lattice turns cumulative values into
partial contributions that sum to the total (joint-grouping) inequality.
Also contains the classical GE subgroup decomposition used as a baseline.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import numpy as np

from .errors import DegeneratePopulation, InfiniteMeasure, InvalidMeasure, TooManyAttributes
from .measures import MeasureSpec, atkinson_transform, ge, inequality
from .population import Dataset, grouped_columns
from .zonogon import Zonogon, canonical_chain, meet_all

MAX_ATTRIBUTES = 3


@dataclass(frozen=True)
class LatticeNode:
    """Antichain of sources; each source is a non-empty set of attributes."""

    sources: tuple[tuple[str, ...], ...]

    @classmethod
    def of(cls, *sources: Sequence[str]) -> "LatticeNode":
        canon = tuple(sorted(tuple(sorted(s)) for s in sources))
        return cls(canon)

    def label(self) -> str:
        return "[" + ",".join("[" + ",".join(s) + "]" for s in self.sources) + "]"

    def __str__(self) -> str:
        return self.label()

    def precedes(self, other: "LatticeNode") -> bool:
        """True when every source of `other` contains some source of self."""
        return all(any(set(s) <= set(t) for s in self.sources) for t in other.sources)


def _precedes(alpha: LatticeNode, beta: LatticeNode) -> bool:
    return alpha.precedes(beta)


def redundancy_lattice(
    attrs: Sequence[str],
) -> tuple[list[LatticeNode], list[tuple[LatticeNode, LatticeNode]]]:
    """All antichains of non-empty attribute subsets, topologically sorted.

    Returns the nodes (predecessors first) and the covering edges of the
    lattice order.
    """
    nodes, covers = _lattice_cached(tuple(attrs))
    return list(nodes), list(covers)


@lru_cache(maxsize=64)
def _lattice_cached(attrs: tuple[str, ...]):
    attrs = list(attrs)
    if not 2 <= len(attrs) <= MAX_ATTRIBUTES:
        raise TooManyAttributes(
            f"decomposition supports 2..{MAX_ATTRIBUTES} attributes, got {len(attrs)}"
        )
    subsets = [
        tuple(sorted(c)) for r in range(1, len(attrs) + 1) for c in combinations(attrs, r)
    ]
    nodes = []
    for r in range(1, len(subsets) + 1):
        for combo in combinations(subsets, r):
            if any(set(a) < set(b) or set(b) < set(a) for a, b in combinations(combo, 2)):
                continue
            nodes.append(LatticeNode.of(*combo))
    # strict predecessor counts grow along the order, so sorting by them is
    # a deterministic topological sort; the joint node ends up last
    pred_count = {n: sum(m != n and _precedes(m, n) for m in nodes) for n in nodes}
    nodes.sort(key=lambda n: (pred_count[n], n.sources))
    covers = []
    for a in nodes:
        for b in nodes:
            if a == b or not _precedes(a, b):
                continue
            between = any(
                c != a and c != b and _precedes(a, c) and _precedes(c, b) for c in nodes
            )
            if not between:
                covers.append((a, b))
    return tuple(nodes), tuple(covers)


@dataclass(frozen=True)
class DecompositionResult:
    """Cumulative and partial value per lattice node, plus the total."""

    nodes: tuple[tuple[LatticeNode, float, float], ...]
    total: float

    def cumulative(self, node: LatticeNode) -> float:
        return self._lookup(node)[0]

    def partial(self, node: LatticeNode) -> float:
        return self._lookup(node)[1]

    def _lookup(self, node: LatticeNode) -> tuple[float, float]:
        for n, cum, part in self.nodes:
            if n == node:
                return cum, part
        raise KeyError(node)

    def named(self, a: str, b: str) -> dict[str, float]:
        """Two-attribute view: redundant / unique / synergetic components."""
        return {
            "redundant": self.partial(LatticeNode.of((a,), (b,))),
            f"unique_{a}": self.partial(LatticeNode.of((a,))),
            f"unique_{b}": self.partial(LatticeNode.of((b,))),
            "synergetic": self.partial(LatticeNode.of((a, b))),
        }


def _source_zonogon(pop: Dataset, source: tuple[str, ...], cache: dict) -> Zonogon:
    if source not in cache:
        cache[source] = canonical_chain(grouped_columns(pop, source))
    return cache[source]


def _node_zonogon(pop: Dataset, node: LatticeNode, cache: dict) -> Zonogon:
    return meet_all([_source_zonogon(pop, s, cache) for s in node.sources])


def cumulative(node: LatticeNode, pop: Dataset, spec: MeasureSpec) -> float:
    """Inequality of the meet of the node's source zonogons."""
    z = _node_zonogon(pop, node, {})
    return inequality(z.to_columns(), spec)


def _moebius(nodes: list[LatticeNode], cumulatives: dict[LatticeNode, float]) -> DecompositionResult:
    partials: dict[LatticeNode, float] = {}
    for beta in nodes:
        below = sum(partials[alpha] for alpha in nodes if alpha != beta and _precedes(alpha, beta))
        partials[beta] = cumulatives[beta] - below
    total = cumulatives[nodes[-1]]
    return DecompositionResult(
        tuple((n, cumulatives[n], partials[n]) for n in nodes), total
    )


def decompose(pop: Dataset, attrs: Sequence[str], spec: MeasureSpec) -> DecompositionResult:
    """Full lattice decomposition of the between-group inequality."""
    nodes, _ = redundancy_lattice(attrs)
    cache: dict = {}
    cumulatives = {}
    for node in nodes:
        value = inequality(_node_zonogon(pop, node, cache).to_columns(), spec)
        if math.isinf(value):
            raise InfiniteMeasure(f"cumulative value of node {node} is infinite")
        cumulatives[node] = value
    return _moebius(nodes, cumulatives)


def atkinson_decompose(pop: Dataset, attrs: Sequence[str], eps: float) -> DecompositionResult:
    """Decompose the Atkinson index.

    Cumulative values are computed with the GE(1-eps) generator, pushed
    through the monotone Atkinson transform, and only then inverted; this
    keeps the transformed cumulatives monotone on the lattice.
    """
    if eps <= 0:
        raise InvalidMeasure("atkinson requires eps > 0")
    spec = MeasureSpec(ge(1.0 - eps))
    nodes, _ = redundancy_lattice(attrs)
    cache: dict = {}
    cumulatives = {}
    for node in nodes:
        value = inequality(_node_zonogon(pop, node, cache).to_columns(), spec)
        if math.isinf(value):
            raise InfiniteMeasure(f"cumulative value of node {node} is infinite")
        cumulatives[node] = atkinson_transform(value, eps)
    return _moebius(nodes, cumulatives)


@dataclass(frozen=True)
class SubgroupResult:
    between: float
    within: tuple[tuple[tuple[str, ...], float, float], ...]  # (key, weight, value)
    reconstruction: float
    total: float


def subgroup_decompose(pop: Dataset, attr: str, c: float) -> SubgroupResult:
    """Classical GE_c between/within decomposition for one attribute.

    Within-group weights are pshare^(1-c) * ishare^c; the reconstruction
    between + sum(w_g * within_g) equals the total GE_c.
    """
    spec = MeasureSpec(ge(c))
    cols, groups = _grouped_with_keys(pop, attr)
    between = inequality(cols, spec)
    total = inequality(_population_columns(pop), spec)
    within = []
    recon = between
    for key, pshare, ishare, sub in groups:
        if ishare == 0:
            # a zero-income group is internally uniform at zero
            value = 0.0
            weight = 0.0 if c > 0 else math.inf
        else:
            value = inequality(_population_columns(sub), spec)
            weight = pshare ** (1.0 - c) * ishare**c
        within.append((key, weight, value))
        recon += weight * value
    return SubgroupResult(between, tuple(within), recon, total)


def _population_columns(pop: Dataset):
    from .population import population_matrix

    return population_matrix(pop)


def _grouped_with_keys(pop: Dataset, attr: str):
    from .population import _group_codes, _ordered_attrs

    attrs = _ordered_attrs(pop, [attr])
    codes, keys = _group_codes(pop, attrs)
    n = len(pop)
    total = pop.indicators.sum()
    if total <= 0:
        raise DegeneratePopulation("population mean is zero")
    counts = np.bincount(codes, minlength=len(keys)).astype(float)
    sums = np.bincount(codes, weights=pop.indicators, minlength=len(keys))
    cols = grouped_columns(pop, attrs)
    out = []
    for g, key in enumerate(keys):
        mask = codes == g
        sub = None
        if sums[g] > 0:
            sub = Dataset(pop.indicators[mask], {}, ())
        out.append((key, counts[g] / n, sums[g] / total, sub))
    return cols, out
