"""Cooperative-game view of grouped inequality.

The value of a coalition of attributes is the between-group inequality of
the joint grouping; the empty coalition collapses everyone into one group
and is worth zero. Shapley values split the grand-coalition value among
attributes but, unlike the lattice decomposition, cannot tell redundancy
from synergy.
"""

from __future__ import annotations

from itertools import combinations
from math import factorial
from typing import Sequence

from .errors import TooManyAttributes
from .measures import MeasureSpec, inequality
from .population import Dataset, grouped_columns
from .zonogon import canonical_chain

MAX_PLAYERS = 10


def game_value(pop: Dataset, coalition: Sequence[str], spec: MeasureSpec) -> float:
    """Between-group inequality when grouping by the coalition's attributes."""
    if not coalition:
        return 0.0
    return inequality(grouped_columns(pop, coalition), spec)


def _all_values(pop: Dataset, attrs: Sequence[str], spec: MeasureSpec) -> dict:
    values = {(): 0.0}
    for r in range(1, len(attrs) + 1):
        for coalition in combinations(attrs, r):
            values[coalition] = game_value(pop, coalition, spec)
    return values


def shapley_values(pop: Dataset, attrs: Sequence[str], spec: MeasureSpec) -> dict[str, float]:
    """Exact Shapley values of the grouped-inequality game.

    Enumerates all 2^n coalitions; efficiency (values summing to the
    grand-coalition value) holds by construction.
    """
    attrs = list(attrs)
    n = len(attrs)
    if n > MAX_PLAYERS:
        raise TooManyAttributes(f"exact enumeration supports up to {MAX_PLAYERS} attributes")
    values = _all_values(pop, attrs, spec)
    phi = {}
    for a in attrs:
        others = [x for x in attrs if x != a]
        total = 0.0
        for r in range(len(others) + 1):
            weight = factorial(r) * factorial(n - r - 1) / factorial(n)
            for coalition in combinations(others, r):
                joined = tuple(x for x in attrs if x == a or x in coalition)
                total += weight * (values[joined] - values[coalition])
        phi[a] = total
    return phi


def game_synergy(pop: Dataset, a: str, b: str, spec: MeasureSpec) -> float:
    """Interaction term v({a,b}) - v({a}) - v({b}); negative means redundancy."""
    if a == b:
        raise ValueError("game_synergy requires two distinct attributes")
    pair = tuple(x for x in pop.attribute_names if x in (a, b))
    return (
        game_value(pop, pair, spec)
        - game_value(pop, (a,), spec)
        - game_value(pop, (b,), spec)
    )
