"""Populations of individuals with attributes and their matrix representations.

A population is reduced to a 2 x m matrix of (weight, share) columns: one
column per individual (``population_matrix``) or per joint category group
(``group_by``). Both rows sum to one, so the columns generate a zonogon
anchored at (0,0) and ending at (1,1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import (
    DegeneratePopulation,
    EmptyPopulation,
    NegativeComponent,
    UnknownAttribute,
)

_SUM_TOL = 1e-12


@dataclass(frozen=True)
class Record:
    """A single individual: non-negative indicator plus categorical attributes."""

    indicator: float
    attributes: Mapping[str, str] = field(default_factory=dict)


class Dataset:
    """Column-oriented store of records.

    Invariants: non-empty, all indicators finite and non-negative, at least
    one indicator strictly positive, every record carries the same attributes.
    """

    def __init__(self, indicators, attributes=None, attribute_names=None):
        ind = np.asarray(indicators, dtype=float)
        if ind.ndim != 1 or ind.size == 0:
            raise EmptyPopulation("dataset must contain at least one record")
        if not np.all(np.isfinite(ind)):
            raise NegativeComponent("indicator values must be finite")
        if np.any(ind < 0):
            raise NegativeComponent("indicator values must be non-negative")
        if not np.any(ind > 0):
            raise DegeneratePopulation("all indicator values are zero")
        attributes = {} if attributes is None else dict(attributes)
        for name, col in attributes.items():
            col = np.asarray(col, dtype=object)
            if col.shape != ind.shape:
                raise UnknownAttribute(
                    f"attribute {name!r} has {col.size} values for {ind.size} records"
                )
            attributes[name] = col
        if attribute_names is None:
            attribute_names = tuple(attributes)
        else:
            attribute_names = tuple(attribute_names)
            if set(attribute_names) != set(attributes):
                raise UnknownAttribute("attribute_names do not match attribute columns")
        self.indicators = ind
        self.attributes = attributes
        self.attribute_names = attribute_names

    @classmethod
    def from_records(cls, records: Iterable[Record]) -> "Dataset":
        records = list(records)
        if not records:
            raise EmptyPopulation("dataset must contain at least one record")
        names = tuple(records[0].attributes)
        for r in records:
            if tuple(r.attributes) != names and set(r.attributes) != set(names):
                raise UnknownAttribute("records carry differing attribute sets")
        indicators = [r.indicator for r in records]
        attributes = {n: [str(r.attributes[n]) for r in records] for n in names}
        return cls(indicators, attributes, names)

    @classmethod
    def from_values(cls, values: Sequence[float]) -> "Dataset":
        """Dataset without attributes, for plain inequality measurement."""
        return cls(values)

    def __len__(self) -> int:
        return int(self.indicators.size)

    @property
    def mean(self) -> float:
        return float(self.indicators.mean())

    def scaled(self, k: float) -> "Dataset":
        return Dataset(self.indicators * k, self.attributes, self.attribute_names)


class WeightedColumns:
    """Normalized (weight, share) columns; both rows sum to one."""

    def __init__(self, weights, shares):
        w = np.asarray(weights, dtype=float)
        s = np.asarray(shares, dtype=float)
        if w.shape != s.shape or w.ndim != 1:
            raise ValueError("weights and shares must be 1-d arrays of equal length")
        if np.any(w < 0) or np.any(s < 0):
            raise NegativeComponent("weights and shares must be non-negative")
        if abs(w.sum() - 1.0) > _SUM_TOL * max(1, w.size) or abs(
            s.sum() - 1.0
        ) > _SUM_TOL * max(1, s.size):
            raise ValueError("weights and shares must each sum to one")
        self.weights = w
        self.shares = s

    def __len__(self) -> int:
        return int(self.weights.size)

    def pairs(self) -> list[tuple[float, float]]:
        return list(zip(self.weights.tolist(), self.shares.tolist()))


def population_matrix(pop: Dataset) -> WeightedColumns:
    """One column per record: weight 1/n, share s/(n*mean)."""
    n = len(pop)
    total = pop.indicators.sum()
    if total <= 0:
        raise DegeneratePopulation("population mean is zero")
    return WeightedColumns(np.full(n, 1.0 / n), pop.indicators / total)


def bottom() -> WeightedColumns:
    """The single-group element: one column (1,1)."""
    return WeightedColumns([1.0], [1.0])


def _group_codes(pop: Dataset, attrs: Sequence[str]) -> tuple[np.ndarray, list[tuple[str, ...]]]:
    """Integer group code per record and the sorted list of joint keys."""
    for a in attrs:
        if a not in pop.attributes:
            raise UnknownAttribute(f"unknown attribute {a!r}")
    if not attrs:
        return np.zeros(len(pop), dtype=np.intp), [()]
    # Mixed-radix combination of per-attribute codes; first attribute is the
    # most significant digit, so group order is lexicographic by joint key.
    combined = np.zeros(len(pop), dtype=np.int64)
    levels = []
    for a in attrs:
        uniq, codes = np.unique(pop.attributes[a].astype(str), return_inverse=True)
        combined = combined * len(uniq) + codes
        levels.append(uniq)
    uniq_codes, codes = np.unique(combined, return_inverse=True)
    keys = []
    for code in uniq_codes.tolist():
        digits = []
        for uniq in reversed(levels):
            code, d = divmod(code, len(uniq))
            digits.append(str(uniq[d]))
        keys.append(tuple(reversed(digits)))
    return codes, keys


def grouped_columns(pop: Dataset, attrs: Sequence[str]) -> WeightedColumns:
    """Between-group columns only (no sub-datasets); used on hot paths."""
    attrs = _ordered_attrs(pop, attrs)
    codes, keys = _group_codes(pop, attrs)
    n = len(pop)
    counts = np.bincount(codes, minlength=len(keys)).astype(float)
    sums = np.bincount(codes, weights=pop.indicators, minlength=len(keys))
    total = pop.indicators.sum()
    return WeightedColumns(counts / n, sums / total)


def _ordered_attrs(pop: Dataset, attrs: Iterable[str]) -> tuple[str, ...]:
    attrs = set(attrs)
    for a in attrs:
        if a not in pop.attributes:
            raise UnknownAttribute(f"unknown attribute {a!r}")
    return tuple(a for a in pop.attribute_names if a in attrs)


def group_by(
    pop: Dataset, attrs: Iterable[str]
) -> tuple[WeightedColumns, list[tuple[tuple[str, ...], Dataset]]]:
    """Aggregate into joint-category groups.

    Returns the between-group columns (weight n_g/n, share of the group's
    indicator total) and each group's sub-dataset, ordered lexicographically
    by joint key. Grouping by no attributes yields the single column (1,1).
    """
    attrs = _ordered_attrs(pop, attrs)
    codes, keys = _group_codes(pop, attrs)
    cols = grouped_columns(pop, attrs)
    groups = []
    for g, key in enumerate(keys):
        mask = codes == g
        sub_attrs = {n: c[mask] for n, c in pop.attributes.items()}
        groups.append((key, Dataset(pop.indicators[mask], sub_attrs, pop.attribute_names)))
    return cols, groups
