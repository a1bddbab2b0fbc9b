"""Canonical zonogons, the containment order, the lattice meet and sums.

The zonogon generated by (weight, share) columns is represented by its upper
chain only: vertices from (0,0) to (1,1) with strictly decreasing edge
slopes. The lower half follows by central symmetry about (0.5, 0.5), so
containment of zonogons reduces to pointwise dominance of upper chains.
"""

from __future__ import annotations

import enum

import numpy as np

from .population import WeightedColumns

# Two edge vectors count as parallel when their cross product vanishes
# relative to their magnitudes; avoids dividing by zero-weight columns.
MERGE_TOL = 1e-12
# A vertex is "on" a chain when its vertical distance is within this bound.
CONTAIN_TOL = 1e-9


class OrderRelation(enum.Enum):
    EQUAL = "equal"
    STRICTLY_BELOW = "strictly_below"
    STRICTLY_ABOVE = "strictly_above"
    INCOMPARABLE = "incomparable"


class Zonogon:
    """Concave upper chain from (0,0) to (1,1)."""

    def __init__(self, vertices: np.ndarray, generators: np.ndarray | None = None):
        self.vertices = np.asarray(vertices, dtype=float)
        # exact generating vectors, when known; vertex differencing can turn
        # an exact zero share into a 1-ulp residue, which flips measures
        # like MLD from infinite to large-but-finite
        self._generators = None if generators is None else np.asarray(generators, dtype=float)

    @property
    def edges(self) -> np.ndarray:
        if self._generators is not None:
            return self._generators
        return np.diff(self.vertices, axis=0)

    def to_columns(self) -> WeightedColumns:
        e = self.edges
        return WeightedColumns(e[:, 0], e[:, 1])

    def value_at(self, x) -> np.ndarray:
        """Chain height at x; at x=0 this is the top of any vertical edge."""
        xs = self.vertices[:, 0]
        ys = self.vertices[:, 1]
        start = 1 if xs[1] == xs[0] else 0  # skip an initial vertical edge
        return np.interp(x, xs[start:], ys[start:])

    def is_bottom(self) -> bool:
        return len(self.vertices) == 2

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Zonogon)
            and self.vertices.shape == other.vertices.shape
            and bool(np.allclose(self.vertices, other.vertices, atol=CONTAIN_TOL))
        )

    def __repr__(self) -> str:
        pts = ", ".join(f"({x:g},{y:g})" for x, y in self.vertices)
        return f"Zonogon[{pts}]"


def _merge_parallel(vectors: np.ndarray) -> np.ndarray:
    """Sum runs of slope-sorted vectors whose slopes coincide."""
    if len(vectors) <= 1:
        return vectors
    out = [vectors[0].copy()]
    for v in vectors[1:]:
        u = out[-1]
        cross = u[0] * v[1] - u[1] * v[0]
        scale = max(1.0, float(np.hypot(*u) * np.hypot(*v)))
        if abs(cross) <= MERGE_TOL * scale:
            out[-1] = u + v
        else:
            out.append(v.copy())
    return np.array(out)


def canonical_chain(cols: WeightedColumns) -> "Zonogon":
    """Sort columns by slope descending, merge parallel ones, accumulate."""
    vectors = np.column_stack([cols.weights, cols.shares])
    vectors = vectors[(vectors[:, 0] > 0) | (vectors[:, 1] > 0)]
    # atan2 is monotone in slope on the closed first quadrant and handles
    # zero-weight (vertical) columns without special cases.
    angles = np.arctan2(vectors[:, 1], vectors[:, 0])
    vectors = vectors[np.argsort(-angles, kind="stable")]
    vectors = _merge_parallel(vectors)
    chain = np.vstack([[0.0, 0.0], np.cumsum(vectors, axis=0)])
    chain[-1] = [1.0, 1.0]  # endpoint is exact by construction; pin it
    return Zonogon(chain, generators=vectors)


def order(z1: Zonogon, z2: Zonogon) -> OrderRelation:
    """Containment relation of the two zonogons."""
    below = bool(np.all(z1.vertices[:, 1] <= z2.value_at(z1.vertices[:, 0]) + CONTAIN_TOL))
    above = bool(np.all(z2.vertices[:, 1] <= z1.value_at(z2.vertices[:, 0]) + CONTAIN_TOL))
    if below and above:
        return OrderRelation.EQUAL
    if below:
        return OrderRelation.STRICTLY_BELOW
    if above:
        return OrderRelation.STRICTLY_ABOVE
    return OrderRelation.INCOMPARABLE


def _prune_collinear(points: np.ndarray) -> np.ndarray:
    """Drop interior points of straight runs; keep a concave vertex chain."""
    if len(points) <= 2:
        return points
    d1 = points[1:-1] - points[:-2]
    d2 = points[2:] - points[1:-1]
    cross = d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0]
    scale = np.maximum(1.0, np.hypot(*d1.T) * np.hypot(*d2.T))
    keep = np.ones(len(points), dtype=bool)
    keep[1:-1] = np.abs(cross) > MERGE_TOL * scale
    return points[keep]


def meet(z1: Zonogon, z2: Zonogon) -> Zonogon:
    """Greatest zonogon below both: the lower envelope of the upper chains.

    Exact construction: evaluate both chains at the union of their vertex
    x-coordinates, insert the crossing point wherever the difference changes
    sign between neighbours, then prune collinear points.
    """
    xs = np.unique(np.concatenate([z1.vertices[:, 0], z2.vertices[:, 0]]))
    y1 = z1.value_at(xs)
    y2 = z2.value_at(xs)
    d = y1 - y2
    pts_x = [xs]
    pts_y = [np.minimum(y1, y2)]
    sign_change = d[:-1] * d[1:] < 0
    if np.any(sign_change):
        i = np.nonzero(sign_change)[0]
        # both chains are linear between consecutive candidate x's
        t = d[i] / (d[i] - d[i + 1])
        cx = xs[i] + t * (xs[i + 1] - xs[i])
        cy = y1[i] + t * (y1[i + 1] - y1[i])
        pts_x.append(cx)
        pts_y.append(cy)
    px = np.concatenate(pts_x)
    py = np.concatenate(pts_y)
    order_idx = np.argsort(px, kind="stable")
    points = np.column_stack([px, py])[order_idx]
    # collapse x values one ulp apart; a near-zero edge between them would
    # defeat the collinearity pruning and drop a genuine corner
    distinct = np.ones(len(points), dtype=bool)
    distinct[1:] = np.diff(points[:, 0]) > MERGE_TOL
    points = points[distinct]
    if points[0, 1] > 0:  # both chains start with a vertical edge
        points = np.vstack([[0.0, 0.0], points])
    return Zonogon(_prune_collinear(points))


def meet_all(zonogons: list[Zonogon]) -> Zonogon:
    z = zonogons[0]
    for other in zonogons[1:]:
        z = meet(z, other)
    return z


def minkowski_sum(zonogons: list[Zonogon]) -> Zonogon:
    """Sum of the zonogons, rescaled by 1/m so the result ends at (1,1)."""
    m = len(zonogons)
    if m == 0:
        raise ValueError("minkowski_sum requires at least one zonogon")
    generators = np.vstack([z.edges for z in zonogons]) / m
    return canonical_chain(WeightedColumns(generators[:, 0], generators[:, 1]))
