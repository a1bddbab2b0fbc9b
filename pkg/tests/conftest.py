"""Shared fixtures and independent oracle helpers."""

from __future__ import annotations

import numpy as np
import pytest

from ineqlab import Dataset


# verdict lines from the acceptance suite, echoed after the test run;
# fd-level capture would swallow prints made inside the tests themselves
VERDICTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    for line in VERDICTS:
        terminalreporter.write_line(line)


@pytest.fixture
def d_xor() -> Dataset:
    """Attributes individually uninformative; only jointly do they separate."""
    return Dataset(
        [1, 3, 3, 1],
        {"A": ["a1", "a1", "a2", "a2"], "B": ["b1", "b2", "b1", "b2"]},
        ["A", "B"],
    )


@pytest.fixture
def d_red() -> Dataset:
    """Both attributes carry the identical grouping."""
    return Dataset([1, 3], {"A": ["a1", "a2"], "B": ["b1", "b2"]}, ["A", "B"])


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20250823)


def random_dataset(rng, n_attrs=2, max_n=200, max_cats=4, low=0.01, high=100.0) -> Dataset:
    n = int(rng.integers(4, max_n + 1))
    names = [chr(65 + i) for i in range(n_attrs)]
    attrs = {
        name: rng.choice([f"{name.lower()}{j}" for j in range(int(rng.integers(2, max_cats + 1)))], n)
        for name in names
    }
    return Dataset(rng.uniform(low, high, n), attrs, names)


def upper_hull(points: np.ndarray) -> np.ndarray:
    """Upper convex hull by the monotone-chain scan; independent of zonogon.py."""
    pts = np.asarray(points, dtype=float)
    pts = pts[np.lexsort((-pts[:, 1], pts[:, 0]))]
    hull: list[np.ndarray] = []
    for p in pts:
        while len(hull) >= 2:
            a, b = hull[-2], hull[-1]
            cross = (b[0] - a[0]) * (p[1] - a[1]) - (b[1] - a[1]) * (p[0] - a[0])
            if cross >= -1e-15:
                hull.pop()
            else:
                break
        if hull and abs(hull[-1][0] - p[0]) < 1e-15:
            if p[1] <= hull[-1][1]:
                continue
            hull.pop()
        hull.append(p)
    return np.array(hull)


def chain_value(vertices: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Plain piecewise-linear interpolation of a vertex chain."""
    v = np.asarray(vertices, dtype=float)
    return np.interp(x, v[:, 0], v[:, 1])
