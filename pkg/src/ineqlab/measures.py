"""Generator functions, the vector measure r and the population measure I.

A generator is a convex function f with f(1) = 0. The measure of a column
vector (x, y) with mixing parameter p is a*f(x/a) with a = p*x + (1-p)*y
and the convention 0*f(0/0) = 0. Summing over the columns of a population
matrix gives the population measure; with p = 0 this reproduces the Pietra
index and the Generalized Entropy family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import (
    DegeneratePopulation,
    InvalidMeasure,
    NegativeComponent,
    TransformDomainError,
)
from .population import Dataset, WeightedColumns

_C_SINGULAR_TOL = 1e-9


@dataclass(frozen=True)
class Generator:
    """Convex generator f with f(1) = 0.

    ``at_zero`` is lim f(t) for t -> 0+ and ``tail_slope`` is
    lim f(t)/t for t -> inf; both may be infinite and close the measure
    over zero-weight and zero-share columns.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    strictly_convex: bool
    at_zero: float
    tail_slope: float

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        t = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(t)
        zero = t == 0
        out[zero] = self.at_zero
        if np.any(~zero):
            out[~zero] = self.func(t[~zero])
        return float(out[0]) if scalar else out

    def __repr__(self) -> str:
        return f"Generator({self.name})"


def pietra() -> Generator:
    return Generator("pietra", lambda t: np.abs(t - 1) / 2, False, 0.5, 0.5)


def theil() -> Generator:
    # GE_1: reverse-KL generator
    return Generator("theil", lambda t: -np.log(t), True, math.inf, 0.0)


def mld() -> Generator:
    # GE_0: KL generator; t*ln(t) -> 0 as t -> 0
    return Generator("mld", lambda t: t * np.log(t), True, 0.0, math.inf)


def ge(c: float) -> Generator:
    """Generalized Entropy generator (t^(1-c) - t)/(c(c-1)).

    Values of c within 1e-9 of 0 or 1 dispatch to MLD/Theil, whose
    generators are the limits at the singularities.
    """
    if abs(c) < _C_SINGULAR_TOL:
        return mld()
    if abs(c - 1) < _C_SINGULAR_TOL:
        return theil()
    denom = c * (c - 1)
    at_zero = math.inf if c > 1 else 0.0
    tail = -1.0 / denom if c > 0 else math.inf
    return Generator(
        f"ge:{c:g}",
        lambda t: (t ** (1 - c) - t) / denom,
        True,
        at_zero,
        tail,
    )


def custom(
    func: Callable[[np.ndarray], np.ndarray], strictly_convex: bool, name: str = "custom"
) -> Generator:
    """Wrap a user generator after a convexity and f(1)=0 spot-check."""
    t = np.logspace(-6, 6, 2001)
    v = np.asarray(func(t), dtype=float)
    if not np.all(np.isfinite(v)):
        raise InvalidMeasure("custom generator must be finite on t > 0")
    if abs(float(np.asarray(func(np.asarray([1.0])))[0])) > 1e-9:
        raise InvalidMeasure("custom generator must satisfy f(1) = 0")
    # midpoint test over the grid; robust to kinks, unlike slope differencing
    mid = np.asarray(func((t[:-1] + t[1:]) / 2), dtype=float)
    tol = 1e-9 * np.maximum(1.0, np.abs(v[:-1]) + np.abs(v[1:]))
    if np.any(mid > (v[:-1] + v[1:]) / 2 + tol):
        raise InvalidMeasure("custom generator failed the convexity check")
    big = 1e12
    at_zero = float(func(1e-12))
    tail = float(func(big) / big)
    return Generator(name, func, strictly_convex, at_zero, tail)


@dataclass(frozen=True)
class MeasureSpec:
    """Generator plus the reference-mixing parameter p in [0, 1]."""

    f: Generator
    p: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise InvalidMeasure("p must lie in [0, 1]")


def r_fp(v: tuple[float, float], spec: MeasureSpec) -> float:
    """Measure of one column vector; non-negative, possibly infinite."""
    x, y = float(v[0]), float(v[1])
    if x < 0 or y < 0:
        raise NegativeComponent("vector components must be non-negative")
    a = spec.p * x + (1 - spec.p) * y
    if a == 0:
        if x == 0:
            return 0.0
        return x * spec.f.tail_slope
    return float(a * spec.f(x / a))


def inequality(cols: WeightedColumns, spec: MeasureSpec) -> float:
    """Sum of r over the columns; +inf is propagated explicitly."""
    x = cols.weights
    y = cols.shares
    a = spec.p * x + (1 - spec.p) * y
    pos = a > 0
    terms = np.zeros_like(a)
    if np.any(pos):
        terms[pos] = a[pos] * spec.f(x[pos] / a[pos])
    vanished = ~pos & (x > 0)
    if np.any(vanished):
        terms[vanished] = x[vanished] * spec.f.tail_slope
    if np.any(np.isinf(terms)):
        return math.inf
    return float(terms.sum())


def classic_index(pop: Dataset, gen: Generator) -> float:
    """Direct textbook evaluation of the classic index named by ``gen``.

    Serves as an independent oracle for ``inequality`` at p = 0; do not use
    it as the implementation path.
    """
    s = pop.indicators
    n = len(pop)
    mean = pop.mean
    if mean <= 0:
        raise DegeneratePopulation("population mean is zero")
    rel = s / mean
    if gen.name == "pietra":
        return float(np.abs(s - mean).sum() / (2 * n * mean))
    if gen.name == "theil":
        pos = rel > 0
        return float((rel[pos] * np.log(rel[pos])).sum() / n)
    if gen.name == "mld":
        if np.any(rel == 0):
            return math.inf
        return float(-np.log(rel).sum() / n)
    if gen.name.startswith("ge:"):
        c = float(gen.name.split(":", 1)[1])
        if np.any(rel == 0) and c < 0:
            return math.inf
        with np.errstate(divide="ignore"):
            powered = rel**c
        if np.any(np.isinf(powered)):
            return math.inf
        return float((powered - 1).sum() / (n * c * (c - 1)))
    raise InvalidMeasure(f"no classic formula for generator {gen.name!r}")


def atkinson(pop: Dataset, eps: float) -> float:
    """Atkinson index 1 - (generalized mean of order 1-eps)/mean."""
    if eps <= 0:
        raise InvalidMeasure("atkinson requires eps > 0")
    s = pop.indicators
    mean = pop.mean
    if mean <= 0:
        raise DegeneratePopulation("population mean is zero")
    if eps == 1:
        if np.any(s == 0):
            return 1.0
        gm = math.exp(float(np.log(s).mean()))
        return 1.0 - gm / mean
    q = 1.0 - eps
    with np.errstate(divide="ignore"):
        powered = np.where(s > 0, s, np.nan) ** q
        powered = np.where(s > 0, powered, 0.0 if q > 0 else math.inf)
    m = float(powered.mean())
    if math.isinf(m):
        return 1.0  # eps > 1 with a zero indicator: generalized mean is 0
    return 1.0 - m ** (1.0 / q) / mean


def atkinson_transform(x: float, eps: float) -> float:
    """Monotone map taking the GE(1-eps) f-inequality to the Atkinson index."""
    if eps <= 0:
        raise InvalidMeasure("atkinson requires eps > 0")
    if x < 0:
        raise TransformDomainError("f-inequality input must be non-negative")
    c = 1.0 - eps
    if abs(c) < _C_SINGULAR_TOL:
        return 1.0 - math.exp(-x)  # MLD route at eps = 1
    if math.isinf(x):
        if c < 0:
            return 1.0
        raise TransformDomainError("infinite input outside transform domain")
    base = 1.0 + c * (c - 1.0) * x
    if base < 0:
        raise TransformDomainError(f"1 + c(c-1)x = {base:g} < 0")
    return 1.0 - base ** (1.0 / c)


_GENERATOR_ALIASES = {
    "pietra": pietra,
    "theil": theil,
    "mld": mld,
}


def parse_measure(text: str) -> tuple[str, object]:
    """Parse the measure grammar shared with the CLI.

    Returns ("f", MeasureSpec) for f-inequality measures and
    ("atkinson", eps) for the Atkinson index.
    """
    text = text.strip()
    p = 0.0
    if "@" in text:
        base, _, suffix = text.partition("@")
        if not suffix.startswith("p="):
            raise InvalidMeasure(f"bad measure suffix {suffix!r}; expected p=<value>")
        try:
            p = float(suffix[2:])
        except ValueError as exc:
            raise InvalidMeasure(f"bad p value in {text!r}") from exc
        text = base
    if text in _GENERATOR_ALIASES:
        return "f", MeasureSpec(_GENERATOR_ALIASES[text](), p)
    if text.startswith("ge:"):
        try:
            c = float(text[3:])
        except ValueError as exc:
            raise InvalidMeasure(f"bad GE parameter in {text!r}") from exc
        return "f", MeasureSpec(ge(c), p)
    if text.startswith("atkinson:"):
        try:
            eps = float(text[9:])
        except ValueError as exc:
            raise InvalidMeasure(f"bad Atkinson parameter in {text!r}") from exc
        if eps <= 0:
            raise InvalidMeasure("atkinson requires eps > 0")
        if p != 0.0:
            raise InvalidMeasure("atkinson does not take a p parameter")
        return "atkinson", eps
    raise InvalidMeasure(f"unknown measure {text!r}")
