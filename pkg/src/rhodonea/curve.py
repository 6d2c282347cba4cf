"""Rhodonea (rose) curves on the unit disk.

A rose curve with frequency pair ``m = (m1, m2)`` and rotation ``alpha``
(given in units of pi) is parametrized as

    rho(t) = cos(m2 t) * (cos(m1 t - alpha pi), sin(m1 t - alpha pi)).

Sampling it at the equidistant times ``t_l = l pi / (2 m1 m2)`` hits every
self-intersection and every boundary-touching point of the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import cKDTree

#: Euclidean tolerance used when deduplicating point sets.
POINT_TOL = 1e-9


@dataclass(frozen=True)
class FrequencyPair:
    """Frequency vector ``(m1, m2)`` of a rhodonea curve."""

    m1: int
    m2: int
    g: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for name in ("m1", "m2"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise TypeError(f"{name} must be an integer, got {value!r}")
            if value < 1:
                raise ValueError(f"{name} must be >= 1, got {value}")
            object.__setattr__(self, name, int(value))
        object.__setattr__(self, "g", math.gcd(self.m1, self.m2))

    @property
    def coprime(self) -> bool:
        return self.g == 1

    @property
    def coprime_sum_parity(self) -> str:
        """``'odd'`` or ``'even'`` parity of ``m1/g + m2/g``."""
        return "odd" if (self.m1 // self.g + self.m2 // self.g) % 2 else "even"

    @property
    def reduced(self) -> "FrequencyPair":
        return FrequencyPair(self.m1 // self.g, self.m2 // self.g)

    def __iter__(self):
        yield self.m1
        yield self.m2


def as_freq(m) -> FrequencyPair:
    if isinstance(m, FrequencyPair):
        return m
    m1, m2 = m
    return FrequencyPair(m1, m2)


@dataclass(frozen=True)
class RhodoneaCurve:
    freq: FrequencyPair
    alpha: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "freq", as_freq(self.freq))
        if not math.isfinite(self.alpha):
            raise ValueError("alpha must be finite")

    def __call__(self, t):
        return eval_curve(self, t)


@dataclass(frozen=True)
class SampleClock:
    """Equidistant sampling times ``t_l = l pi / (2 m1 m2)`` along one period."""

    freq: FrequencyPair

    @property
    def count(self) -> int:
        m1, m2 = self.freq
        return 4 * m1 * m2 // self.freq.g

    def time(self, l):
        m1, m2 = self.freq
        return np.asarray(l) * np.pi / (2 * m1 * m2)

    def times(self) -> np.ndarray:
        return self.time(np.arange(self.count))


def eval_curve(curve: RhodoneaCurve, t):
    """Evaluate the curve at ``t`` (scalar or array); returns ``(..., 2)``."""
    m1, m2 = curve.freq
    t = np.asarray(t, dtype=float)
    radial = np.cos(m2 * t)
    angle = m1 * t - curve.alpha * np.pi
    return np.stack([radial * np.cos(angle), radial * np.sin(angle)], axis=-1)


def minimal_period(freq) -> float:
    freq = as_freq(freq)
    base = 2 * np.pi if freq.coprime_sum_parity == "odd" else np.pi
    return base / freq.g


def classify_sample(freq, l: int) -> int:
    """Number of curve parameters in ``[0, 2 pi)`` mapped to the point at ``t_l``.

    Only defined for relatively prime frequencies; reduce by the gcd first
    otherwise. The center is hit ``2 m2`` times; for an odd sum the
    remaining samples are double points (2) or boundary touches (1), for an
    even sum every point is traversed twice and double points count 4.
    """
    freq = as_freq(freq)
    if not freq.coprime:
        raise ValueError(f"classify_sample needs coprime frequencies, got {tuple(freq)}")
    m1, m2 = freq
    if not 0 <= l < 4 * m1 * m2:
        raise ValueError(f"sample index {l} outside [0, {4 * m1 * m2})")
    if l % (2 * m1) == m1:
        return 2 * m2
    if (m1 + m2) % 2:
        return 2 if l % m1 else 1
    if l % 2 == 0 and (l // 2) % m1:
        return 4
    return 2


def dedupe_points(points, tol: float = POINT_TOL) -> np.ndarray:
    """Remove duplicate rows of an ``(n, 2)`` array up to Euclidean ``tol``.

    The first occurrence of each cluster is kept, in input order.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) == 0:
        return points
    neighbours = cKDTree(points).query_ball_point(points, r=tol)
    keep = np.ones(len(points), dtype=bool)
    for k, near in enumerate(neighbours):
        if keep[k]:
            for j in near:
                if j > k:
                    keep[j] = False
    return points[keep]


def curve_nodes(curve: RhodoneaCurve) -> np.ndarray:
    """Distinct points among the ``4 m1 m2`` equidistant samples of one curve."""
    if not curve.freq.coprime:
        raise ValueError("curve_nodes is defined for coprime frequencies only")
    clock = SampleClock(curve.freq)
    return dedupe_points(eval_curve(curve, clock.times()))
