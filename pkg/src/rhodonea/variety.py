"""Algebraic description of the union of rotated rose curves.

A point ``x`` of the disk lies on the rhodonea variety of ``m`` when

    |x|^(2 m2) T_m1(|x|)^2 = H_m2(x)^2,

with ``H_m2`` the harmonic homogeneous polynomial satisfying
``H_m2(cos t, sin t) = cos(m2 t)``. In polar form this is
``T_m1(r)^2 = cos(m2 theta)^2``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb

import numpy as np

from .curve import FrequencyPair, as_freq
from .nodes import is_node_index

_EPS = np.finfo(float).eps


class Extremality(enum.Enum):
    MAX = "max_case"
    ZERO = "zero_case"


@dataclass(frozen=True)
class VarietySpec:
    freq: FrequencyPair

    def __post_init__(self):
        object.__setattr__(self, "freq", as_freq(self.freq))

    @property
    def order(self) -> int:
        return 2 * self.freq.m1 + 2 * self.freq.m2

    @property
    def tolerance(self) -> float:
        return 1e3 * self.order * _EPS


def chebyshev_t(n: int, r):
    """``T_n(r) = cos(n arccos r)`` for ``r`` in ``[-1, 1]``."""
    return np.cos(n * np.arccos(np.clip(r, -1.0, 1.0)))


def h_poly(m2: int, x):
    if m2 < 1:
        raise ValueError("m2 must be >= 1")
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    return sum(
        comb(m2, 2 * k) * (-1) ** k * x1 ** (m2 - 2 * k) * x2 ** (2 * k)
        for k in range(m2 // 2 + 1)
    )


def variety_residual(spec: VarietySpec, x):
    """Cartesian residual of the defining equation; zero on the variety."""
    x = np.asarray(x, dtype=float)
    r2 = x[..., 0] ** 2 + x[..., 1] ** 2
    if np.any(r2 > (1 + 1e-12) ** 2):
        raise ValueError("point outside the closed unit disk")
    m1, m2 = spec.freq
    return r2**m2 * chebyshev_t(m1, np.sqrt(r2)) ** 2 - h_poly(m2, x) ** 2


def variety_residual_polar(spec: VarietySpec, r, theta):
    m1, m2 = spec.freq
    r = np.asarray(r, dtype=float)
    return r ** (2 * m2) * (chebyshev_t(m1, r) ** 2 - np.cos(m2 * np.asarray(theta)) ** 2)


def on_variety(spec: VarietySpec, x) -> np.ndarray:
    return np.abs(variety_residual(spec, x)) <= spec.tolerance


def node_extremality_check(spec: VarietySpec, i) -> Extremality:
    """Classify a node as a joint extremum (even grid) or a joint zero (odd grid)."""
    m1, m2 = spec.freq
    i1, i2 = (int(v) for v in i)
    if not is_node_index(spec.freq, i1, i2):
        raise ValueError(f"{(i1, i2)} is not a nodal index for {(m1, m2)}")
    t = chebyshev_t(m1, np.cos(i1 * np.pi / (2 * m1))) ** 2
    c = np.cos(m2 * i2 * np.pi / (2 * m2)) ** 2
    if abs(t - 1) <= 1e-12 and abs(c - 1) <= 1e-12:
        return Extremality.MAX
    if abs(t) <= 1e-12 and abs(c) <= 1e-12:
        return Extremality.ZERO
    raise AssertionError(f"node {(i1, i2)} is neither a joint extremum nor a joint zero")
