"""Nodal index set and rhodonea nodes.

The nodes are two interlacing polar grids indexed by integer pairs
``(i1, i2)`` with ``0 <= i1 <= m1``, ``-2 m2 < i2 <= 2 m2``, ``i1 + i2`` even
and ``i2 <= 0`` on the center row ``i1 = m1``. Index ``(i1, i2)`` sits at
radius ``cos(i1 pi / (2 m1))`` and angle ``i2 pi / (2 m2)``.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .curve import FrequencyPair, RhodoneaCurve, SampleClock, as_freq, dedupe_points, eval_curve


@dataclass(frozen=True)
class DiskPoint:
    r: float
    theta: float
    x: float
    y: float

    @classmethod
    def from_polar(cls, r: float, theta: float) -> "DiskPoint":
        return cls(r, theta, r * np.cos(theta), r * np.sin(theta))


@dataclass(frozen=True, eq=False)
class NodalIndexSet:
    """Index set ``I^(m)`` in lexicographic ``(i1, i2)`` order.

    ``i1``, ``i2`` and ``weights`` are parallel read-only arrays. The weight
    of an index is ``1/(4 m1 m2)`` on the boundary row ``i1 = 0`` and twice
    that elsewhere; they sum to one.
    """

    freq: FrequencyPair
    i1: np.ndarray
    i2: np.ndarray
    weights: np.ndarray

    def __len__(self):
        return len(self.i1)

    @property
    def indices(self) -> list[tuple[int, int]]:
        return list(zip(self.i1.tolist(), self.i2.tolist()))

    @property
    def even_mask(self) -> np.ndarray:
        return self.i1 % 2 == 0

    @property
    def odd_mask(self) -> np.ndarray:
        return self.i1 % 2 == 1

    @property
    def even_part(self) -> list[tuple[int, int]]:
        return [ij for ij, e in zip(self.indices, self.even_mask) if e]

    @property
    def odd_part(self) -> list[tuple[int, int]]:
        return [ij for ij, e in zip(self.indices, self.odd_mask) if e]

    @property
    def center_mask(self) -> np.ndarray:
        return self.i1 == self.freq.m1

    @property
    def boundary_mask(self) -> np.ndarray:
        return self.i1 == 0

    @property
    def r(self) -> np.ndarray:
        return node_radius(self.i1, self.freq.m1)

    @property
    def theta(self) -> np.ndarray:
        return node_angle(self.i2, self.freq.m2)

    def xy(self) -> np.ndarray:
        r, th = self.r, self.theta
        return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)

    def position(self, i) -> int:
        """Row of index ``i`` in canonical order; ``KeyError`` if absent."""
        return _positions(self.freq)[tuple(int(v) for v in i)]

    def __contains__(self, i) -> bool:
        try:
            self.position(i)
        except (KeyError, TypeError, ValueError):
            return False
        return True

    def exact_weights(self) -> list[Fraction]:
        n = 4 * self.freq.m1 * self.freq.m2
        return [Fraction(1 if a == 0 else 2, n) for a in self.i1.tolist()]


def node_radius(i1, m1: int):
    """``cos(i1 pi / (2 m1))``, written as a sine so the center is exactly 0."""
    return np.sin((m1 - np.asarray(i1)) * np.pi / (2 * m1))


def node_angle(i2, m2: int):
    return np.asarray(i2) * np.pi / (2 * m2)


def is_node_index(freq, i1: int, i2: int) -> bool:
    m1, m2 = as_freq(freq)
    return (
        0 <= i1 <= m1
        and -2 * m2 < i2 <= 2 * m2
        and (i1 + i2) % 2 == 0
        and not (i1 == m1 and i2 > 0)
    )


@lru_cache(maxsize=64)
def _build(freq: FrequencyPair) -> NodalIndexSet:
    m1, m2 = freq
    a, b = np.meshgrid(np.arange(m1 + 1), np.arange(-2 * m2 + 1, 2 * m2 + 1), indexing="ij")
    a, b = a.ravel(), b.ravel()
    keep = ((a + b) % 2 == 0) & ~((a == m1) & (b > 0))
    i1, i2 = a[keep], b[keep]
    weights = np.where(i1 == 0, 1.0, 2.0) / (4 * m1 * m2)
    for arr in (i1, i2, weights):
        arr.setflags(write=False)
    return NodalIndexSet(freq, i1, i2, weights)


@lru_cache(maxsize=64)
def _positions(freq: FrequencyPair) -> dict:
    nodes = _build(freq)
    return {ij: k for k, ij in enumerate(nodes.indices)}


def build_index_set(freq) -> NodalIndexSet:
    return _build(as_freq(freq))


def node_coords(freq, i) -> DiskPoint:
    freq = as_freq(freq)
    i1, i2 = (int(v) for v in i)
    if not is_node_index(freq, i1, i2):
        raise ValueError(f"{(i1, i2)} is not in the nodal index set of {tuple(freq)}")
    return DiskPoint.from_polar(float(node_radius(i1, freq.m1)), float(node_angle(i2, freq.m2)))


def _wrap(value: int, half: int) -> int:
    """Representative of ``value mod 2*half`` in ``(-half, half]``."""
    value %= 2 * half
    return value - 2 * half if value > half else value


def index_from_sample(freq, l: int, rho: int) -> tuple[int, int]:
    """Nodal index hit by sample ``l`` of the curve rotated by ``rho / m2``.

    Solves ``i1 = u (v l + (1 - v) m1) mod 4 m1`` and
    ``i2 = l - 2 rho - (1 - v) m2 mod 4 m2`` over ``u, v in {-1, 1}``.
    The solution index is unique even where several ``(u, v)`` work.
    """
    freq = as_freq(freq)
    m1, m2 = freq
    if not 0 <= l < 4 * m1 * m2 // freq.g:
        raise ValueError(f"sample index {l} outside [0, {4 * m1 * m2 // freq.g})")
    if not 0 <= rho < 2 * freq.g:
        raise ValueError(f"rotation index {rho} outside [0, {2 * freq.g})")
    found = set()
    for v in (1, -1):
        i2 = _wrap(l - 2 * rho - (1 - v) * m2, 2 * m2)
        for u in (1, -1):
            i1 = _wrap(u * (v * l + (1 - v) * m1), 2 * m1)
            if is_node_index(freq, i1, i2):
                found.add((i1, i2))
    if len(found) != 1:
        raise AssertionError(f"congruences gave {sorted(found)} for l={l}, rho={rho}")
    return found.pop()


def sample_points(freq) -> np.ndarray:
    """All samples of the ``2 g`` rotated curves, shape ``(2 g, n_samples, 2)``."""
    freq = as_freq(freq)
    t = SampleClock(freq).times()
    return np.stack(
        [eval_curve(RhodoneaCurve(freq, rho / freq.m2), t) for rho in range(2 * freq.g)]
    )


def node_set(freq) -> np.ndarray:
    """Distinct rhodonea nodes as an ``(2 m1 m2 + 1, 2)`` array.

    Index order is kept, the ``m2`` center indices collapse onto one point
    at ``(0, 0)`` in the position of the first of them.
    """
    nodes = build_index_set(freq)
    pts = nodes.xy()
    center = nodes.center_mask
    first = np.argmax(center)
    keep = ~center
    keep[first] = True
    return pts[keep]


def union_of_curve_samples(freq) -> np.ndarray:
    return dedupe_points(sample_points(freq).reshape(-1, 2))


def node_table(freq) -> list[dict]:
    nodes = build_index_set(freq)
    r, th, xy = nodes.r, nodes.theta, nodes.xy()
    return [
        {
            "i1": int(nodes.i1[k]),
            "i2": int(nodes.i2[k]),
            "r": float(r[k]),
            "theta": float(th[k]),
            "x": float(xy[k, 0]),
            "y": float(xy[k, 1]),
            "weight": float(nodes.weights[k]),
        }
        for k in range(len(nodes))
    ]


NODE_COLUMNS = ("i1", "i2", "r", "theta", "x", "y", "weight")


def nodes_to_csv(freq) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(NODE_COLUMNS)
    for row in node_table(freq):
        writer.writerow([repr(row[c]) for c in NODE_COLUMNS])
    return out.getvalue()


def node_metadata(freq) -> dict:
    freq = as_freq(freq)
    nodes = build_index_set(freq)
    return {
        "m1": freq.m1,
        "m2": freq.m2,
        "count": len(nodes),
        "distinct_points": 2 * freq.m1 * freq.m2 + 1,
        "boundary_count": int(nodes.boundary_mask.sum()),
        "center_multiplicity": int(nodes.center_mask.sum()),
    }
