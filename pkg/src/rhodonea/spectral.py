"""Spectral index sets and the discrete Chebyshev-Fourier bases on the nodes.

For a frequency index ``gamma = (g1, g2)`` the discrete basis function is

    chi_gamma(i) = cos(g1 i1 pi / (2 m1)) * exp(1j g2 i2 pi / (2 m2)).

A spectral index set is a set of ``(2 m1 + 1) m2`` such indices in
``K = [0, 2 m1] x (-2 m2, 2 m2]`` with ``g1 + g2`` even for which these
functions are an orthogonal basis under the weighted node inner product.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .curve import FrequencyPair, as_freq
from .nodes import NodalIndexSet, _wrap, build_index_set

KINDS = ("rectangular", "triangular", "omega")


def in_k(freq, g1: int, g2: int) -> bool:
    m1, m2 = as_freq(freq)
    return 0 <= g1 <= 2 * m1 and -2 * m2 < g2 <= 2 * m2


def flip(freq, gamma) -> tuple[int, int]:
    """Glide reflection ``(2 m1 - g1, g2 + 2 m2)`` on ``K`` (second entry wrapped)."""
    m1, m2 = as_freq(freq)
    g1, g2 = (int(v) for v in gamma)
    if not in_k((m1, m2), g1, g2):
        raise ValueError(f"{(g1, g2)} is outside K for {(m1, m2)}")
    return 2 * m1 - g1, _wrap(g2 + 2 * m2, 2 * m2)


def discrete_integral(freq, g1: int, g2: int) -> int:
    """Exact value of ``sum_i w_i chi_gamma(i)`` for ``g1 + g2`` even.

    It is 1 when ``g1 = 2 h1 m1``, ``g2 = 2 h2 m2`` with ``h1 + h2`` even,
    and 0 otherwise.
    """
    m1, m2 = as_freq(freq)
    if (g1 + g2) % 2:
        raise ValueError("parity condition violated")
    if g1 % (2 * m1) or g2 % (2 * m2):
        return 0
    return 1 if (g1 // (2 * m1) + g2 // (2 * m2)) % 2 == 0 else 0


def complex_norm_sq(freq, gamma) -> Fraction:
    g1, _ = gamma
    return Fraction(1 + discrete_integral(freq, 2 * g1, 0), 2)


def real_norm_sq(freq, gamma, kind: str) -> Fraction:
    """Squared norm of the cosine (``kind='cos'``) or sine real basis function."""
    g1, g2 = gamma
    s = 1 if kind == "cos" else -1
    di = lambda a, b: discrete_integral(freq, a, b)  # noqa: E731
    total = 2 * di(0, 0) + 2 * di(2 * g1, 0) + s * (
        di(2 * g1, 2 * g2) + di(0, 2 * g2) + di(2 * g1, -2 * g2) + di(0, -2 * g2)
    )
    return Fraction(total, 8)


def _real_kind(m1: int, m2: int, g1: int, g2: int, unpaired: bool) -> str:
    if not unpaired:
        return "cos" if g2 >= 0 else "sin"
    # unpaired indices pair up as gamma <-> flip(g1, -g2); on the column
    # g1 = m1 both members share g1, so split them on |g2| instead
    if g1 == m1:
        return "cos" if abs(g2) <= m2 else "sin"
    return "cos" if g1 < m1 else "sin"


@dataclass(frozen=True, eq=False)
class SpectralIndexSet:
    """A spectral index set in lexicographic ``(g1, g2)`` order.

    Attributes
    ----------
    norms, real_norms : tuple of Fraction
        Exact squared norms of the complex and real basis functions.
    upsilon : ndarray of bool
        Indices whose mirror ``(g1, -g2)`` (taken mod ``4 m2``) is not in the set.
    real_kind : ndarray of str
        ``'cos'`` or ``'sin'``: which real basis function an index carries.
    """

    freq: FrequencyPair
    kind: str
    g1: np.ndarray
    g2: np.ndarray
    omega: tuple = ()
    norms: tuple = field(init=False, repr=False)
    real_norms: tuple = field(init=False, repr=False)
    upsilon: np.ndarray = field(init=False, repr=False)
    real_kind: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        m1, m2 = self.freq
        pairs = list(zip(self.g1.tolist(), self.g2.tolist()))
        members = set(pairs)
        if len(members) != (2 * m1 + 1) * m2 or len(pairs) != len(members):
            raise ValueError(f"a spectral set for {(m1, m2)} needs {(2 * m1 + 1) * m2} indices")
        for g1, g2 in pairs:
            if not in_k(self.freq, g1, g2) or (g1 + g2) % 2:
                raise ValueError(f"{(g1, g2)} violates the range or parity condition")
        # the mirror is taken mod 4 m2, so g2 = 2 m2 is its own mirror
        upsilon = np.array([(a, _wrap(-b, 2 * m2)) not in members for a, b in pairs], dtype=bool)
        real_kind = np.array([_real_kind(m1, m2, a, b, u) for (a, b), u in zip(pairs, upsilon)])
        object.__setattr__(self, "norms", tuple(complex_norm_sq(self.freq, p) for p in pairs))
        object.__setattr__(
            self,
            "real_norms",
            tuple(real_norm_sq(self.freq, p, k) for p, k in zip(pairs, real_kind)),
        )
        object.__setattr__(self, "upsilon", upsilon)
        object.__setattr__(self, "real_kind", real_kind)
        for arr in (self.g1, self.g2, upsilon):
            arr.setflags(write=False)

    def __len__(self):
        return len(self.g1)

    @property
    def indices(self) -> list[tuple[int, int]]:
        return list(zip(self.g1.tolist(), self.g2.tolist()))

    @property
    def real_split(self) -> list[tuple[int, int]]:
        return [p for p, u in zip(self.indices, self.upsilon) if u]

    @property
    def norm_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.norms])

    @property
    def real_norm_array(self) -> np.ndarray:
        return np.array([float(v) for v in self.real_norms])

    def position(self, gamma) -> int:
        return self._lookup()[tuple(int(v) for v in gamma)]

    def __contains__(self, gamma) -> bool:
        return tuple(int(v) for v in gamma) in self._lookup()

    def _lookup(self) -> dict:
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = {p: k for k, p in enumerate(self.indices)}
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def same_indices(self, other: "SpectralIndexSet") -> bool:
        return self.freq == other.freq and self.indices == other.indices

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "m1": self.freq.m1,
            "m2": self.freq.m2,
            "indices": [list(p) for p in self.indices],
            "upsilon": [list(p) for p in self.real_split],
        }
        if self.kind == "omega":
            out["omega"] = [list(p) for p in self.omega]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _from_pairs(freq, kind, pairs, omega=()) -> SpectralIndexSet:
    pairs = sorted(pairs)
    arr = np.array(pairs, dtype=int).reshape(-1, 2)
    return SpectralIndexSet(freq, kind, arr[:, 0].copy(), arr[:, 1].copy(), tuple(sorted(omega)))


def _k_even(freq):
    m1, m2 = freq
    return [
        (a, b)
        for a in range(2 * m1 + 1)
        for b in range(-2 * m2 + 1, 2 * m2 + 1)
        if (a + b) % 2 == 0
    ]


@lru_cache(maxsize=64)
def _rect(freq: FrequencyPair) -> SpectralIndexSet:
    m2 = freq.m2
    return _from_pairs(freq, "rectangular", [p for p in _k_even(freq) if -m2 < p[1] <= m2])


@lru_cache(maxsize=64)
def _triangle(freq: FrequencyPair) -> SpectralIndexSet:
    # g1/(2 m1) + |g2|/(2 m2) < 1, plus the rectangular half of the hypotenuse
    m1, m2 = freq
    rect = set(_rect(freq).indices)
    pairs = []
    for a, b in _k_even(freq):
        level = a * m2 + abs(b) * m1
        if level < 2 * m1 * m2 or (level == 2 * m1 * m2 and (a, b) in rect):
            pairs.append((a, b))
    return _from_pairs(freq, "triangular", pairs)


def gamma_rect(freq) -> SpectralIndexSet:
    return _rect(as_freq(freq))


def gamma_triangle(freq) -> SpectralIndexSet:
    return _triangle(as_freq(freq))


def triangle_omega(freq) -> list[tuple[int, int]]:
    """The subset of the rectangular set whose flip yields the triangular set."""
    m1, m2 = as_freq(freq)
    return [
        (a, b)
        for a, b in gamma_rect((m1, m2)).indices
        if a * m2 + abs(b) * m1 > 2 * m1 * m2
    ]


def gamma_omega(freq, omega) -> SpectralIndexSet:
    """``(rect minus omega)`` united with the flips of ``omega``."""
    freq = as_freq(freq)
    rect = gamma_rect(freq).indices
    omega = {tuple(int(v) for v in p) for p in omega}
    extra = omega - set(rect)
    if extra:
        raise ValueError(f"omega must be a subset of the rectangular set; offending {sorted(extra)}")
    pairs = [p for p in rect if p not in omega] + [flip(freq, p) for p in omega]
    return _from_pairs(freq, "omega", pairs, omega)


def spectral_set(freq, kind: str = "rectangular", omega=None) -> SpectralIndexSet:
    kind = {"rect": "rectangular", "triangle": "triangular"}.get(kind, kind)
    if kind == "rectangular":
        return gamma_rect(freq)
    if kind == "triangular":
        return gamma_triangle(freq)
    if kind == "omega":
        return gamma_omega(freq, omega or ())
    raise ValueError(f"unknown spectral kind {kind!r}; expected one of {KINDS}")


def random_omega(freq, rng, fraction: float = 0.5) -> list[tuple[int, int]]:
    rect = gamma_rect(freq).indices
    pick = rng.random(len(rect)) < fraction
    return [p for p, keep in zip(rect, pick) if keep]


def chi(freq, gamma, i) -> complex:
    m1, m2 = as_freq(freq)
    g1, g2 = gamma
    i1, i2 = i
    return np.cos(g1 * i1 * np.pi / (2 * m1)) * np.exp(1j * g2 * i2 * np.pi / (2 * m2))


def chi_real(spectral: SpectralIndexSet, gamma, i) -> float:
    """Real basis function attached to ``gamma`` within ``spectral``."""
    if gamma not in spectral:
        raise ValueError(f"{tuple(gamma)} is not in the spectral set")
    m1, m2 = spectral.freq
    g1, g2 = gamma
    i1, i2 = i
    radial = np.cos(g1 * i1 * np.pi / (2 * m1))
    angle = g2 * i2 * np.pi / (2 * m2)
    if spectral.real_kind[spectral.position(gamma)] == "cos":
        return radial * np.cos(angle)
    return radial * np.sin(angle)


def chi_matrix(spectral: SpectralIndexSet, nodes: NodalIndexSet | None = None) -> np.ndarray:
    """Matrix ``chi_gamma(i)`` with node rows and spectral columns."""
    nodes = nodes or build_index_set(spectral.freq)
    m1, m2 = spectral.freq
    radial = np.cos(np.outer(nodes.i1, spectral.g1) * np.pi / (2 * m1))
    return radial * np.exp(1j * np.outer(nodes.i2, spectral.g2) * np.pi / (2 * m2))


def chi_real_matrix(spectral: SpectralIndexSet, nodes: NodalIndexSet | None = None) -> np.ndarray:
    nodes = nodes or build_index_set(spectral.freq)
    m1, m2 = spectral.freq
    radial = np.cos(np.outer(nodes.i1, spectral.g1) * np.pi / (2 * m1))
    angle = np.outer(nodes.i2, spectral.g2) * np.pi / (2 * m2)
    is_cos = spectral.real_kind == "cos"
    return radial * np.where(is_cos, np.cos(angle), np.sin(angle))


def inner_product(freq, f, g) -> complex:
    """Weighted node inner product ``sum_i w_i f(i) conj(g(i))``."""
    nodes = build_index_set(freq)
    f = np.asarray(getattr(f, "values", f))
    g = np.asarray(getattr(g, "values", g))
    if f.shape != (len(nodes),) or g.shape != (len(nodes),):
        raise ValueError(f"grids must have shape ({len(nodes)},), got {f.shape} and {g.shape}")
    return complex(np.sum(nodes.weights * f * np.conj(g)))


def gram_matrix(spectral: SpectralIndexSet, real: bool = False) -> np.ndarray:
    nodes = build_index_set(spectral.freq)
    basis = chi_real_matrix(spectral, nodes) if real else chi_matrix(spectral, nodes)
    return basis.T @ (nodes.weights[:, None] * np.conj(basis))
