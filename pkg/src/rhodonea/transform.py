"""Fast coefficient transforms between node data and spectral coefficients.

The data ``f`` on the nodal index set is extended to a ``4 m1 x 4 m2``
periodic grid so that one two-dimensional FFT gives every weighted inner
product ``<f, chi_gamma>`` at once. Grid positions are stored at offset
``i mod 4 m``. With ``scipy.fft`` conventions the kernel
``exp(-2 pi 1j k n / N)`` at ``N = 4 m`` equals ``exp(-1j gamma i pi / (2 m))``,
the conjugate of the discrete basis.

The ``direct_*`` functions compute the same quantities by explicit
summation over the nodes and serve as independent oracles.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import fft, sparse

from .curve import FrequencyPair, as_freq
from .nodes import build_index_set
from .spectral import (
    SpectralIndexSet,
    chi_matrix,
    chi_real_matrix,
    complex_norm_sq,
)

BASES = ("complex", "real")


@dataclass(frozen=True, eq=False)
class DataGrid:
    """Values on the nodal index set, in canonical index order."""

    freq: FrequencyPair
    values: np.ndarray

    def __post_init__(self):
        freq = as_freq(self.freq)
        object.__setattr__(self, "freq", freq)
        values = np.asarray(self.values)
        if values.dtype.kind not in "fc":
            values = values.astype(float)
        n = (2 * freq.m1 + 1) * freq.m2
        if values.shape != (n,):
            raise ValueError(f"expected {n} values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    def __len__(self):
        return len(self.values)

    @property
    def is_real(self) -> bool:
        return self.values.dtype.kind == "f" or not np.any(self.values.imag)

    @property
    def center_values(self) -> np.ndarray:
        return self.values[build_index_set(self.freq).center_mask]

    def in_ld(self, tol: float = 0.0) -> bool:
        """Whether all center indices carry the same value (within ``tol``)."""
        c = self.center_values
        return bool(np.all(np.abs(c - c[0]) <= tol))

    @property
    def center_value(self):
        """Mean of the center-row values; the center value for data in ``L_D``."""
        return self.center_values.mean()

    def __add__(self, other: "DataGrid") -> "DataGrid":
        _check_freq(self.freq, other.freq)
        return DataGrid(self.freq, self.values + other.values)

    def __mul__(self, scalar) -> "DataGrid":
        return DataGrid(self.freq, scalar * self.values)

    __rmul__ = __mul__


@dataclass(frozen=True, eq=False)
class ExtendedGrid:
    """Symmetric extension on the ``4 m1 x 4 m2`` group, stored at offsets ``i mod 4m``."""

    freq: FrequencyPair
    values: np.ndarray

    def at(self, i1: int, i2: int):
        m1, m2 = self.freq
        return self.values[i1 % (4 * m1), i2 % (4 * m2)]


@dataclass(frozen=True, eq=False)
class CoefficientSet:
    """Expansion coefficients attached to frequency indices ``(g1, g2)``.

    Attributes
    ----------
    basis : {'complex', 'real'}
        ``'real'`` coefficients multiply ``T_g1(r) cos(g2 theta)`` or
        ``T_g1(r) sin(g2 theta)`` as given by ``trig``.
    trig : ndarray of str or None
        Per-index ``'cos'``/``'sin'`` for the real basis.
    spectral : SpectralIndexSet or None
        The spectral set the indices come from; ``None`` for averaged sets,
        which have more indices than a spectral set.
    kind : str
        Label written to coefficient files.
    """

    freq: FrequencyPair
    g1: np.ndarray
    g2: np.ndarray
    values: np.ndarray
    basis: str = "complex"
    trig: np.ndarray | None = None
    spectral: SpectralIndexSet | None = None
    kind: str = "rectangular"

    def __post_init__(self):
        if self.basis not in BASES:
            raise ValueError(f"basis must be one of {BASES}")
        if self.basis == "real" and self.trig is None:
            raise ValueError("real coefficients need a cos/sin label per index")
        if not len(self.g1) == len(self.g2) == len(self.values):
            raise ValueError("index and value arrays differ in length")

    def __len__(self):
        return len(self.values)

    @property
    def indices(self) -> list[tuple[int, int]]:
        return list(zip(self.g1.tolist(), self.g2.tolist()))

    def as_dict(self) -> dict:
        return {p: v for p, v in zip(self.indices, self.values.tolist())}

    def to_dict(self) -> dict:
        vals = np.asarray(self.values, dtype=complex)
        out = {
            "m1": self.freq.m1,
            "m2": self.freq.m2,
            "spectral_kind": self.kind,
            "basis": self.basis,
            "entries": [
                {"g1": a, "g2": b, "re": float(v.real), "im": float(v.imag)}
                for (a, b), v in zip(self.indices, vals)
            ],
        }
        if self.trig is not None:
            for entry, t in zip(out["entries"], self.trig.tolist()):
                entry["trig"] = t
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _check_freq(a, b):
    if as_freq(a) != as_freq(b):
        raise ValueError(f"frequency mismatch: {tuple(a)} vs {tuple(b)}")


def _values(f) -> np.ndarray:
    return f.values if isinstance(f, DataGrid) else np.asarray(f)


@lru_cache(maxsize=32)
def _scatter(freq: FrequencyPair):
    """Flat offsets of the four copies of every node index in the extended grid.

    Returned sorted, with the node position each offset copies from, so the
    extension writes memory in order.
    """
    m1, m2 = freq
    nodes = build_index_set(freq)
    n1, n2 = 4 * m1, 4 * m2
    a, b = nodes.i1, nodes.i2
    rows = np.stack([a, -a, 2 * m1 - a, a - 2 * m1]) % n1
    cols = np.stack([b, b, b + 2 * m2, b + 2 * m2]) % n2
    flat = (rows * n2 + cols).ravel()
    source = np.tile(np.arange(len(nodes)), 4)
    order = np.argsort(flat, kind="stable")
    flat, source = flat[order], source[order]
    for arr in (flat, source):
        arr.setflags(write=False)
    return flat, source


@lru_cache(maxsize=32)
def _spectral_offsets(spectral: SpectralIndexSet):
    m1, m2 = spectral.freq
    n1, n2 = 4 * m1, 4 * m2
    flat = spectral.g1 % n1 * n2 + spectral.g2 % n2
    # positions in the half spectrum of a real grid, conjugated where mirrored
    k2 = spectral.g2 % n2
    mirrored = k2 > n2 // 2
    half_flat = np.where(
        mirrored, (-spectral.g1) % n1 * (n2 // 2 + 1) + (n2 - k2), spectral.g1 % n1 * (n2 // 2 + 1) + k2
    )
    norms = spectral.norm_array
    real_norms = spectral.real_norm_array
    is_cos = spectral.real_kind == "cos"
    for arr in (flat, half_flat, mirrored, norms, real_norms, is_cos):
        arr.setflags(write=False)
    return flat, half_flat, mirrored, norms, real_norms, is_cos


def extend_data(f: DataGrid) -> ExtendedGrid:
    """Symmetric extension ``g`` of ``f / (8 m1 m2)`` to the ``4 m1 x 4 m2`` group.

    Each index ``i`` is copied to ``i``, its reflection ``(-i1, i2)``, its
    flip ``(2 m1 - i1, i2 + 2 m2)`` and the reflected flip. The copies of
    distinct indices never collide, so positions are assigned, not summed.
    """
    freq = f.freq
    m1, m2 = freq
    vals = np.asarray(f.values)
    g = np.zeros(16 * m1 * m2, dtype=np.result_type(vals.dtype, float))
    flat, source = _scatter(freq)
    g[flat] = (vals / (8 * m1 * m2))[source]
    return ExtendedGrid(freq, g.reshape(4 * m1, 4 * m2))


def weighted_fourier(f: DataGrid) -> np.ndarray:
    """All inner products ``<f, chi_gamma>`` as a ``4 m1 x 4 m2`` array at offsets ``gamma mod 4m``."""
    return fft.fft2(extend_data(f).values)


def _fourier_on(f: DataGrid, spectral: SpectralIndexSet) -> np.ndarray:
    """``<f, chi_gamma>`` for the indices of ``spectral``; real data takes the half-size FFT."""
    flat, half_flat, mirrored, _, _, _ = _spectral_offsets(spectral)
    ext = extend_data(f).values
    if ext.dtype.kind == "c":
        return fft.fft2(ext, overwrite_x=True).ravel()[flat]
    vals = fft.rfft2(ext).ravel()[half_flat]
    vals.imag[mirrored] *= -1
    return vals


def forward_coeffs(f: DataGrid, spectral: SpectralIndexSet) -> CoefficientSet:
    """Complex coefficients ``c_gamma = <f, chi_gamma> / ||chi_gamma||^2`` via one FFT."""
    _check_freq(f.freq, spectral.freq)
    norms = _spectral_offsets(spectral)[3]
    return _complex_set(spectral, _fourier_on(f, spectral) / norms)


def forward_coeffs_real(f: DataGrid, spectral: SpectralIndexSet) -> CoefficientSet:
    """Coefficients in the real basis; cosine terms use ``Re``, sine terms ``-Im`` of the FFT."""
    _check_freq(f.freq, spectral.freq)
    vals = np.asarray(f.values)
    if vals.dtype.kind == "c":
        if np.any(vals.imag):
            raise ValueError("the real transform needs real-valued data")
        f = DataGrid(f.freq, vals.real)
    _, _, _, _, real_norms, is_cos = _spectral_offsets(spectral)
    ghat = _fourier_on(f, spectral)
    coeffs = np.where(is_cos, ghat.real, -ghat.imag) / real_norms
    return _real_set(spectral, coeffs)


def _complex_set(spectral, values) -> CoefficientSet:
    return CoefficientSet(
        spectral.freq, spectral.g1, spectral.g2, values, "complex", None, spectral, spectral.kind
    )


def _real_set(spectral, values) -> CoefficientSet:
    return CoefficientSet(
        spectral.freq,
        spectral.g1,
        spectral.g2,
        values,
        "real",
        spectral.real_kind,
        spectral,
        spectral.kind,
    )


def coefficient_set(spectral: SpectralIndexSet, values, basis: str = "complex") -> CoefficientSet:
    """Wrap raw coefficient values given in the canonical order of ``spectral``."""
    values = np.asarray(values)
    if values.shape != (len(spectral),):
        raise ValueError(f"expected {len(spectral)} values, got shape {values.shape}")
    if basis == "real":
        return _real_set(spectral, values.astype(float))
    return _complex_set(spectral, values.astype(complex))


def complex_expansion(c: CoefficientSet):
    """Rewrite ``c`` as complex terms ``(g1, g2, value)`` of ``T_g1(r) exp(1j g2 theta)``.

    Real-basis terms split into two exponentials with opposite ``g2``; the
    returned ``g2`` may then leave the range ``(-2 m2, 2 m2]``.
    """
    if c.basis == "complex":
        return c.g1, c.g2, np.asarray(c.values, dtype=complex)
    vals = np.asarray(c.values, dtype=float)
    is_cos = c.trig == "cos"
    plus = np.where(is_cos, vals / 2, vals / 2j)
    minus = np.where(is_cos, vals / 2, -vals / 2j)
    return (
        np.concatenate([c.g1, c.g1]),
        np.concatenate([c.g2, -c.g2]),
        np.concatenate([plus, minus]),
    )


def _scatter_matrix(freq, g1, g2, trig, half: bool):
    """Sparse map from coefficients to the spectrum ``h`` on the group.

    Real-basis terms split into two exponentials first. Off the lines
    ``g1 in {0, 2 m1}`` half of each term goes to ``(g1, g2)`` and half to
    ``(-g1, g2)`` so that the pair sums to the cosine factor. With ``half``
    only the columns ``0 <= g2 <= 2 m2`` read by ``irfft2`` are kept.
    """
    m1, m2 = freq
    n1, n2 = 4 * m1, 4 * m2
    src = np.arange(len(g1))
    if trig is None:
        factor = np.ones(len(g1), dtype=complex)
    else:
        is_cos = trig == "cos"
        plus = np.where(is_cos, 0.5, -0.5j)
        src, g1, g2 = np.concatenate([src, src]), np.concatenate([g1, g1]), np.concatenate([g2, -g2])
        factor = np.concatenate([plus, np.where(is_cos, 0.5, 0.5j)])
    edge = (g1 == 0) | (g1 == 2 * m1)
    factor = np.where(edge, factor, factor / 2)
    src = np.concatenate([src, src[~edge]])
    rows = np.concatenate([g1, -g1[~edge]]) % n1
    cols = np.concatenate([g2, g2[~edge]]) % n2
    factor = np.concatenate([factor, factor[~edge]])
    width = n2 // 2 + 1 if half else n2
    keep = cols < width
    shape = (n1 * width, int(src.max(initial=-1)) + 1)
    return sparse.csr_matrix((factor[keep], (rows[keep] * width + cols[keep], src[keep])), shape=shape)


@lru_cache(maxsize=64)
def _inverse_plan(spectral: SpectralIndexSet, basis: str):
    trig = spectral.real_kind if basis == "real" else None
    return _scatter_matrix(spectral.freq, spectral.g1, spectral.g2, trig, basis == "real")


@lru_cache(maxsize=32)
def _gather(freq: FrequencyPair):
    nodes = build_index_set(freq)
    flat = nodes.i1 % (4 * freq.m1) * (4 * freq.m2) + nodes.i2 % (4 * freq.m2)
    flat.setflags(write=False)
    return flat


def inverse_transform(c: CoefficientSet) -> DataGrid:
    """Node values ``f(i) = sum_gamma c_gamma chi_gamma(i)`` via one inverse FFT."""
    freq = c.freq
    n1, n2 = 4 * freq.m1, 4 * freq.m2
    real = c.basis == "real"
    if c.spectral is not None and len(c.spectral) == len(c):
        plan = _inverse_plan(c.spectral, c.basis)
    else:
        plan = _scatter_matrix(freq, c.g1, c.g2, c.trig if real else None, real)
    h = plan @ np.asarray(c.values, dtype=float if real else complex)
    if real:
        # real-basis terms come in conjugate pairs, so h is Hermitian
        grid = fft.irfft2(h.reshape(n1, n2 // 2 + 1), s=(n1, n2), norm="forward")
    else:
        grid = fft.ifft2(h.reshape(n1, n2), norm="forward", overwrite_x=True)
    return DataGrid(freq, grid.ravel()[_gather(freq)])


def averaged_coeffs(f: DataGrid, lam: float = 0.5) -> CoefficientSet:
    """Complex coefficients on the symmetric set ``-m2 <= g2 <= m2``.

    Off the lines ``|g2| = m2`` these are the rectangular coefficients. On
    ``g2 = m2`` the coefficient ``<f, chi> / ||chi||^2`` is scaled by ``lam``
    and on ``g2 = -m2`` by ``1 - lam``. Since ``chi_(g1, -m2)`` agrees on the
    nodes with ``chi_(2 m1 - g1, m2)``, every ``lam`` interpolates ``f``.
    """
    if not 0.0 <= lam <= 1.0:
        raise ValueError("lam must lie in [0, 1]")
    freq = f.freq
    m1, m2 = freq
    pairs = [
        (a, b)
        for a in range(2 * m1 + 1)
        for b in range(-m2, m2 + 1)
        if (a + b) % 2 == 0
    ]
    g1 = np.array([p[0] for p in pairs])
    g2 = np.array([p[1] for p in pairs])
    ghat = weighted_fourier(f)[g1 % (4 * m1), g2 % (4 * m2)]
    norms = np.array([float(complex_norm_sq(freq, p)) for p in pairs])
    scale = np.where(g2 == m2, lam, np.where(g2 == -m2, 1.0 - lam, 1.0))
    return CoefficientSet(freq, g1, g2, scale * ghat / norms, "complex", kind="averaged")


def direct_forward_coeffs(f: DataGrid, spectral: SpectralIndexSet) -> CoefficientSet:
    """Oracle: explicit weighted sums over the nodes."""
    nodes = build_index_set(spectral.freq)
    basis = chi_matrix(spectral, nodes)
    ip = (nodes.weights * np.asarray(f.values)) @ np.conj(basis)
    return _complex_set(spectral, ip / spectral.norm_array)


def direct_forward_coeffs_real(f: DataGrid, spectral: SpectralIndexSet) -> CoefficientSet:
    nodes = build_index_set(spectral.freq)
    basis = chi_real_matrix(spectral, nodes)
    ip = (nodes.weights * np.asarray(f.values, dtype=float)) @ basis
    return _real_set(spectral, ip / spectral.real_norm_array)


def direct_inverse(c: CoefficientSet) -> DataGrid:
    """Oracle: ``f(i) = sum_gamma c_gamma chi_gamma(i)`` summed explicitly."""
    m1, m2 = c.freq
    nodes = build_index_set(c.freq)
    g1, g2, vals = complex_expansion(c)
    basis = np.cos(np.outer(nodes.i1, g1) * np.pi / (2 * m1)) * np.exp(
        1j * np.outer(nodes.i2, g2) * np.pi / (2 * m2)
    )
    values = basis @ vals
    return DataGrid(c.freq, values.real if c.basis == "real" else values)
