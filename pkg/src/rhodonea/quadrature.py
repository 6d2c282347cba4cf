"""Clenshaw-Curtis quadrature on the disk from samples at the rhodonea nodes.

Integrating the interpolant exactly over the disk only involves the purely
radial coefficients ``c_(4k, 0)``:

    (1/pi) int_D P_f = sum_{k=0}^{floor(m1/2)} c_(4k,0)(f) / (1 - 4 k^2).

These coefficients are the same for every spectral set, so the rule does
not depend on the choice of spectral set or of complex versus real basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import integrate

from .curve import as_freq
from .interpolation import Interpolant
from .nodes import build_index_set
from .spectral import complex_norm_sq
from .transform import DataGrid, complex_expansion, weighted_fourier


@dataclass(frozen=True)
class QuadratureResult:
    """Quadrature value normalized to the disk mean; ``integral`` is ``pi * value``."""

    value: complex | float
    coeffs_used: list = field(default_factory=list)

    @property
    def integral(self):
        return np.pi * self.value


def _radial_moments(freq):
    m1 = freq.m1
    ks = np.arange(m1 // 2 + 1)
    idx = [(4 * k, 0) for k in ks.tolist()]
    norms = np.array([float(complex_norm_sq(freq, p)) for p in idx])
    return ks, idx, norms


def disk_mean_of_term(g1: int, g2: int) -> float:
    """``(1/pi) int_D T_g1(r) exp(1j g2 theta)``, the mean of one basis term."""
    if g2 != 0 or g1 % 4:
        return 0.0
    return 1.0 / (1.0 - g1 * g1 / 4.0)


def clenshaw_curtis(f: DataGrid) -> QuadratureResult:
    """Mean value over the disk of the interpolant of ``f``."""
    freq = f.freq
    ks, idx, norms = _radial_moments(freq)
    m1, m2 = freq
    ghat = weighted_fourier(f)[4 * ks % (4 * m1), 0]
    value = np.sum(ghat / norms / (1 - 4 * ks**2))
    vals = np.asarray(f.values)
    value = value.real if vals.dtype.kind == "f" else complex(value)
    return QuadratureResult(float(value) if vals.dtype.kind == "f" else value, idx)


def quadrature_weights(freq) -> np.ndarray:
    """Node weights ``q_i`` with ``Q(f) = sum_i q_i f(i)``, in canonical index order.

    ``q_i = w_i sum_k cos(2 k i1 pi / m1) / (||chi_(4k,0)||^2 (1 - 4 k^2))``.
    """
    freq = as_freq(freq)
    nodes = build_index_set(freq)
    ks, _, norms = _radial_moments(freq)
    radial = np.cos(np.outer(nodes.i1, ks) * 2 * np.pi / freq.m1)
    return nodes.weights * (radial @ (1.0 / (norms * (1 - 4 * ks**2))))


def integrate_interpolant(interp: Interpolant):
    """Exact disk mean of an interpolant, summed term by term."""
    g1, g2, vals = complex_expansion(interp.coeffs)
    moments = np.array([disk_mean_of_term(a, b) for a, b in zip(g1.tolist(), g2.tolist())])
    value = np.sum(vals * moments)
    return float(value.real) if interp.basis_kind == "real" else complex(value)


def disk_mean(func, epsabs: float = 1e-13, epsrel: float = 1e-13) -> float:
    """Reference mean ``(1/pi) int_D func`` by adaptive quadrature in polar coordinates.

    ``func(r, theta)`` must accept scalars and return a real value.
    """
    value, _ = integrate.dblquad(
        lambda r, t: float(func(r, t)) * r,
        -np.pi,
        np.pi,
        0.0,
        1.0,
        epsabs=epsabs,
        epsrel=epsrel,
    )
    return value / np.pi
