"""Evaluation of spectral interpolants on the disk.

An interpolant is a finite sum of Chebyshev-Fourier terms
``T_g1(r) exp(1j g2 theta)`` (complex basis) or ``T_g1(r) cos(g2 theta)``
and ``T_g1(r) sin(g2 theta)`` (real basis). On tensor grids the sum is
evaluated as a radial matrix product followed by an angular one.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

import numpy as np

from .curve import as_freq
from .nodes import build_index_set
from .spectral import SpectralIndexSet, chi_matrix, chi_real_matrix
from .transform import (
    CoefficientSet,
    DataGrid,
    averaged_coeffs,
    complex_expansion,
    forward_coeffs,
    forward_coeffs_real,
)
from .variety import chebyshev_t

_R_SLACK = 1e-12


def normalize_angle(theta):
    """Map angles into ``(-pi, pi]``."""
    theta = np.asarray(theta, dtype=float)
    return np.pi - np.mod(np.pi - theta, 2 * np.pi)


def _check_radius(r):
    r = np.asarray(r, dtype=float)
    if np.any(r < -_R_SLACK) or np.any(r > 1 + _R_SLACK) or np.any(np.isnan(r)):
        raise ValueError("radius must lie in [0, 1]")
    return np.clip(r, 0.0, 1.0)


def polar_grid(n_r: int, n_theta: int):
    """Tensor evaluation grid on the disk.

    Radii are ``sin(k pi / (2 (n_r - 1)))``, ``k = 0..n_r-1``, i.e. Chebyshev
    points clustered at the boundary and including 0 and 1. Angles are
    ``n_theta`` equispaced values ending at ``pi``. Refining ``(n_r, n_theta)``
    to ``(2 n_r - 1, 2 n_theta)`` keeps all old points.
    """
    if n_r < 2 or n_theta < 2:
        raise ValueError("grid sizes must be >= 2")
    r = np.sin(np.arange(n_r) * np.pi / (2 * (n_r - 1)))
    theta = -np.pi + 2 * np.pi * np.arange(1, n_theta + 1) / n_theta
    return r, theta


@dataclass(frozen=True, eq=False)
class Interpolant:
    """Spectral interpolant given by a coefficient set."""

    coeffs: CoefficientSet

    @property
    def freq(self):
        return self.coeffs.freq

    @property
    def basis_kind(self) -> str:
        return self.coeffs.basis

    def _terms(self):
        g1, g2, vals = complex_expansion(self.coeffs)
        keep = vals != 0
        return g1[keep], g2[keep], vals[keep]

    def _finish(self, values):
        return values.real if self.basis_kind == "real" else values

    def __call__(self, r, theta):
        return evaluate(self, r, theta)

    def evaluate_grid(self, r, theta):
        return evaluate_grid(self, r, theta)


def interpolate(
    f: DataGrid, spectral: SpectralIndexSet, basis: str = "complex"
) -> Interpolant:
    """Interpolant of node data ``f`` in the span of ``spectral``."""
    if basis == "complex":
        return Interpolant(forward_coeffs(f, spectral))
    if basis == "real":
        return Interpolant(forward_coeffs_real(f, spectral))
    if basis == "averaged":
        return Interpolant(averaged_coeffs(f))
    raise ValueError(f"unknown basis {basis!r}")


def evaluate(interp: Interpolant, r, theta, chunk: int = 8192):
    """Evaluate at points ``(r, theta)`` (broadcast against each other)."""
    r = _check_radius(r)
    theta = normalize_angle(theta)
    r, theta = np.broadcast_arrays(r, theta)
    shape = r.shape
    r, theta = r.ravel(), theta.ravel()
    rows, cols, mat = _radial_angular(interp)
    out = np.empty(r.size, dtype=complex)
    for s in range(0, r.size, chunk):
        radial = chebyshev_t(rows[None, :], r[s : s + chunk, None])
        angular = np.exp(1j * theta[s : s + chunk, None] * cols[None, :])
        out[s : s + chunk] = np.einsum("pk,pk->p", radial @ mat, angular)
    return interp._finish(out.reshape(shape))


def _radial_angular(interp: Interpolant):
    """Coefficients as a dense ``(g1, g2)`` matrix with the matching frequency lists."""
    g1, g2, vals = interp._terms()
    rows, row_of = np.unique(g1, return_inverse=True)
    cols, col_of = np.unique(g2, return_inverse=True)
    mat = np.zeros((len(rows), len(cols)), dtype=complex)
    np.add.at(mat, (row_of, col_of), vals)
    return rows, cols, mat


def complex_expansion_matrix(spectral: SpectralIndexSet, coeffs: np.ndarray, basis: str = "complex"):
    """Dense ``(g1, g2, column)`` tensor for many coefficient vectors on one spectral set.

    ``coeffs`` has one row per spectral index. Returns the distinct ``g1``
    and ``g2`` values and the tensor of exponential-form coefficients.
    """
    coeffs = np.asarray(coeffs)
    g1, g2 = spectral.g1, spectral.g2
    if basis == "real":
        is_cos = (spectral.real_kind == "cos")[:, None]
        plus = np.where(is_cos, coeffs / 2, coeffs / 2j)
        minus = np.where(is_cos, coeffs / 2, -coeffs / 2j)
        g1, g2 = np.concatenate([g1, g1]), np.concatenate([g2, -g2])
        coeffs = np.concatenate([plus, minus])
    rows, row_of = np.unique(g1, return_inverse=True)
    cols, col_of = np.unique(g2, return_inverse=True)
    tensor = np.zeros((len(rows), len(cols), coeffs.shape[1]), dtype=complex)
    np.add.at(tensor, (row_of, col_of), coeffs)
    return rows, cols, tensor


def evaluate_grid(interp: Interpolant, r, theta):
    """Evaluate on the tensor grid ``r x theta``; returns shape ``(len(r), len(theta))``."""
    r = _check_radius(np.ravel(r))
    theta = normalize_angle(np.ravel(theta))
    rows, cols, mat = _radial_angular(interp)
    radial = chebyshev_t(rows[None, :], r[:, None])
    angular = np.exp(1j * np.outer(cols, theta))
    return interp._finish((radial @ mat) @ angular)


def sample_function(func, freq) -> DataGrid:
    """Sample ``func(r, theta)`` at the nodes.

    ``func`` is called once with arrays; scalar-only callables are
    vectorized automatically.
    """
    nodes = build_index_set(as_freq(freq))
    r, theta = nodes.r, nodes.theta
    try:
        values = np.asarray(func(r, theta))
        if values.shape != r.shape:
            values = np.broadcast_to(values, r.shape).copy()
    except (TypeError, ValueError):
        values = np.vectorize(func, otypes=[complex])(r, theta)
        if not np.any(values.imag):
            values = values.real
    if values.dtype.kind not in "fc":
        values = values.astype(float)
    return DataGrid(nodes.freq, values)


def cartesian(func):
    """Adapt ``func(x)`` with ``x[..., 0], x[..., 1]`` Cartesian to a polar callable."""

    def polar(r, theta):
        r, theta = np.broadcast_arrays(np.asarray(r, float), np.asarray(theta, float))
        return func(np.stack([r * np.cos(theta), r * np.sin(theta)], axis=-1))

    return polar


def chebyshev_fourier(g1: int, g2: int):
    """The basis function ``T_g1(r) exp(1j g2 theta)`` as a polar callable."""

    def basis(r, theta):
        return chebyshev_t(g1, r) * np.exp(1j * g2 * np.asarray(theta))

    return basis


def lagrange_coefficients(spectral: SpectralIndexSet, basis: str = "complex") -> np.ndarray:
    """Coefficients of all Lagrange functions; column ``j`` belongs to node ``j``.

    ``L_j = w_j sum_gamma conj(chi_gamma(j)) / ||chi_gamma||^2 X_gamma``.
    """
    nodes = build_index_set(spectral.freq)
    if basis == "real":
        return (chi_real_matrix(spectral, nodes) * nodes.weights[:, None]).T / (
            spectral.real_norm_array[:, None]
        )
    mat = np.conj(chi_matrix(spectral, nodes)) * nodes.weights[:, None]
    return mat.T / spectral.norm_array[:, None]


def lagrange(freq, spectral: SpectralIndexSet, j, r, theta, basis: str = "complex"):
    """Lagrange function of node index ``j`` evaluated at ``(r, theta)``."""
    freq = as_freq(freq)
    if freq != spectral.freq:
        raise ValueError("frequency mismatch between freq and spectral set")
    nodes = build_index_set(freq)
    try:
        col = nodes.position(j)
    except KeyError:
        raise ValueError(f"{tuple(j)} is not a nodal index for {tuple(freq)}") from None
    values = lagrange_coefficients(spectral, basis)[:, col]
    cset = CoefficientSet(
        freq,
        spectral.g1,
        spectral.g2,
        values,
        basis,
        spectral.real_kind if basis == "real" else None,
        spectral,
        spectral.kind,
    )
    return evaluate(Interpolant(cset), r, theta)


def center_profile(interp: Interpolant, n_angles: int) -> np.ndarray:
    """Values of the interpolant at the center approached along ``n_angles`` directions."""
    if n_angles < 1:
        raise ValueError("n_angles must be >= 1")
    theta = 2 * np.pi * np.arange(n_angles) / n_angles
    return evaluate_grid(interp, np.zeros(1), theta)[0]


def grid_to_csv(interp: Interpolant, r, theta) -> str:
    """CSV of the interpolant on the tensor grid, row-major over ``(r, theta)``."""
    values = evaluate_grid(interp, r, theta)
    r = np.ravel(r)
    theta = normalize_angle(np.ravel(theta))
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    real = interp.basis_kind == "real"
    writer.writerow(["r", "theta", "value"] if real else ["r", "theta", "re", "im"])
    for a, ra in enumerate(r):
        for b, tb in enumerate(theta):
            v = values[a, b]
            if real:
                writer.writerow([repr(float(ra)), repr(float(tb)), repr(float(v))])
            else:
                writer.writerow(
                    [repr(float(ra)), repr(float(tb)), repr(float(v.real)), repr(float(v.imag))]
                )
    return out.getvalue()
