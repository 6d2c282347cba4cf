"""Numerical experiments: sup-norm errors, quadrature errors and Lebesgue constants."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field

import numpy as np

from .curve import as_freq
from .interpolation import (
    Interpolant,
    cartesian,
    complex_expansion_matrix,
    evaluate,
    evaluate_grid,
    interpolate,
    lagrange_coefficients,
    polar_grid,
    sample_function,
)
from .nodes import build_index_set
from .quadrature import clenshaw_curtis, disk_mean
from .spectral import SpectralIndexSet, spectral_set
from .variety import chebyshev_t

#: Disk mean of :func:`test_function`, from adaptive quadrature (raw integral 0.03811377782454).
TEST_FUNCTION_MEAN = 0.03811377782453607 / np.pi

FIG7_FREQS = ((10, 11), (20, 21), (30, 31))


def test_function(x):
    """Smooth oscillating Gaussian bump used in the convergence experiments.

    ``exp(-2 ((1.6 x1 - 0.1)^2 + (2.4 x2 - 0.2)^2)) * cos((4 x1 - 0.25)^2 + (6 x2 - 0.5)^2)``
    """
    x = np.asarray(x, dtype=float)
    x1, x2 = x[..., 0], x[..., 1]
    envelope = np.exp(-2 * ((1.6 * x1 - 0.1) ** 2 + (2.4 * x2 - 0.2) ** 2))
    return envelope * np.cos((4 * x1 - 0.25) ** 2 + (6 * x2 - 0.5) ** 2)


test_function.__test__ = False  # not a pytest test
test_function_polar = cartesian(test_function)
test_function_polar.__test__ = False


@dataclass(frozen=True)
class EvalGrid:
    """Where sup-norm errors are measured.

    ``kind='polar'`` is the tensor grid of :func:`polar_grid` with ``shape``
    ``(n_r, n_theta)``. ``kind='lattice'`` is the square lattice
    ``linspace(-1, 1, n) x linspace(-1, 1, n)`` restricted to the closed disk.
    """

    kind: str = "polar"
    shape: tuple = (1000, 1000)

    def __post_init__(self):
        if self.kind not in ("polar", "lattice"):
            raise ValueError("grid kind must be 'polar' or 'lattice'")
        if len(self.shape) != 2 or min(self.shape) < 2:
            raise ValueError("grid sizes must be >= 2")
        if self.kind == "lattice" and self.shape[0] != self.shape[1]:
            raise ValueError("a lattice grid is square")

    def lattice_points(self):
        x = np.linspace(-1.0, 1.0, self.shape[0])
        x1, x2 = np.meshgrid(x, x, indexing="ij")
        r = np.hypot(x1, x2)
        inside = r <= 1.0
        return np.minimum(r[inside], 1.0), np.arctan2(x2[inside], x1[inside]), x1[inside], x2[inside]


#: Square 500 x 500 lattice, the grid behind the reference sup-norm errors of the test function.
FIG7_GRID = EvalGrid("lattice", (500, 500))


def sup_error(interp: Interpolant, func, grid: EvalGrid = EvalGrid()) -> float:
    """``max |P - func|`` over the grid; ``func(r, theta)`` is vectorized."""
    if grid.kind == "polar":
        r, theta = polar_grid(*grid.shape)
        approx = evaluate_grid(interp, r, theta)
        exact = func(r[:, None], theta[None, :])
    else:
        r, theta, _, _ = grid.lattice_points()
        approx = evaluate(interp, r, theta)
        exact = func(r, theta)
    return float(np.max(np.abs(approx - exact)))


def _center_merged(coeffs: np.ndarray, freq) -> np.ndarray:
    """Sum the Lagrange columns of the center indices into one column."""
    center = build_index_set(freq).center_mask
    merged = coeffs[:, center].sum(axis=1, keepdims=True)
    return np.concatenate([coeffs[:, ~center], merged], axis=1)


def lebesgue_function_grid(
    spectral: SpectralIndexSet, grid=(101, 256), basis: str = "complex", chunk: int = 8
) -> np.ndarray:
    """``sum_i |L_i(r, theta)|`` on a polar tensor grid, center indices merged."""
    freq = spectral.freq
    r, theta = polar_grid(*grid)
    coeffs = _center_merged(lagrange_coefficients(spectral, basis), freq)
    rows, cols, tensor = complex_expansion_matrix(spectral, coeffs, basis)
    radial = chebyshev_t(rows[None, :], r[:, None])
    angular = np.exp(1j * np.outer(theta, cols))
    out = np.empty((len(r), len(theta)))
    for s in range(0, len(r), chunk):
        partial = np.tensordot(radial[s : s + chunk], tensor, axes=(1, 0))
        values = np.matmul(angular[None, :, :], partial)
        if basis == "real":
            values = values.real
        out[s : s + chunk] = np.abs(values).sum(axis=-1)
    return out


def lebesgue_estimate(freq, spectral: SpectralIndexSet | None = None, grid=(101, 256), basis="complex") -> float:
    """Lower estimate of the Lebesgue constant: maximum of the Lebesgue function on a grid."""
    freq = as_freq(freq)
    spectral = spectral or spectral_set(freq, "rectangular")
    if spectral.freq != freq:
        raise ValueError("frequency mismatch between freq and spectral set")
    return float(lebesgue_function_grid(spectral, grid, basis).max())


@dataclass
class ExperimentReport:
    """Per-frequency results of a convergence study."""

    freqs: list
    spectral_kind: str
    basis: str
    eval_grid: dict
    sup_error: list = field(default_factory=list)
    Q: list = field(default_factory=list)
    integral: list = field(default_factory=list)
    rel_quad_error: list = field(default_factory=list)
    lebesgue_estimate: list = field(default_factory=list)
    reference_integral: float | None = None

    COLUMNS = ("m1", "m2", "spectral_kind", "sup_error", "Q", "integral", "rel_quad_error", "lebesgue_estimate")

    def rows(self) -> list[dict]:
        return [
            {
                "m1": m[0],
                "m2": m[1],
                "spectral_kind": self.spectral_kind,
                "sup_error": self.sup_error[k],
                "Q": self.Q[k],
                "integral": self.integral[k],
                "rel_quad_error": self.rel_quad_error[k],
                "lebesgue_estimate": self.lebesgue_estimate[k],
            }
            for k, m in enumerate(self.freqs)
        ]

    def to_csv(self) -> str:
        return rows_to_csv(self.rows(), self.COLUMNS)

    def to_dict(self) -> dict:
        out = asdict(self)
        out["freqs"] = [list(m) for m in self.freqs]
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def rows_to_csv(rows, columns) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([format_value(row[c]) for c in columns])
    return out.getvalue()


def format_value(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def convergence_study(
    func=test_function_polar,
    m_list=FIG7_FREQS,
    spectral_kind: str = "rectangular",
    grid: EvalGrid = EvalGrid(),
    basis: str = "real",
    reference: float | None = None,
    lebesgue_grid=(33, 128),
) -> ExperimentReport:
    """Interpolate ``func(r, theta)`` for each frequency pair and collect error measures.

    ``reference`` is the disk mean of ``func``; it is computed by adaptive
    quadrature when omitted. Lebesgue estimates are skipped (``None``) when
    ``lebesgue_grid`` is ``None``.
    """
    m_list = [tuple(as_freq(m)) for m in m_list]
    if not m_list:
        raise ValueError("m_list must not be empty")
    if reference is None:
        reference = TEST_FUNCTION_MEAN if func is test_function_polar else disk_mean(func)
    report = ExperimentReport(
        m_list,
        spectral_kind,
        basis,
        {"kind": grid.kind, "shape": list(grid.shape)},
        reference_integral=float(np.pi * reference),
    )
    for m in m_list:
        spectral = spectral_set(m, spectral_kind)
        data = sample_function(func, m)
        interp = interpolate(data, spectral, basis)
        q = clenshaw_curtis(data).value
        report.sup_error.append(sup_error(interp, func, grid))
        report.Q.append(float(np.real(q)))
        report.integral.append(float(np.real(q) * np.pi))
        report.rel_quad_error.append(float(abs(q - reference) / abs(reference)))
        report.lebesgue_estimate.append(
            None if lebesgue_grid is None else lebesgue_estimate(m, spectral, lebesgue_grid, basis)
        )
    return report


def reproduce_fig7(grid: EvalGrid = FIG7_GRID, lebesgue_grid=None) -> list[ExperimentReport]:
    """Convergence study of :func:`test_function` for both spectral sets, real basis."""
    return [
        convergence_study(
            test_function_polar, FIG7_FREQS, kind, grid, "real", TEST_FUNCTION_MEAN, lebesgue_grid
        )
        for kind in ("triangular", "rectangular")
    ]
