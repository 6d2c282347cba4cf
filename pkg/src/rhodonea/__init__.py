"""Spectral interpolation and quadrature on the unit disk at rhodonea nodes."""

from .analysis import (
    EvalGrid,
    ExperimentReport,
    convergence_study,
    lebesgue_estimate,
    reproduce_fig7,
    test_function,
)
from .curve import (
    FrequencyPair,
    RhodoneaCurve,
    SampleClock,
    classify_sample,
    curve_nodes,
    eval_curve,
    minimal_period,
)
from .interpolation import Interpolant, center_profile, evaluate, interpolate, lagrange, sample_function
from .nodes import DiskPoint, NodalIndexSet, build_index_set, index_from_sample, node_coords, node_set
from .quadrature import QuadratureResult, clenshaw_curtis, quadrature_weights
from .spectral import (
    SpectralIndexSet,
    chi,
    chi_real,
    flip,
    gamma_omega,
    gamma_rect,
    gamma_triangle,
    inner_product,
)
from .transform import (
    CoefficientSet,
    DataGrid,
    ExtendedGrid,
    averaged_coeffs,
    extend_data,
    forward_coeffs,
    forward_coeffs_real,
    inverse_transform,
)
from .variety import VarietySpec, h_poly, node_extremality_check, variety_residual

__all__ = [name for name in dir() if not name.startswith("_")]
