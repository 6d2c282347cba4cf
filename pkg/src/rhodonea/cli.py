"""Command line interface: ``rhodonea <command> [options]``.

Exit status is 0 on success, 2 for invalid arguments or input data and 1
for runtime failures such as unwritable output paths.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .analysis import (
    FIG7_GRID,
    TEST_FUNCTION_MEAN,
    EvalGrid,
    lebesgue_estimate,
    reproduce_fig7,
    rows_to_csv,
    test_function_polar,
)
from .curve import FrequencyPair
from .interpolation import (
    chebyshev_fourier,
    evaluate,
    grid_to_csv,
    interpolate,
    polar_grid,
    sample_function,
)
from .nodes import NODE_COLUMNS, build_index_set, node_metadata, node_table
from .quadrature import clenshaw_curtis, disk_mean_of_term
from .spectral import spectral_set
from .transform import DataGrid


class UsageError(Exception):
    """Invalid arguments or input data (exit status 2)."""


def _freq(args) -> FrequencyPair:
    try:
        return FrequencyPair(args.m1, args.m2)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _builtin(name: str):
    """Return ``(func, disk_mean or None)`` for a builtin function name."""
    if name == "const1":
        return (lambda r, theta: np.ones(np.broadcast(r, theta).shape)), 1.0
    if name == "fig7":
        return test_function_polar, TEST_FUNCTION_MEAN
    if name.startswith("chebfourier:"):
        try:
            g1, g2 = (int(v) for v in name.split(":", 1)[1].split(","))
        except ValueError:
            raise UsageError(f"bad builtin {name!r}; use chebfourier:g1,g2") from None
        if g1 < 0:
            raise UsageError("chebfourier needs g1 >= 0")
        return chebyshev_fourier(g1, g2), disk_mean_of_term(g1, g2)
    raise UsageError(f"unknown function {name!r}; choose const1, fig7 or chebfourier:g1,g2")


def _read_samples(path: str, freq: FrequencyPair) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    try:
        if path.endswith(".json"):
            data = json.loads(text)
            values = data["values"] if isinstance(data, dict) else data
            values = np.array([complex(v[0], v[1]) if isinstance(v, list) else v for v in values])
        else:
            values = _parse_csv_values(text)
    except (ValueError, KeyError, TypeError, IndexError) as exc:
        raise UsageError(f"malformed samples file {path}: {exc}") from None
    n = (2 * freq.m1 + 1) * freq.m2
    if values.shape != (n,):
        raise UsageError(f"expected {n} values, got {values.size}")
    if values.dtype.kind == "c" and not np.any(values.imag):
        values = values.real
    return values


def _parse_csv_values(text: str) -> np.ndarray:
    rows = [row for row in csv.reader(io.StringIO(text)) if row and row[0].strip()]
    if not rows:
        return np.zeros(0)
    header = [h.strip() for h in rows[0]]
    if "value" in header or "re" in header:
        body = rows[1:]
        if "value" in header:
            k = header.index("value")
            return np.array([float(row[k]) for row in body])
        kr, ki = header.index("re"), header.index("im")
        return np.array([complex(float(row[kr]), float(row[ki])) for row in body])
    return np.array([float(row[-1]) for row in rows])


def _write(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    Path(out).write_text(text)


def _data(args, freq):
    if args.input is not None:
        return DataGrid(freq, _read_samples(args.input, freq)), None
    func, mean = _builtin(args.function)
    return sample_function(func, freq), mean


def cmd_nodes(args) -> int:
    freq = _freq(args)
    if not np.isfinite(args.alpha):
        raise UsageError("alpha must be finite")
    meta = node_metadata(freq)
    table = node_table(freq)
    if args.alpha:
        meta["alpha"] = args.alpha
        for row in table:
            theta = row["theta"] - args.alpha * np.pi
            row["theta"] = float(np.pi - np.mod(np.pi - theta, 2 * np.pi))
            row["x"] = float(row["r"] * np.cos(theta))
            row["y"] = float(row["r"] * np.sin(theta))
    if args.format == "json":
        _write(json.dumps({"metadata": meta, "nodes": table}, indent=2) + "\n", args.out)
    else:
        _write(rows_to_csv(table, NODE_COLUMNS), args.out)
        print(json.dumps(meta), file=sys.stderr)
    return 0


def cmd_interpolate(args) -> int:
    freq = _freq(args)
    data, _ = _data(args, freq)
    spectral = spectral_set(freq, args.spectral)
    if args.basis == "real" and not data.is_real:
        raise UsageError("the real basis needs real data; use --basis complex")
    interp = interpolate(data, spectral, args.basis)
    nodes = build_index_set(freq)
    residual = float(np.max(np.abs(evaluate(interp, nodes.r, nodes.theta) - data.values)))
    _write(json.dumps(interp.coeffs.to_dict(), indent=2) + "\n", args.out)
    if args.eval_grid:
        r, theta = polar_grid(args.grid_r, args.grid_theta)
        Path(args.eval_grid).write_text(grid_to_csv(interp, r, theta))
    print(f"max node residual: {residual:.3e}", file=sys.stderr)
    return 0


def cmd_quadrature(args) -> int:
    freq = _freq(args)
    data, mean = _data(args, freq)
    q = clenshaw_curtis(data).value
    out = {"m1": freq.m1, "m2": freq.m2, "Q": _num(q), "integral": _num(np.pi * q)}
    if mean is not None:
        out["I_ref"] = _num(mean)
        out["I_ref_integral"] = _num(np.pi * mean)
        out["rel_error"] = float(abs(q - mean) / abs(mean)) if mean != 0 else None
    _write(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def _num(v):
    v = complex(v)
    return v.real if v.imag == 0 else [v.real, v.imag]


def cmd_lebesgue(args) -> int:
    freq = _freq(args)
    spectral = spectral_set(freq, args.spectral)
    value = lebesgue_estimate(freq, spectral, (args.grid_r, args.grid_theta), args.basis)
    out = {
        "m1": freq.m1,
        "m2": freq.m2,
        "spectral_kind": spectral.kind,
        "basis": args.basis,
        "grid": [args.grid_r, args.grid_theta],
        "lebesgue_estimate": value,
    }
    _write(json.dumps(out, indent=2) + "\n", args.out)
    return 0


def cmd_reproduce_fig7(args) -> int:
    grid = FIG7_GRID if args.grid == "lattice" else EvalGrid("polar", (args.grid_r, args.grid_theta))
    reports = reproduce_fig7(grid)
    rows = [row for rep in reports for row in rep.rows()]
    columns = ("m1", "m2", "spectral_kind", "sup_error", "Q", "integral", "rel_quad_error")
    if args.format == "json":
        text = json.dumps(
            {
                "eval_grid": {"kind": grid.kind, "shape": list(grid.shape)},
                "reference_integral": reports[0].reference_integral,
                "rows": [{c: row[c] for c in columns} for row in rows],
            },
            indent=2,
        )
        _write(text + "\n", args.out)
    else:
        _write(rows_to_csv(rows, columns), args.out)
    return 0


def _integer(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    return value


def _grid_size(text: str) -> int:
    value = _integer(text)
    if value < 2:
        raise argparse.ArgumentTypeError("grid sizes must be >= 2")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rhodonea", description="Spectral interpolation and quadrature on rhodonea nodes."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, data=False, grid=False):
        p.add_argument("--m1", type=_integer, required=True)
        p.add_argument("--m2", type=_integer, required=True)
        p.add_argument("--spectral", choices=("rect", "triangle"), default="rect")
        p.add_argument("--basis", choices=("real", "complex"), default="real")
        p.add_argument("--out", help="output path (default: stdout)")
        if data:
            src = p.add_mutually_exclusive_group()
            src.add_argument("--in", dest="input", help="samples file (CSV or JSON)")
            src.add_argument("--function", default="fig7", help="const1, fig7 or chebfourier:g1,g2")
        if grid:
            p.add_argument("--grid-r", type=_grid_size, default=101)
            p.add_argument("--grid-theta", type=_grid_size, default=256)

    p = sub.add_parser("nodes", help="export the nodal index set and node coordinates")
    common(p)
    p.add_argument("--alpha", type=float, default=0.0, help="rotate the nodes by -alpha*pi")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(handler=cmd_nodes)

    p = sub.add_parser("interpolate", help="expansion coefficients of the interpolant")
    common(p, data=True, grid=True)
    p.add_argument("--eval-grid", help="also write the interpolant on the polar grid to this CSV")
    p.set_defaults(handler=cmd_interpolate)

    p = sub.add_parser("quadrature", help="Clenshaw-Curtis quadrature on the disk")
    common(p, data=True)
    p.set_defaults(handler=cmd_quadrature)

    p = sub.add_parser("lebesgue", help="estimate the Lebesgue constant on a polar grid")
    common(p, grid=True)
    p.set_defaults(handler=cmd_lebesgue, basis="complex")

    p = sub.add_parser("reproduce-fig7", help="convergence table for the builtin test function")
    p.add_argument("--out")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--grid", choices=("lattice", "polar"), default="lattice")
    p.add_argument("--grid-r", type=_grid_size, default=1000)
    p.add_argument("--grid-theta", type=_grid_size, default=1000)
    p.set_defaults(handler=cmd_reproduce_fig7)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except UsageError as exc:
        parser.exit(2, f"rhodonea: error: {exc}\n")
    except OSError as exc:
        print(f"rhodonea: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
