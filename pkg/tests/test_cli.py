import csv
import io
import json

import numpy as np
import pytest

from rhodonea.cli import main
from rhodonea.interpolation import normalize_angle
from rhodonea.nodes import build_index_set, nodes_to_csv
from rhodonea.spectral import gamma_rect


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def run_exit(argv, capsys):
    with pytest.raises(SystemExit) as info:
        main(argv)
    out, err = capsys.readouterr()
    return info.value.code, out, err


class TestNodes:
    def test_five_three(self, capsys):
        code, out, err = run(["nodes", "--m1", "5", "--m2", "3"], capsys)
        assert code == 0
        assert len(out.splitlines()) == 34
        meta = json.loads(err)
        assert meta["count"] == 33 and meta["distinct_points"] == 31
        assert meta["boundary_count"] == 6 and meta["center_multiplicity"] == 3
        assert out == nodes_to_csv((5, 3))

    def test_one_one_json(self, tmp_path, capsys):
        path = tmp_path / "nodes.json"
        code, _, _ = run(["nodes", "--m1", "1", "--m2", "1", "--format", "json", "--out", str(path)], capsys)
        assert code == 0
        d = json.loads(path.read_text())
        assert len(d["nodes"]) == 3
        assert d["metadata"]["count"] == 3

    def test_rotation(self, capsys):
        _, out, _ = run(["nodes", "--m1", "2", "--m2", "3", "--alpha", "0.5", "--format", "json"], capsys)
        first = json.loads(out)["nodes"][0]
        nodes = build_index_set((2, 3))
        assert first["theta"] == pytest.approx(normalize_angle(nodes.theta[0] - np.pi / 2))
        assert -np.pi < first["theta"] <= np.pi
        assert np.hypot(first["x"], first["y"]) == pytest.approx(nodes.r[0])

    @pytest.mark.parametrize("m1", ["0", "-2", "x", "1.5"])
    def test_invalid_frequency(self, m1, capsys):
        code, _, err = run_exit(["nodes", "--m1", m1, "--m2", "3"], capsys)
        assert code == 2
        assert "usage" in err or "error" in err

    def test_unwritable_path(self, tmp_path, capsys):
        code, _, err = run(["nodes", "--m1", "2", "--m2", "2", "--out", str(tmp_path / "no" / "x.csv")], capsys)
        assert code == 1
        assert "error" in err


class TestInterpolate:
    def test_constant(self, capsys):
        code, out, err = run(["interpolate", "--m1", "4", "--m2", "4", "--function", "const1"], capsys)
        assert code == 0
        entries = json.loads(out)["entries"]
        nonzero = [e for e in entries if abs(e["re"]) > 1e-13 or abs(e["im"]) > 1e-13]
        assert len(nonzero) == 1
        assert (nonzero[0]["g1"], nonzero[0]["g2"]) == (0, 0)
        assert nonzero[0]["re"] == pytest.approx(1)

    def test_builtin_residual(self, capsys):
        code, out, err = run(
            ["interpolate", "--m1", "10", "--m2", "11", "--spectral", "rect", "--basis", "real"], capsys
        )
        assert code == 0
        assert float(err.split(":")[1]) <= 1e-10
        d = json.loads(out)
        assert d["basis"] == "real" and len(d["entries"]) == 21 * 11

    def test_count_mismatch(self, tmp_path, capsys):
        path = tmp_path / "samples.csv"
        path.write_text("value\n" + "\n".join("1.0" for _ in range(10)) + "\n")
        code, _, err = run_exit(["interpolate", "--m1", "5", "--m2", "3", "--in", str(path)], capsys)
        assert code == 2
        assert "expected 33 values" in err

    def test_malformed(self, tmp_path, capsys):
        path = tmp_path / "samples.csv"
        path.write_text("value\nabc\n")
        code, _, err = run_exit(["interpolate", "--m1", "1", "--m2", "1", "--in", str(path)], capsys)
        assert code == 2

    def test_missing_file(self, tmp_path, capsys):
        code, _, _ = run_exit(["interpolate", "--m1", "1", "--m2", "1", "--in", str(tmp_path / "none.csv")], capsys)
        assert code == 2

    def test_samples_file_round_trip(self, tmp_path, capsys):
        freq = (3, 2)
        values = np.random.default_rng(0).normal(size=14)
        path = tmp_path / "samples.csv"
        path.write_text("i1,i2,value\n" + "".join(
            f"{a},{b},{v!r}\n" for (a, b), v in zip(build_index_set(freq).indices, values.tolist())
        ))
        grid = tmp_path / "grid.csv"
        code, out, err = run(
            ["interpolate", "--m1", "3", "--m2", "2", "--in", str(path), "--eval-grid", str(grid),
             "--grid-r", "3", "--grid-theta", "4"],
            capsys,
        )
        assert code == 0
        assert float(err.split(":")[1]) <= 1e-12
        rows = list(csv.DictReader(io.StringIO(grid.read_text())))
        assert len(rows) == 12 and set(rows[0]) == {"r", "theta", "value"}

    def test_complex_json_samples(self, tmp_path, capsys):
        path = tmp_path / "samples.json"
        path.write_text(json.dumps({"values": [[1.0, 2.0]] * 3}))
        code, out, _ = run(["interpolate", "--m1", "1", "--m2", "1", "--in", str(path), "--basis", "complex"], capsys)
        assert code == 0
        entries = {(e["g1"], e["g2"]): e for e in json.loads(out)["entries"]}
        assert entries[(0, 0)]["re"] == pytest.approx(1) and entries[(0, 0)]["im"] == pytest.approx(2)

    def test_real_basis_rejects_complex_data(self, tmp_path, capsys):
        path = tmp_path / "samples.json"
        path.write_text(json.dumps([[1.0, 2.0]] * 3))
        code, _, _ = run_exit(["interpolate", "--m1", "1", "--m2", "1", "--in", str(path)], capsys)
        assert code == 2

    def test_chebfourier_builtin(self, capsys):
        _, out, _ = run(
            ["interpolate", "--m1", "3", "--m2", "3", "--basis", "complex", "--function", "chebfourier:2,2"], capsys
        )
        entries = json.loads(out)["entries"]
        big = [(e["g1"], e["g2"]) for e in entries if abs(complex(e["re"], e["im"])) > 1e-12]
        assert big == [(2, 2)]

    @pytest.mark.parametrize("name", ["nope", "chebfourier:1", "chebfourier:-2,0"])
    def test_bad_builtin(self, name, capsys):
        code, _, _ = run_exit(["interpolate", "--m1", "2", "--m2", "2", "--function", name], capsys)
        assert code == 2

    def test_grid_size_validation(self, capsys):
        code, _, _ = run_exit(["interpolate", "--m1", "2", "--m2", "2", "--grid-r", "1"], capsys)
        assert code == 2


class TestQuadrature:
    def test_constant(self, capsys):
        _, out, _ = run(["quadrature", "--m1", "3", "--m2", "2", "--function", "const1"], capsys)
        d = json.loads(out)
        assert d["Q"] == pytest.approx(1, abs=1e-14)
        assert d["integral"] == pytest.approx(np.pi)
        assert d["rel_error"] <= 1e-14

    def test_builtin(self, capsys):
        _, out, _ = run(["quadrature", "--m1", "20", "--m2", "21"], capsys)
        d = json.loads(out)
        assert d["integral"] == pytest.approx(0.03811412971653, abs=1e-10)
        assert d["I_ref_integral"] == pytest.approx(0.03811377782454, abs=1e-13)
        assert d["rel_error"] == pytest.approx(9.23267162e-6, rel=1e-2)

    def test_samples_without_reference(self, tmp_path, capsys):
        path = tmp_path / "samples.txt"
        path.write_text("\n".join(["1.0"] * 3) + "\n")
        _, out, _ = run(["quadrature", "--m1", "1", "--m2", "1", "--in", str(path)], capsys)
        d = json.loads(out)
        assert d["Q"] == pytest.approx(1)
        assert "I_ref" not in d


def test_lebesgue(capsys):
    _, out, _ = run(["lebesgue", "--m1", "4", "--m2", "4", "--grid-r", "17", "--grid-theta", "64"], capsys)
    d = json.loads(out)
    assert d["basis"] == "complex" and d["spectral_kind"] == "rectangular"
    assert 1 <= d["lebesgue_estimate"] <= 10 * np.log(5) ** 2


def test_reproduce_fig7(tmp_path, capsys):
    path = tmp_path / "fig7.json"
    code, _, _ = run(["reproduce-fig7", "--format", "json", "--out", str(path)], capsys)
    assert code == 0
    rows = json.loads(path.read_text())["rows"]
    assert len(rows) == 6
    by_kind = {}
    for row in rows:
        by_kind.setdefault((row["m1"], row["m2"]), {})[row["spectral_kind"]] = row
    for pair in by_kind.values():
        assert pair["rectangular"]["Q"] == pair["triangular"]["Q"]
        assert pair["rectangular"]["rel_quad_error"] == pair["triangular"]["rel_quad_error"]


@pytest.mark.parametrize(
    "argv",
    [
        ["nodes", "--m1", "3", "--m2", "4", "--format", "json"],
        ["interpolate", "--m1", "4", "--m2", "3", "--spectral", "triangle"],
        ["quadrature", "--m1", "5", "--m2", "6"],
        ["lebesgue", "--m1", "3", "--m2", "3", "--grid-r", "9", "--grid-theta", "16"],
    ],
)
def test_deterministic(argv, capsys):
    first = run(argv, capsys)
    assert run(argv, capsys) == first


def test_missing_command(capsys):
    code, _, _ = run_exit([], capsys)
    assert code == 2


def test_rect_coefficients_cover_the_spectral_set(capsys):
    _, out, _ = run(["interpolate", "--m1", "2", "--m2", "2", "--function", "const1"], capsys)
    d = json.loads(out)
    assert [(e["g1"], e["g2"]) for e in d["entries"]] == gamma_rect((2, 2)).indices
