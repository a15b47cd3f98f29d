from __future__ import annotations

import json
import math
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ftcurve.cli import main
from ftcurve.curve import PolyCurve, regular_polygon, unit_square
from ftcurve.errors import CurveFileError
from ftcurve.generators import bowtie, convex_planar_arc, trefoil
from ftcurve.comparison import crankshaft_twist
from ftcurve.io import dumps_csv, dumps_json, loads_csv, loads_json, read_curve, write_curve

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


class TestRoundTrip:
    @settings(max_examples=200)
    @given(st.integers(1, 4).flatmap(lambda d: st.lists(st.lists(finite, min_size=d, max_size=d),
                                                         min_size=2, max_size=12)), st.booleans())
    def test_json_bit_exact(self, rows, closed):
        c = PolyCurve(np.array(rows), closed)
        back = loads_json(dumps_json(c))
        assert back.vertices.tobytes() == c.vertices.tobytes() and back.closed == closed

    @settings(max_examples=100)
    @given(st.lists(st.lists(finite, min_size=3, max_size=3), min_size=2, max_size=12))
    def test_csv_bit_exact(self, rows):
        c = PolyCurve(np.array(rows), True)
        assert loads_csv(dumps_csv(c), closed=True).vertices.tobytes() == c.vertices.tobytes()

    def test_files(self, tmp_path):
        c = trefoil(37)
        for name in ("t.json", "t.csv"):
            write_curve(c, tmp_path / name)
            back = read_curve(tmp_path / name, closed=True)
            assert back.vertices.tobytes() == c.vertices.tobytes()


class TestReaders:
    @pytest.mark.parametrize("text, line, field", [
        ('{"dim": 2, "closed": true,\n "vertices": [[0, 0],\n [1, "x"]]}', 3, "vertices[1][1]"),
        ('{"dim": 2, "closed": true, "vertices": [[0, 0, 1], [1, 0]]}', 1, "vertices[0]"),
        ('{"dim": 2, "closed": 1, "vertices": []}', None, "closed"),
        ('{"closed": true, "vertices": []}', None, "dim"),
        ('{"dim": 2,\n', 2, None),
    ])
    def test_json_errors(self, text, line, field):
        with pytest.raises(CurveFileError) as info:
            loads_json(text)
        assert info.value.line == line and info.value.field == field

    def test_json_dim_mismatch(self):
        with pytest.raises(CurveFileError):
            loads_json(dumps_json(unit_square()), dim=3)

    @pytest.mark.parametrize("text, line", [("a,b\n1,2\n", 1), ("x0,x1\n1,2\n3\n", 3), ("x0,x1\n1,2\n3,zz\n", 3), ("", 1)])
    def test_csv_errors(self, text, line):
        with pytest.raises(CurveFileError) as info:
            loads_csv(text)
        assert info.value.line == line

    def test_missing_file(self, tmp_path):
        with pytest.raises(CurveFileError):
            read_curve(tmp_path / "nope.json")


@pytest.fixture
def files(tmp_path):
    out = {}
    for name, c in [("square", unit_square()), ("ngon100", regular_polygon(100)), ("trefoil", trefoil()),
                    ("bowtie", bowtie(1.3))]:
        out[name] = tmp_path / f"{name}.json"
        write_curve(c, out[name])
    bar = convex_planar_arc(1, 6, 2.0)
    out["bar"] = tmp_path / "bar.json"
    write_curve(bar, out["bar"])
    out["twisted"] = tmp_path / "twisted.json"
    write_curve(crankshaft_twist(bar, 2, 1.0), out["twisted"])
    out["segment"] = tmp_path / "segment.csv"
    out["segment"].write_text("x0,x1\n0,0\n1,0\n")
    out["bad"] = tmp_path / "bad.json"
    out["bad"].write_text('{"dim": 2, "closed": true, "vertices": [[0, 0], [1]]}')
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


class TestCli:
    def test_analyze_square(self, capsys, files):
        code, out, _ = run(capsys, "analyze", files["square"])
        rep = json.loads(out)
        assert code == 0
        assert rep["tc"] == pytest.approx(2 * math.pi, abs=1e-14)
        assert rep["tc_star"] == pytest.approx(4 * math.sqrt(2), abs=1e-14)

    def test_analyze_segment(self, capsys, files):
        code, out, _ = run(capsys, "analyze", files["segment"])
        assert code == 0 and json.loads(out)["tc"] == 0

    def test_analyze_malformed(self, capsys, files):
        code, _, err = run(capsys, "analyze", files["bad"])
        assert code == 2 and "vertices[1]" in err

    def test_analyze_csv_table(self, capsys, files):
        code, out, _ = run(capsys, "analyze", files["square"], "--format", "csv")
        assert out.splitlines()[0] == "index,theta,k_mass,density_angle,density_chord,density_arc"

    @pytest.mark.parametrize("theorem, key", [("fenchel", "square"), ("fary-milnor", "trefoil"),
                                              ("chakerian", "ngon100"), ("wien2", "square"),
                                              ("wienholtz", "square"), ("crofton", "square"),
                                              ("tc-average", "trefoil")])
    def test_verify_holds(self, capsys, files, theorem, key):
        code, out, _ = run(capsys, "verify", theorem, files[key], "--samples", "5000")
        rep = json.loads(out)
        assert code == 0 and rep["holds"] and rep["theorem"] == theorem

    def test_fary_milnor_trefoil(self, capsys, files):
        code, out, _ = run(capsys, "verify", "fary-milnor", files["trefoil"])
        rep = json.loads(out)
        assert rep["min_maxima"] == 2 and rep["tc"] >= 4 * math.pi

    def test_chakerian_equality(self, capsys, files):
        rep = json.loads(run(capsys, "verify", "chakerian", files["ngon100"])[1])
        assert abs(rep["len"] - rep["tc_star"]) <= 1e-12

    def test_wien2_equality(self, capsys, files):
        rep = json.loads(run(capsys, "verify", "wien2", files["square"])[1])
        assert abs(rep["projected_diameter"] - rep["bound"]) <= 1e-9

    def test_schur(self, capsys, files):
        code, out, _ = run(capsys, "verify", "schur", files["twisted"], files["bar"])
        assert code == 0 and json.loads(out)["holds"]
        code, _, err = run(capsys, "verify", "schur", files["bar"], files["square"])
        assert code == 3

    def test_spindle(self, capsys, files):
        code, out, _ = run(capsys, "verify", "spindle", files["bar"], "--edge-samples", "4")
        assert code == 0

    def test_preconditions(self, capsys, files):
        assert run(capsys, "verify", "fenchel", files["segment"])[0] == 3
        assert run(capsys, "distortion", files["bowtie"])[0] == 3
        assert run(capsys, "verify", "spindle", files["square"])[0] == 3

    def test_distortion(self, capsys, files):
        code, out, _ = run(capsys, "distortion", files["square"])
        assert code == 0 and json.loads(out)["value"] == pytest.approx(2.0, abs=1e-9)

    def test_sample(self, capsys, tmp_path):
        out = tmp_path / "c.json"
        assert run(capsys, "sample", "circle", 100, "--out", out)[0] == 0
        c = read_curve(out)
        assert c.n == 100 and c.closed
        assert run(capsys, "sample", "torus-knot-2-3", 200, "--out", out)[0] == 0
        np.testing.assert_array_equal(read_curve(out).vertices, trefoil().vertices)
        code, text, _ = run(capsys, "sample", "helix", 50, "--turns", 3)
        c = loads_json(text)
        assert code == 0 and not c.closed and c.n == 50

    def test_sample_errors(self, capsys):
        assert run(capsys, "sample", "nope", 10)[0] == 2
        assert run(capsys, "sample", "circle", 2)[0] == 2

    def test_project(self, capsys, files):
        code, out, _ = run(capsys, "project", files["trefoil"], "--k", "2", "--seed", "4")
        assert code == 0 and loads_json(out).dim == 2

    def test_flow(self, capsys, files, tmp_path):
        final = tmp_path / "final.json"
        code, out, _ = run(capsys, "flow", files["bowtie"], "--steps", "5", "--format", "csv", "--final", final)
        assert code == 0 and out.startswith("step,energy,gradnorm,stepsize")
        assert read_curve(final).n == 4

    def test_smooth(self, capsys, files):
        code, out, _ = run(capsys, "smooth", files["square"])
        assert code == 0 and json.loads(out)["length"] == pytest.approx(math.pi, abs=1e-12)

    def test_usage_error(self, capsys):
        assert run(capsys, "verify", "pythagoras", "x.json")[0] == 2

    def test_deterministic_bytes(self, capsys, files):
        a = run(capsys, "verify", "tc-average", files["trefoil"], "--k", "2", "--samples", "3000", "--seed", "9")[1]
        b = run(capsys, "verify", "tc-average", files["trefoil"], "--k", "2", "--samples", "3000", "--seed", "9")[1]
        assert a == b

    def test_console_script(self, files):
        proc = subprocess.run([sys.executable, "-m", "ftcurve.cli", "verify", "fenchel", str(files["trefoil"])],
                              capture_output=True, text=True)
        assert proc.returncode == 0 and json.loads(proc.stdout)["holds"]
        proc = subprocess.run([sys.executable, "-m", "ftcurve.cli", "analyze", str(files["bad"])],
                              capture_output=True, text=True)
        assert proc.returncode == 2
