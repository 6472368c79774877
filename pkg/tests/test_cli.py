import json

import numpy as np
import pytest

from sphereapprox.cli import capture, export, main, read_csv
from sphereapprox.geom import PreconditionError


def test_center():
    code, text = capture(["center", "[3,5]"])
    assert code == 0
    assert "(0.8971, -0.1655, -0.2548)" in text
    assert "radius 0.3208" in text
    assert "(0.4485, 0.0153)" in text


def test_groups():
    code, text = capture(["groups", "--max-n", "4"])
    assert code == 0
    assert "[3,5]:120" in text and "[2,4]:16" in text and "FAILED" not in text


def test_triangle():
    code, text = capture(["triangle", "[3,4]"])
    assert code == 0 and "z  = (1.0000, 0.0000, 0.0000)" in text


def test_orbit_obj_has_120_vertices():
    code, text = capture(["orbit", "[3,5]", "--format", "obj"])
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 120 and all(ln.startswith("v ") for ln in lines)


def test_orbit_table():
    code, text = capture(["orbit", "[3,4]", "--point", "y"])
    assert code == 0 and "6 points" in text


def test_point_grammar():
    _, a = capture(["distance", "[3,5]", "--point", "0.9945*m2"])
    _, b = capture(["distance", "[3,5]", "--point", "m2", "--scale", "0.9945"])
    assert a == b and "hausdorff       0.3354" in a
    code, c = capture(["distance", "[2,2]", "--point", "(1,1,1)", "--scale", "0.3333333333333333"])
    assert code == 0 and "0.8165" in c and "orbit size      8" in c


def test_distance_json():
    code, text = capture(["distance", "[3,4]", "--point", "y", "--format", "json"])
    assert code == 0
    assert json.loads(text)["total"] == pytest.approx(0.9194, abs=5e-4)


def test_scale():
    code, text = capture(["scale", "[3,5]", "--point", "x"])
    assert code == 0 and "optimal scale   0.7947" in text


@pytest.mark.parametrize("fmt", ["csv", "obj", "json"])
def test_export_round_trip(fmt, tmp_path):
    out = tmp_path / f"orbit.{fmt}"
    code, _ = capture(["export", "[3,5]", "--point", "m3", "--format", fmt, "-o", str(out)])
    assert code == 0
    text = out.read_text()
    if fmt == "csv":
        pts = read_csv(text)
    elif fmt == "obj":
        pts = np.array([[float(c) for c in ln.split()[1:]] for ln in text.splitlines()])
    else:
        pts = np.array(json.loads(text))
    _, again = capture(["export", "[3,5]", "--point", "m3", "--format", "json"])
    assert pts.shape == (60, 3)
    assert np.array_equal(pts, np.array(json.loads(again)))


def test_export_header_and_negative_zero():
    text = export([[-0.0, 1.0, 0.5]], "csv", header=True)
    assert text == "x,y,z\n0,1,0.5\n"


def test_export_empty_list():
    with pytest.raises(PreconditionError):
        export([], "csv")


def test_export_is_deterministic():
    assert capture(["export", "[3,4]", "--format", "csv"]) == capture(["export", "[3,4]", "--format", "csv"])


@pytest.mark.parametrize("argv", [["bogus"], ["center", "[3,6]"], ["triangle", "[2,3]"],
                                  ["distance", "[3,5]", "--point", "q7"], []])
def test_usage_errors_exit_one(argv):
    if argv in (["bogus"], []):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 1
    else:
        assert capture(argv)[0] == 1


def test_verify():
    code, text = capture(["verify", "--trials", "10", "--oracle-seeds", "2", "--samples", "20000",
                          "--oracle-tolerance", "2e-2"])
    assert code == 0 and text.rstrip().endswith("overall: pass")


def test_catalog_cli():
    code, text = capture(["catalog", "--format", "json"])
    assert code == 0 and len(json.loads(text)) == 18
