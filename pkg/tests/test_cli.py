import json
import subprocess
import sys

import numpy as np
import pytest

from entangle import cubic
from entangle.cli import main, parse_range


def run(tmp_path, *argv):
    return main(["--out-dir", str(tmp_path), "--jobs", "1", *argv])


def read_csv(path):
    lines = path.read_text().splitlines()
    assert lines[0] == "# schema: 1"
    assert lines[1].startswith("# config: ")
    assert lines[2].startswith("# content-sha256: ")
    header = lines[3].split(",")
    rows = [dict(zip(header, line.split(","))) for line in lines[4:]]
    return json.loads(lines[1][len("# config: "):]), rows


def test_parse_range():
    assert parse_range("3:5") == [3, 4, 5]
    assert parse_range("7") == [7]
    with pytest.raises(Exception):
        parse_range("5:3")


def test_flat_sphere(tmp_path, capsys):
    assert run(tmp_path, "flat-sphere", "--n-sites", "20", "--radii", "3:12") == 0
    config, rows = read_csv(tmp_path / "flat_sphere_N20.csv")
    assert config["n_sites"] == 20 and "jobs" not in config
    assert [int(r["n"]) for r in rows] == list(range(3, 13))
    assert float(rows[0]["r"]) == 3.5
    fit = json.loads((tmp_path / "flat_sphere_N20_fit.json").read_text())
    assert fit["schema"] == 1
    assert 0.05 < fit["fit"]["slope"] < 0.15
    assert "kappa" in capsys.readouterr().out


def test_output_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    main(["--out-dir", str(a), "--jobs", "1", "flat-sphere", "--n-sites", "20", "--radii", "3:8"])
    main(["--out-dir", str(b), "--jobs", "2", "flat-sphere", "--n-sites", "20", "--radii", "3:8"])
    for name in ("flat_sphere_N20.csv", "flat_sphere_N20_fit.json"):
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_single_radius_is_insufficient(tmp_path, capsys):
    assert run(tmp_path, "flat-sphere", "--n-sites", "40", "--radii", "30:30") == 2
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "InsufficientPoints"


def test_einstein_small_chain(tmp_path):
    with pytest.warns(UserWarning, match="small"):
        status = run(tmp_path, "einstein", "--n-sites", "20", "--min-area", "0")
    assert status == 0
    _, rows = read_csv(tmp_path / "einstein_N20.csv")
    assert len(rows) == 19
    S = np.array([float(r["S"]) for r in rows])
    assert np.allclose(S, S[::-1], rtol=1e-6)
    sym = json.loads((tmp_path / "einstein_N20_symmetry.json").read_text())
    assert sym["symmetry"]["passed"]


def test_cubic_boxes(tmp_path):
    assert run(tmp_path, "cubic", "--dims", "6", "--region", "box:1:3", "--complement") == 0
    _, rows = read_csv(tmp_path / "cubic_6x6x6.csv")
    assert [r["label"] for r in rows] == ["box1", "box2", "box3"]
    assert [int(r["exposed_faces"]) for r in rows] == [6, 24, 54]
    for r in rows:
        assert abs(float(r["S"]) - float(r["S_complement"])) < 1e-8
    assert (tmp_path / "cubic_6x6x6_fit.json").exists()


def test_cubic_region_file(tmp_path):
    lat = cubic.CubicLattice((5, 5, 5))
    path = tmp_path / "blob.rle"
    cubic.write_region(path, cubic.region_box(lat, (1, 1, 1), (2, 3, 1)))
    assert run(tmp_path, "cubic", "--region-file", str(path)) == 0
    _, rows = read_csv(tmp_path / "cubic_5x5x5.csv")
    assert rows[0]["label"] == "blob" and rows[0]["n_inside"] == "6"


def test_bad_region_file(tmp_path, capsys):
    path = tmp_path / "bad.rle"
    path.write_text("dims 2 2\n")
    assert run(tmp_path, "cubic", "--region-file", str(path)) == 2
    assert "RegionFormatError" in capsys.readouterr().err


def test_proximity_flat(tmp_path):
    assert run(tmp_path, "proximity", "--n", "6", "--n-max", "14") == 0
    _, rows = read_csv(tmp_path / "proximity_flat_n6.csv")
    assert [int(r["N"]) for r in rows] == list(range(14, 5, -1))
    assert float(rows[-1]["S"]) == 0.0
    S = [float(r["S"]) for r in rows]
    assert S[-2] < S[-3] < S[0]


def test_proximity_cubic(tmp_path):
    assert run(tmp_path, "proximity", "--model", "cubic", "--dims", "6", "--box", "2") == 0
    _, rows = read_csv(tmp_path / "proximity_cubic_6x6x6_box2.csv")
    assert [int(r["gap"]) for r in rows] == [2, 1, 0]


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "entangle", "--out-dir", str(tmp_path), "--jobs", "1",
         "flat-sphere", "--n-sites", "12", "--radii", "4:4"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
    assert "InsufficientPoints" in proc.stderr
