import json
import subprocess
import sys

import pytest

from mongekit.cli import main


THREE_CIRCLES = {
    "geometry": "euclidean",
    "dimension": 2,
    "kind": "shapes",
    "shapes": [
        {"type": "ball", "center": [0, 0], "radius": 3},
        {"type": "ball", "center": [6, 0], "radius": 2},
        {"type": "ball", "center": [0, 6], "radius": 1},
    ],
}


def write_scenario(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


def run_verify(tmp_path, obj, *extra):
    src = write_scenario(tmp_path / "scenario.json", obj)
    out = tmp_path / "report.json"
    code = main(["verify", "--input", src, "--output", str(out), *extra])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


def test_verify_exit_codes(tmp_path):
    code, report = run_verify(tmp_path, {**THREE_CIRCLES, "expect": True})
    assert code == 0
    assert report["verdict"] is True
    assert report["hyperplane"] == {"normal": [0.5, 1.0], "offset": 9.0}

    code, report = run_verify(tmp_path, {**THREE_CIRCLES, "expect": False})
    assert code == 1
    assert report["verdict"] is True

    code, _ = run_verify(tmp_path, {**THREE_CIRCLES, "geometry": "flat"})
    assert code == 2


def test_verify_error_object_on_stdout(tmp_path, capsys):
    src = write_scenario(tmp_path / "bad.json", {"geometry": "euclidean"})
    assert main(["verify", "--input", src]) == 2
    err = json.loads(capsys.readouterr().out)["error"]
    assert err["code"] == "ScenarioError"
    assert err["where"] == "$.dimension"


def test_verify_missing_and_malformed_files(tmp_path, capsys):
    assert main(["verify", "--input", str(tmp_path / "nope.json")]) == 2
    bad = tmp_path / "broken.json"
    bad.write_text("{not json")
    assert main(["verify", "--input", str(bad)]) == 2
    out = capsys.readouterr().out
    assert out.count('"error"') == 2


def test_verify_stdout_report(tmp_path, capsys):
    src = write_scenario(tmp_path / "s.json", THREE_CIRCLES)
    assert main(["verify", "--input", src]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["verdict"] is True
    assert [c["point"] for c in report["centers"]] == [
        [18.0, 0.0], [0.0, 9.0], [-6.0, 12.0]
    ]


def test_report_roundtrip(tmp_path):
    code, report = run_verify(tmp_path, THREE_CIRCLES)
    assert code == 0
    code2, report2 = run_verify(tmp_path, report["scenario"])
    assert code2 == 0
    for key in ("verdict", "centers", "hyperplane", "hyperplane_residual"):
        assert report2[key] == report[key]


def test_exact_mode(tmp_path):
    code, report = run_verify(tmp_path, THREE_CIRCLES, "--exact")
    assert code == 0
    assert report["exact"] is True
    assert report["hyperplane_residual"] == 0
    assert [c["point"] for c in report["centers"]] == [[18, 0], [0, 9], [-6, 12]]


def test_exact_refuses_noneuclidean(tmp_path, capsys):
    obj = {
        "geometry": "spherical", "dimension": 2, "kind": "edge_points",
        "vertices": [[1, 0, 0], [0, 1, 0], [0, 0, 1]],
        "edge_points": [
            {"pair": [1, 2], "point": [-0.894427190999916, 0.447213595499958, 0]},
            {"pair": [1, 3], "point": [-0.970142500145332, 0, 0.242535625036333]},
            {"pair": [2, 3], "point": [0, -0.894427190999916, 0.447213595499958]},
        ],
    }
    src = write_scenario(tmp_path / "sphere.json", obj)
    assert main(["verify", "--input", src]) == 0
    assert main(["verify", "--input", src, "--exact"]) == 2
    out = capsys.readouterr().out
    assert "euclidean scenarios only" in out


def test_exact_rejects_non_integral_floats(tmp_path, capsys):
    obj = {**THREE_CIRCLES, "shapes": [
        {"type": "ball", "center": [0.25, 0], "radius": 3},
        *THREE_CIRCLES["shapes"][1:],
    ]}
    src = write_scenario(tmp_path / "s.json", obj)
    assert main(["verify", "--input", src, "--exact"]) == 2
    err = json.loads(capsys.readouterr().out)["error"]
    assert "p/q" in err["message"]
    assert err["where"] == "$.shapes[0].center[0]"


def test_tolerance_env_override(tmp_path, monkeypatch, capsys):
    # weights (1, 2, 4) give edge points (-4, 0), (0, -4/3), (8, -4);
    # the first is nudged so residuals land near 5e-3
    obj = {
        "geometry": "euclidean", "dimension": 2, "kind": "edge_points",
        "vertices": [[0, 0], [4, 0], [0, 4]],
        "edge_points": [
            {"pair": [1, 2], "point": [-4.04, 0]},
            {"pair": [1, 3], "point": [0, -1.3333333333333333]},
            {"pair": [2, 3], "point": [8, -4]},
        ],
    }
    src = write_scenario(tmp_path / "p.json", obj)
    assert main(["verify", "--input", src]) == 1
    capsys.readouterr()
    monkeypatch.setenv("MONGE_TOLERANCE", "0.05")
    assert main(["verify", "--input", src]) == 0
    capsys.readouterr()
    monkeypatch.setenv("MONGE_TOLERANCE", "bogus")
    assert main(["verify", "--input", src]) == 2


def test_generate_deterministic(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    args = ["generate", "--dim", "3", "--kind", "edge_points",
            "--count", "3", "--seed", "11"]
    assert main([*args, "--out", str(out1)]) == 0
    assert main([*args, "--out", str(out2)]) == 0
    names = sorted(p.name for p in out1.iterdir())
    assert names == ["scenario-11-0.json", "scenario-11-1.json", "scenario-11-2.json"]
    for name in names:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_generate_negative_and_verify(tmp_path):
    out = tmp_path / "neg"
    assert main(["generate", "--dim", "2", "--kind", "edge_points", "--count", "2",
                 "--seed", "4", "--perturb", "0.01", "--out", str(out)]) == 0
    obj = json.loads((out / "scenario-4-0.json").read_text())
    assert obj["expect"] is False
    assert main(["verify", "--input", str(out / "scenario-4-0.json"),
                 "--output", str(tmp_path / "r.json")]) == 0


def test_generate_shape_kinds_verify_clean(tmp_path):
    for kind in ("balls", "vertex_sets"):
        out = tmp_path / kind
        assert main(["generate", "--dim", "2", "--kind", kind, "--count", "2",
                     "--seed", "9", "--out", str(out)]) == 0
        for k in range(2):
            assert main(["verify", "--input", str(out / f"scenario-9-{k}.json"),
                         "--output", str(tmp_path / "r.json")]) == 0


def test_generate_rational_exact(tmp_path):
    out = tmp_path / "rat"
    assert main(["generate", "--dim", "2", "--kind", "edge_points", "--rational",
                 "--count", "1", "--seed", "5", "--out", str(out)]) == 0
    src = str(out / "scenario-5-0.json")
    report = tmp_path / "r.json"
    assert main(["verify", "--input", src, "--exact",
                 "--output", str(report)]) == 0
    rep = json.loads(report.read_text())
    assert rep["hyperplane_residual"] == 0
    assert all(t["residual"] == 0 for t in rep["triple_products"])


def test_generate_invalid_spec(tmp_path, capsys):
    assert main(["generate", "--geometry", "spherical", "--dim", "2",
                 "--kind", "balls", "--out", str(tmp_path)]) == 2
    assert "error" in capsys.readouterr().out


def test_sweep_clean_and_zero(capsys):
    assert main(["sweep", "--dims", "2..3", "--per-cell", "3", "--seed", "2"]) == 0
    table = capsys.readouterr().out.strip().splitlines()
    assert len(table) == 3
    assert table[0].split() == ["dim", "pos", "pass", "pos", "fail", "neg", "pass",
                                "neg", "fail", "max", "residual", "neg", "floor"]
    assert table[1].split()[:5] == ["2", "3", "0", "3", "0"]

    assert main(["sweep", "--dims", "2..3", "--per-cell", "0"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 1


def test_sweep_spherical(capsys):
    assert main(["sweep", "--geometry", "spherical", "--dims", "2..3",
                 "--per-cell", "2", "--seed", "1"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 3


def test_sweep_bad_dims(capsys):
    assert main(["sweep", "--dims", "six"]) == 2
    assert "dimension range" in capsys.readouterr().out


def test_figure_deterministic_markers(tmp_path):
    src = write_scenario(tmp_path / "s.json", THREE_CIRCLES)
    fig1, fig2 = tmp_path / "a.svg", tmp_path / "b.svg"
    assert main(["figure", "--input", src, "--output", str(fig1)]) == 0
    assert main(["figure", "--input", src, "--output", str(fig2)]) == 0
    svg = fig1.read_text()
    assert fig1.read_bytes() == fig2.read_bytes()
    assert svg.count('class="center"') == 3
    assert svg.count('class="monge-line"') == 1
    for cx, cy in (("18.0000", "0.0000"), ("0.0000", "9.0000"), ("-6.0000", "12.0000")):
        assert f'class="center" cx="{cx}" cy="{cy}"' in svg
    for label in ("(1,2)", "(1,3)", "(2,3)"):
        assert label in svg


def test_figure_halfplanes_on_axis(tmp_path):
    obj = {
        "geometry": "euclidean", "dimension": 2, "kind": "shapes",
        "shapes": [
            {"type": "halfspaces", "constraints": [
                {"normal": [1, 0], "offset": 0},
                {"normal": [0, 1], "offset": 1.0 / i},
                {"normal": [1, 1], "offset": 4.0 - i},
            ]} for i in (1, 2, 3)
        ],
    }
    src = write_scenario(tmp_path / "h.json", obj)
    fig = tmp_path / "h.svg"
    assert main(["figure", "--input", src, "--output", str(fig)]) == 0
    svg = fig.read_text()
    centers = [line for line in svg.splitlines() if 'class="center"' in line]
    assert len(centers) == 3
    assert all('cx="0.0000"' in line for line in centers)


def test_figure_rejects_bad_inputs(tmp_path, capsys):
    src = write_scenario(tmp_path / "empty.json", {**THREE_CIRCLES, "shapes": []})
    assert main(["figure", "--input", src, "--output", str(tmp_path / "x.svg")]) == 2

    obj3d = {
        "geometry": "euclidean", "dimension": 3, "kind": "shapes",
        "shapes": [{"type": "ball", "center": [0, 0, 0], "radius": r}
                   for r in (4, 3, 2, 1)],
    }
    src = write_scenario(tmp_path / "3d.json", obj3d)
    assert main(["figure", "--input", src, "--output", str(tmp_path / "y.svg")]) == 2
    assert not (tmp_path / "x.svg").exists()
    assert not (tmp_path / "y.svg").exists()
    capsys.readouterr()


def test_console_entry_point(tmp_path):
    src = write_scenario(tmp_path / "s.json", THREE_CIRCLES)
    proc = subprocess.run(
        [sys.executable, "-m", "mongekit.cli", "verify", "--input", src],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["verdict"] is True
    proc = subprocess.run(
        [sys.executable, "-m", "mongekit.cli", "verify", "--no-such-flag"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 2
