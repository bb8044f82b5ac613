import csv
import json
import math
import subprocess
import sys

import pytest

from starmetrics.cli import main


def _write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(json.dumps(doc), encoding="utf-8")
    return str(p)


@pytest.fixture
def files(tmp_path):
    n = 5
    theta = [math.sqrt(1 - 1 / n ** 2), 1 / n]
    return {
        "ball": _write(tmp_path, "ball.json", {"dim": 2, "kind": "closed_form", "name": "ball"}),
        "ball2x": _write(tmp_path, "ball2x.json", {"dim": 2, "kind": "closed_form",
                                                   "name": "ball", "params": {"radius": 2}}),
        "ball3": _write(tmp_path, "ball3.json", {"dim": 3, "kind": "closed_form",
                                                 "name": "ball"}),
        "seg_e1": _write(tmp_path, "seg_e1.json", {"dim": 2, "kind": "closed_form",
                                                   "name": "segment",
                                                   "params": {"point": [1, 0]}}),
        "seg_theta5": _write(tmp_path, "seg_theta5.json", {"dim": 2, "kind": "closed_form",
                                                           "name": "segment",
                                                           "params": {"point": theta}}),
        "square": _write(tmp_path, "square.json", {"dim": 2, "kind": "convex_seed",
                                                   "name": "square"}),
        "ray": _write(tmp_path, "ray.json", {"dim": 2, "kind": "convex_seed", "name": "ray",
                                             "params": {"direction": [1, 0]}}),
        "bad": _write(tmp_path, "bad.json", {"dim": 2, "kind": "blob", "name": "x"}),
    }


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_dist_awr(files, capsys):
    code, out, _ = _run(capsys, ["dist", "--metric", "awr", files["ball"], files["ball2x"]])
    doc = json.loads(out)
    assert code == 0
    assert doc["payload"]["value"] == 0.5 and doc["payload"]["attained_j"] == 2
    assert set(doc["grid"]) == {"count", "seed", "symmetric", "resolution", "eps_g"}
    assert doc["grid"]["count"] == 2048
    assert doc["tool"] == "starmetrics" and "wall_time_s" in doc


def test_dist_radial_rotating_segment(files, capsys):
    code, out, _ = _run(capsys, ["dist", "--metric", "radial", files["seg_e1"],
                                 files["seg_theta5"]])
    assert code == 0 and json.loads(out)["payload"]["value"] == 1.0


def test_dist_hausdorff_self(files, capsys):
    code, out, _ = _run(capsys, ["dist", "--metric", "hausdorff", files["ball"], files["ball"]])
    assert code == 0 and json.loads(out)["payload"]["value"] == 0.0


def test_dist_csv_format(files, capsys):
    code, out, _ = _run(capsys, ["dist", "--metric", "gap", "--radius", "3", "--format", "csv",
                                 files["ball"], files["ball2x"]])
    rows = dict(csv.reader(out.splitlines()))
    assert code == 0 and float(rows["value"]) == 1.0


def test_exit_codes(files, capsys):
    assert _run(capsys, ["dist", files["bad"], files["ball"]])[0] == 2
    assert _run(capsys, ["dist", files["ball"], files["ball3"]])[0] == 3
    assert _run(capsys, ["dist", "--metric", "gap", "--radius", "-1", files["ball"],
                         files["ball"]])[0] == 4
    assert _run(capsys, ["dual", "--map", "flower", files["ball"]])[0] == 5
    assert _run(capsys, ["dual", "--map", "polar", files["ball"]])[0] == 5
    assert _run(capsys, ["seq", "nope", "--candidate", "origin"])[0] == 2
    assert _run(capsys, ["seq", "truncated_parabolas", "--dim", "3",
                         "--candidate", "origin"])[0] == 3
    assert _run(capsys, ["check", "--trials", "0"])[0] == 4


def test_unknown_kind_lists_valid_entries(files, capsys):
    _, _, err = _run(capsys, ["dist", files["bad"], files["ball"]])
    assert "closed_form" in err and "convex_seed" in err


def test_dual_maps(files, capsys):
    _, out, _ = _run(capsys, ["dual", "--map", "phi", files["ball"]])
    assert set(json.loads(out)["payload"]["profile"]["params"]["values"]) == {1.0}
    _, out, _ = _run(capsys, ["dual", "--map", "polar", "--grid-count", "64", files["square"]])
    spec = json.loads(out)["payload"]["profile"]
    from starmetrics.specfiles import parse_body
    body = parse_body(spec)
    for th, v in zip(body.profile.grid.directions, spec["params"]["values"]):
        assert v == pytest.approx(1 / (abs(th[0]) + abs(th[1])), rel=1e-15)
    _, out, _ = _run(capsys, ["dual", "--map", "flower", files["ray"]])
    assert set(map(str, json.loads(out)["payload"]["profile"]["params"]["values"])) == {"0.0",
                                                                                         "inf"}
    _, out, _ = _run(capsys, ["dual", "--map", "inversion-check", files["ball"]])
    assert json.loads(out)["payload"]["report"]["violations"] == 0
    _, out, _ = _run(capsys, ["dual", "--map", "union-check", files["square"]])
    assert json.loads(out)["payload"]["report"]["violations"] == 0


def test_seq_writes_report_and_csv(tmp_path, capsys):
    out = tmp_path / "en.json"
    code, text, _ = _run(capsys, ["seq", "en_spikes", "--candidate", "origin", "--n-max", "12",
                                  "--grid-count", "512", "--out", str(out)])
    assert code == 0 and "pointwise_radial" in text
    doc = json.loads(out.read_text(encoding="utf-8"))
    assert doc["payload"]["notions"]["delta"]["floor"] == pytest.approx(1 / math.e, abs=1e-3)
    with open(out.with_suffix(".csv"), encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["n", "notion", "value"] and len(rows) == 1 + 5 * 12
    float(rows[1][2])


def test_seq_candidate_from_file(files, capsys, tmp_path):
    code, out, _ = _run(capsys, ["seq", "moszynska_cones", "--candidate", files["ball"],
                                 "--n-max", "10", "--grid-count", "256"])
    doc = json.loads(out)
    assert code == 0 and doc["payload"]["notions"]["delta"]["verdict"] == "diverges"


def test_check_exit_and_summary(capsys):
    code, out, _ = _run(capsys, ["check", "--suite", "inequalities", "--trials", "4",
                                 "--seed", "42"])
    assert code == 0
    assert "d_AW <= d_AW^r: 0 violations" in out


def test_env_overrides_default_grid(files, capsys, monkeypatch):
    monkeypatch.setenv("STARBODY_GRID_COUNT", "300")
    _, out, _ = _run(capsys, ["dist", files["ball"], files["ball2x"]])
    assert json.loads(out)["grid"]["count"] == 300
    _, out, _ = _run(capsys, ["dist", "--grid-count", "100", files["ball"], files["ball2x"]])
    assert json.loads(out)["grid"]["count"] == 100


def test_reruns_are_byte_identical(files):
    cmd = [sys.executable, "-m", "starmetrics", "dist", "--metric", "aw", files["ball"],
           files["ball2x"]]
    runs = [json.loads(subprocess.run(cmd, capture_output=True, check=True).stdout)
            for _ in range(2)]
    dumps = [json.dumps(r["payload"], sort_keys=True) for r in runs]
    assert dumps[0] == dumps[1]
    assert runs[0]["grid"] == runs[1]["grid"]
