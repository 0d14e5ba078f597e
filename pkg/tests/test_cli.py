import json
import subprocess
import sys
import time

import pytest

from taufan import checks, cli
from taufan.formats import svg_walls
from taufan.wallchamber import FanReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture(scope="module")
def running_file(data_dir):
    return str(data_dir / "running_example.json")


def test_enumerate_json(capsys, running_file):
    code, out, _ = run(capsys, "enumerate", running_file, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == "taufan/1"
    assert doc["counts"] == {"pairs": 13, "tau_tilting": 6}
    assert sum(p["tau_tilting"] for p in doc["pairs"]) == 6


def test_enumerate_a2(capsys, data_dir):
    code, out, _ = run(capsys, "enumerate", str(data_dir / "a2.json"))
    assert code == 0 and json.loads(out)["counts"] == {"pairs": 11, "tau_tilting": 5}


def test_checked_flag_gives_same_output(capsys, running_file):
    _, plain, _ = run(capsys, "enumerate", running_file)
    _, checked, _ = run(capsys, "enumerate", running_file, "--checked", "--seed", "7")
    assert plain == checked


def test_fan_json_and_svg(capsys, running_file, tmp_path):
    svg = tmp_path / "fan.svg"
    code, out, _ = run(capsys, "fan", running_file, "--svg", str(svg))
    assert code == 0 and out == ""
    assert len(svg_walls(svg.read_text(encoding="utf-8"))) == 6
    code, out, _ = run(capsys, "fan", running_file, "--json", "--svg", str(svg))
    assert code == 0 and len(json.loads(out)["rays"]) == 6


def test_fan_single_vertex_rays(capsys, data_dir):
    code, out, _ = run(capsys, "fan", str(data_dir / "single_vertex.json"))
    assert code == 0 and sorted(json.loads(out)["rays"]) == [[-1], [1]]


def test_svg_for_rank_three_fails_cleanly(capsys, data_dir, tmp_path):
    svg = tmp_path / "fan.svg"
    code, out, err = run(capsys, "fan", str(data_dir / "a3.json"), "--svg", str(svg))
    assert code == cli.EXIT_RANK and out == "" and "SVGUnsupportedRank" in err
    assert not svg.exists()


@pytest.mark.parametrize("which,count", [("tf", 13), ("pairs", 13), ("geom", 6), ("pairquot", 6), ("tcm", 6)])
def test_category_json(capsys, running_file, which, count):
    code, out, _ = run(capsys, "category", running_file, "--which", which, "--json")
    cat = json.loads(out)["category"]
    assert code == 0 and len(cat["objects"]) == count


def test_category_geom_hom_matrix(capsys, running_file):
    _, out, _ = run(capsys, "category", running_file, "--which", "geom")
    cat = json.loads(out)["category"]
    hom = {(h["from"], h["to"]): len(h["morphisms"]) for h in cat["hom"]}
    assert hom[("[C(0, 0)]", "[C(0, P1)]")] == 2
    assert hom[("[C(0, P1)]", "[C(0, P1 + P2)]")] == 2


def test_category_dot(capsys, running_file):
    code, out, _ = run(capsys, "category", running_file, "--which", "pairquot", "--dot")
    assert code == 0 and out.startswith("digraph") and out.count("subgraph cluster_") == 6
    code, out, _ = run(capsys, "category", running_file, "--which", "pairs", "--dot")
    assert code == 0 and out.count("->") > 0


def test_check_passes(capsys, running_file):
    code, out, _ = run(capsys, "check", running_file)
    assert code == 0 and "FAIL" not in out and out.count("PASS") >= 15


def test_check_json(capsys, data_dir):
    code, out, _ = run(capsys, "check", str(data_dir / "a2.json"), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["ok"] and doc["kind"] == "check"


def test_check_failure_exits_three(capsys, running_file, monkeypatch):
    def broken(classes):
        return FanReport(len(classes), [{"kind": "duplicate", "classes": ["(0, 0)", "(0, 0)"]}])

    monkeypatch.setattr(checks, "verify_fan", broken)
    code, out, err = run(capsys, "check", running_file)
    assert code == cli.EXIT_CHECK
    assert "FAIL  g-vector cones form a fan" in out
    assert "check failed: g-vector cones form a fan" in err and "duplicate" in err


def test_corrupted_file_exits_one(capsys, data_dir):
    code, out, err = run(capsys, "check", str(data_dir / "corrupted.json"))
    assert code == cli.EXIT_PARSE and out == "" and "NotAdmissible" in err


def test_missing_file_exits_one(capsys, tmp_path):
    code, out, err = run(capsys, "enumerate", str(tmp_path / "nope.json"))
    assert code == cli.EXIT_PARSE and out == ""


def test_render_writes_all_files(capsys, running_file, tmp_path):
    code, out, _ = run(capsys, "render", running_file, "--out", str(tmp_path))
    assert code == 0 and out == ""
    names = {p.name for p in tmp_path.iterdir()}
    assert {"fan.json", "fan.svg"} <= names
    assert all(f"{w}.dot" in names and f"{w}.json" in names for w in cli.CATEGORIES)


def test_usage_errors(capsys, running_file):
    with pytest.raises(SystemExit) as info:
        cli.main(["bogus"])
    assert info.value.code == cli.EXIT_USAGE
    with pytest.raises(SystemExit) as info:
        cli.main(["category", running_file, "--which", "nothing"])
    assert info.value.code == cli.EXIT_USAGE
    code, _, err = run(capsys, "enumerate", running_file, "--cap", "0")
    assert code == cli.EXIT_USAGE and "--cap" in err


def test_kronecker_cap_subprocess(data_dir, tmp_path):
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "taufan.cli", "render", str(data_dir / "kronecker.json"), "--cap", "50", "--out", str(tmp_path / "out")],
        capture_output=True,
        text=True,
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == cli.EXIT_CAP
    assert proc.stdout == "" and "CapExceeded" in proc.stderr
    assert not (tmp_path / "out").exists()
    assert elapsed < 10
