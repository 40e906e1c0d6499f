import json
import subprocess
import sys

import pytest

from ultratrop import cli, extremes
from ultratrop.io import parse_candidate, read_rays_csv


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_nearest_json(capsys):
    code, out, _ = run(capsys, "nearest", "paper-n3")
    data = json.loads(out)
    assert code == 0
    assert data["q"] == "2" and data["delta_star"]["vector"] == ["4", "6", "6"]


def test_nearest_newick_with_labels(capsys):
    _, out, _ = run(capsys, "nearest", "paper-n8", "--format", "newick")
    assert out.strip() == "((((dog,((bear,raccoon)35,(seal,sea_lion)33)38)41,weasel)43,cat)93,monkey)145;"


def test_cone_csv(capsys):
    code, out, _ = run(capsys, "cone", "paper-n8")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 225 and len(lines[0].split(",")) == 2 + 2 * 29


def test_extremes_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "extremes", "paper-n4")
    _, second, _ = run(capsys, "extremes", "paper-n4")
    assert first == second
    data = json.loads(first)
    assert data["counts"]["extremes"] == 8
    assert data["counts"]["bernstein_by_quantifier"] == {"all-resolutions": 10, "per-resolution": 15}
    assert sorted(e["published_column"] for e in data["extremes"]) == list(range(1, 9))
    assert all(e["combination_of_extremes"]["member"] for e in data["satisfying_nonextremes"])
    assert data["oracle"]["agreement"] is True
    assert "timings" not in data


def test_extremes_csv_round_trip(capsys):
    _, out, _ = run(capsys, "extremes", "paper-n3", "--format", "csv", "--no-oracle")
    assert read_rays_csv(out) == [(0, 6, 6), (4, 6, 6)]


def test_extremes_probe_and_dot(capsys):
    _, out, _ = run(capsys, "extremes", "paper-n3", "--trials", "10", "--seed", "4")
    assert json.loads(out)["probe"]["passed"] is True
    _, out, _ = run(capsys, "extremes", "paper-n3", "--format", "dot")
    assert out.count("digraph") == 2


def test_candidates(capsys):
    _, out, _ = run(capsys, "candidates", "paper-n4", "--quantifier", "per-resolution")
    data = json.loads(out)
    assert data["counts"] == {"all": 16, "bernstein[all-resolutions]": 10, "bernstein[per-resolution]": 15}
    _, out, _ = run(capsys, "candidates", "paper-n4", "--format", "newick")
    assert len(out.splitlines()) == 10


def test_check(capsys):
    code, out, _ = run(capsys, "check", "paper-n3", "--candidate", "0,6,6")
    assert code == 0 and json.loads(out)["extreme"] is True
    code, _, err = run(capsys, "check", "paper-n3", "--candidate", "1,1,1")
    assert code == 1 and "distance" in err


def test_counterexample_and_extend(capsys):
    _, out, _ = run(capsys, "counterexample", "5")
    data = json.loads(out)
    assert data["witness_root_weight"] == "11"
    assert data["verification"]["counterexample"] is True
    _, out, _ = run(capsys, "extend", "paper-n3", "--candidate", "4,6,6", "--epsilon", "1/2")
    data = json.loads(out)
    assert data["new_entry"] == "17/2" and data["verification"]["extreme"] is True


def test_file_input_with_labels_and_comments(tmp_path, capsys):
    f = tmp_path / "m.csv"
    f.write_text("# three taxa\nx,y,z\n0,2,4\n2,0,8\n4,8,0\n")
    out_file = tmp_path / "out.nwk"
    code, out, _ = run(capsys, "nearest", str(f), "--format", "newick", "-o", str(out_file))
    assert code == 0 and out == ""
    assert out_file.read_text() == "((x,y)4,z)6;\n"


@pytest.mark.parametrize("argv", [
    ["nearest", "missing-file"],
    ["extend", "paper-n3", "--candidate", "4,6,6", "--epsilon", "0"],
    ["counterexample", "3"],
    ["check", "paper-n3", "--candidate", "1,2,3"],
])
def test_input_errors_exit_1(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 1 and out == "" and err.startswith("error:")


def test_asymmetric_file(tmp_path, capsys):
    f = tmp_path / "bad.txt"
    f.write_text("0 1 2\n1 0 3\n2 4 0\n")
    code, _, err = run(capsys, "nearest", str(f))
    assert code == 1 and "(2,3)" in err


def test_disagreement_exits_2(capsys, monkeypatch):
    real = extremes.cross_validate

    def flipped(report):
        checks = real(report)
        checks[0].agrees = False
        return checks

    monkeypatch.setattr(extremes, "cross_validate", flipped)
    code, _, err = run(capsys, "extremes", "paper-n3")
    assert code == 2 and "disagree" in err


def test_inline_matrix_candidate():
    u = parse_candidate("0 4 6; 4 0 6; 6 6 0", 3)
    assert u.vector() == (4, 6, 6)


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "ultratrop", "nearest", "paper-n3", "--format", "csv"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.splitlines()[0] == "0,4,6"
