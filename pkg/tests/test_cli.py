import io
import json
import subprocess
import sys

import pytest

from schubert_seeds.cli import main
from schubert_seeds.plabic import graph_from_shape
from schubert_seeds.shapes import Shape


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


FIG1 = ("--shape", "4,3,2", "--k", "3", "--n", "7")


def test_seed_text_figure_one():
    code, out, _ = run("seed", *FIG1)
    assert code == 0
    assert "trip permutation: (2,4,6,7,1,3,5)" in out
    assert "faces: 10" in out
    assert "quiver: 7 frozen, 3 mutable" in out
    for lab in ["235", "356", "357", "135", "345", "456", "567", "167", "137", "157"]:
        assert f"\n{lab} " in out


def test_seed_json_is_deterministic():
    code, a, _ = run("seed", *FIG1, "--format", "json")
    _, b, _ = run("seed", *FIG1, "--format", "json")
    assert code == 0 and a == b
    doc = json.loads(a)
    assert len(doc["faces"]) == 10
    assert {v["kind"] for v in doc["seed"]["vertices"]} == {"frozen", "mutable"}


def test_seed_dot():
    code, out, _ = run("seed", *FIG1, "--format", "dot")
    assert code == 0 and "graph" in out and "digraph quiver" in out


def test_explore_counts_and_timing_on_stderr():
    code, out, err = run("explore", *FIG1)
    assert code == 0
    assert "clusters: 14" in out and "variables: 9" in out and "exhausted: True" in out
    assert "wall time" in err and "wall time" not in out


def test_explore_bound_is_not_fatal():
    code, out, _ = run("explore", "--shape", "4,4,4,4", "--k", "4", "--n", "8",
                       "--max-seeds", "30", "--format", "json")
    assert code == 0
    assert json.loads(out) == {"clusters": 30, "variables": json.loads(out)["variables"],
                               "exhausted": False, "max_seeds": 30}


def test_verify_passes():
    code, out, _ = run("verify", *FIG1, "--walks", "10", "--walk-length", "5", "--trials", "3")
    assert code == 0 and out.strip().endswith("PASS")


def test_verify_bound_exit_code():
    code, out, _ = run("verify", "--shape", "3,3,3", "--k", "3", "--n", "6", "--max-seeds", "3",
                       "--walks", "1", "--walk-length", "2", "--trials", "1")
    assert code == 4


def test_verify_skew():
    # v = w_K, x = (1,4,5,2,3,6), w = x v; the graph has one square face
    code, out, _ = run("verify", "--v", "3,2,1,6,5,4", "--w", "5,4,1,6,3,2", "--k", "3",
                       "--walks", "5", "--walk-length", "5")
    assert code == 0, out
    assert "square moves checked: 0" not in out


def test_non_additive_pair_is_rejected():
    code, _, err = run("seed", "--v", "2,5,1,4,3", "--w", "5,3,4,2,1", "--k", "2")
    assert code == 2 and "NotLengthAdditiveError" in err


def test_non_max_coset_is_rejected():
    code, _, err = run("seed", "--v", "1,2,3,4", "--w", "1,2,3,4", "--k", "2")
    assert code == 2 and "NotMaxCosetError" in err


def test_bad_shape_is_rejected():
    code, _, err = run("seed", "--shape", "1,2", "--k", "2", "--n", "5")
    assert code == 2


def test_missing_flags():
    code, _, err = run("seed", "--shape", "2,1")
    assert code == 2


def test_classify():
    assert run("classify", "--shape", "4,4,4", "--k", "3", "--n", "7")[1] == "E6 (rank 6)\n"
    assert run("classify", "--derived", "4,2,2")[1] == "E8\n"
    code, out, _ = run("classify", "--shape", "3,3,3", "--k", "3", "--n", "6", "--format", "json")
    assert json.loads(out) == {"family": "D", "rank": 4}


def test_moves_list_and_apply():
    code, out, _ = run("moves", "list", "--shape", "2,2", "--k", "2", "--n", "4")
    assert code == 0 and "24 -> 13" in out
    face = int(out.split()[1].rstrip(":"))
    code, out, _ = run("moves", "apply", "--shape", "2,2", "--k", "2", "--n", "4", "--face", str(face))
    assert code == 0 and "13 " in out and "24 " not in out
    code, _, err = run("moves", "apply", "--shape", "2,2", "--k", "2", "--n", "4", "--face", "0")
    assert code == 2


def test_measure_and_graph_file(tmp_path):
    path = tmp_path / "g.json"
    path.write_text(json.dumps(graph_from_shape(Shape.rectangle(2, 4)).to_json()))
    code, out, _ = run("measure", "--graph", str(path))
    assert code == 0
    assert out.split() == ["12", "1", "13", "1", "14", "1", "23", "1", "24", "2", "34", "1"]
    code, out, _ = run("measure", "--graph", str(path), "--weights", "random", "--format", "json")
    assert code == 0 and len(json.loads(out)) == 6


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "schubert_seeds.cli", "classify", "--derived", "3,3"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "E6\n"
