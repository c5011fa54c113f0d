import json

import pytest

from netgoods.cli import main, to_dot
from netgoods.graph import is_well_covered_forest, path_graph, read_graph


@pytest.fixture
def write_graph(tmp_path):
    def write(text, name="g.txt"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


P3 = "n 3\n0 1\n1 2\n"
P4 = "n 4\n0 1\n1 2\n2 3\n"
C4 = "n 4\n0 1\n1 2\n2 3\n0 3\n"


@pytest.mark.parametrize(
    "text, counts, dims",
    [
        (P3, {"specialized": 2, "distributed": 0, "hybrid": 0}, [0, 0]),
        (P4, {"specialized": 3, "distributed": 0, "hybrid": 2}, [1, 1]),
        (C4, {"specialized": 2, "distributed": 1, "hybrid": 0}, [0, 0, 0]),
    ],
)
def test_equilibria(capsys, write_graph, text, counts, dims):
    code, out, _ = run(capsys, "equilibria", "--graph", write_graph(text))
    assert code == 0
    data = json.loads(out)
    assert data["counts"] == counts
    assert sorted(p["dimension"] for p in data["pieces"]) == dims


def test_analyze_c4(capsys, write_graph):
    code, out, _ = run(capsys, "analyze", "--graph", write_graph(C4), "--k", "1")
    assert code == 0
    rep = json.loads(out)["reports"][0]
    assert rep["C_star"]["value"] == "4/3"
    assert rep["benefit"]["k"] == 1.0 and "sigma_b" in rep["benefit"]


def test_analyze_sweep_converges(capsys, write_graph):
    code, out, _ = run(capsys, "analyze", "--graph", write_graph(P4), "--sigma-sweep", "0.9,0.99,0.999")
    assert code == 0
    table = json.loads(out)["convergence"]
    gaps = [row["gap_to_high_limit"] for row in table]
    assert gaps == sorted(gaps, reverse=True) and gaps[-1] < 1e-3
    sig = [row["sigma_b"] for row in table]
    assert sig == pytest.approx([0.9, 0.99, 0.999], abs=1e-10)


def test_analyze_well_covered_flag(capsys, write_graph, tmp_path):
    path = str(tmp_path / "wc.txt")
    assert main(["gen", "well-covered-forest", "--m", "3", "--seed", "5", "--out", path]) == 0
    assert is_well_covered_forest(read_graph(path))
    code, out, _ = run(capsys, "analyze", "--graph", path, "--sigma-b", "0.5", "--weights", "ones")
    rep = json.loads(out)["reports"][0]
    assert rep["well_covered_forest"] and rep["cost_equals_half_c_e_n"]
    assert rep["all_equilibria_same_cost"] == "3"


def test_analyze_weight_file(capsys, write_graph, tmp_path):
    w = tmp_path / "w.json"
    w.write_text('{"0": "5/2", "2": "1"}')
    code, out, _ = run(capsys, "analyze", "--graph", write_graph(P3), "--k", "1", "--weights", str(w))
    assert code == 0
    assert json.loads(out)["reports"][0]["E_w_star"]["value"] == "7/2"


def test_reports_byte_identical(capsys, write_graph):
    g = write_graph(P4)
    outs = [run(capsys, "analyze", "--graph", g, "--sigma-sweep", "0.5,0.1")[1] for _ in range(2)]
    assert outs[0] == outs[1]
    outs = [run(capsys, "verify", "--only", "2,5", "--seed", "9")[1] for _ in range(2)]
    assert outs[0] == outs[1]


def test_input_errors(capsys, write_graph, tmp_path):
    g = write_graph(P4)
    assert run(capsys, "analyze", "--graph", g)[0] == 2
    assert run(capsys, "analyze", "--graph", g, "--k", "1", "--sigma-b", "0.5")[0] == 2
    assert run(capsys, "analyze", "--graph", g, "--sigma-b", "1.5")[0] == 2
    assert run(capsys, "equilibria", "--graph", str(tmp_path / "missing"))[0] == 2
    assert run(capsys, "equilibria", "--graph", write_graph("0 0\n", "loop.txt"))[0] == 2
    assert run(capsys, "equilibria", "--graph", g, "--n-max", "3")[0] == 2
    assert run(capsys, "gen", "gnp", "--n", "5")[0] == 2
    assert run(capsys, "export-dot", "--graph", g, "--profile", "1,1,0,1")[0] == 2
    assert run(capsys, "verify", "--only", "99")[0] == 2


def test_gen(capsys):
    code, out, _ = run(capsys, "gen", "gnp", "--n", "8", "--p", "0", "--seed", "1")
    assert code == 0 and out == "n 8\n"
    code, out, _ = run(capsys, "gen", "tree", "--n", "10", "--seed", "4")
    assert out.count("\n") == 10


def test_verify_single_graph(capsys, write_graph):
    code, out, _ = run(capsys, "verify", "--graph", write_graph(C4))
    lines = out.splitlines()
    assert code == 0 and len(lines) == 12
    assert lines[3].startswith("[N/A ]  4")


def test_verify_fault_injection(capsys):
    code, out, _ = run(capsys, "verify", "--only", "11", "--inject-fault")
    assert code == 1 and out.startswith("[FAIL] 11")


def test_export_dot(capsys, write_graph):
    code, out, _ = run(capsys, "export-dot", "--graph", write_graph(P3), "--profile", "0,1,0")
    assert code == 0 and out.count("width=0.6") == 1
    code, out, _ = run(capsys, "export-dot", "--graph", write_graph(P4), "--profile", "1/2,1/2,0,1")
    assert '"0" -- "1" [style=solid]' in out and '"2" -- "3" [style=dotted]' in out
    code, out, _ = run(capsys, "export-dot", "--graph", write_graph("n 0\n"))
    assert code == 0 and out == ""
    assert to_dot(path_graph(0), (), 1) == ""
