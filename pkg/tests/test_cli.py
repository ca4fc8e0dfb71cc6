import json

import pytest

from liebra.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_count(capsys):
    code, out, _ = run(capsys, "count", "inc-edges", "--n", "3")
    assert code == 0 and out.strip() == "2 5 2 | poly: 2 5 2 | MATCH"


def test_matrix_report(capsys):
    code, out, _ = run(capsys, "matrix", "--n", "3", "--check", "triangular", "--check", "unimodular")
    assert code == 0
    assert "9×9 upper triangular, diagonal ±1" in out and "determinant" in out


def test_matrix_lex_order_reports_violations(capsys):
    code, out, _ = run(capsys, "matrix", "lie", "--n", "4", "--order", "lex")
    assert code == 1 and "NOT upper triangular" in out


def test_matrix_com(capsys):
    code, out, _ = run(capsys, "matrix", "com", "--n", "3")
    assert code == 0 and "16x16" in out


def test_normalize_lie_json(capsys):
    code, out, _ = run(capsys, "normalize", "lie", "--expr", "[x2,x1]", "--json")
    data = json.loads(out)
    assert code == 0 and data["schema"] == 1
    assert data["terms"] == [{"coeff": -1, "monomial": "[x1,x2]", "tree": data["terms"][0]["tree"]}]


def test_normalize_poisson(capsys):
    code, out, _ = run(capsys, "normalize", "poisson", "--expr", "[x1,x2*x3]")
    assert out.split("\n")[:2] == ["+1 * [x1,x2]*x3", "+1 * [x1,x3]*x2"]


def test_normalize_eil_from_file(capsys, tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("r 2>1\n")
    code, out, _ = run(capsys, "normalize", "eil", "--graph", str(f))
    assert code == 0 and out.strip() == "-1 * r1>2"


def test_pair(capsys):
    assert run(capsys, "pair", "--edges", "r1>2", "--expr", "[x1,x2]")[1].strip() == "1"
    assert run(capsys, "pair", "--edges", "r2>1", "--expr", "[x1,x2]")[1].strip() == "-1"


def test_basis_and_enumerate(capsys):
    code, out, _ = run(capsys, "basis", "poisson", "--n", "3", "--json")
    assert json.loads(out)["count"] == 16
    code, out, _ = run(capsys, "enumerate", "trees", "--n", "3")
    assert "# 9 trees" in out


def test_order_commands(capsys):
    code, out, _ = run(capsys, "order", "ind", "--n", "3", "--list")
    assert code == 0 and len(out.strip().splitlines()) == 9
    code, out, _ = run(capsys, "order", "opdag", "--n", "3", "--dot")
    assert out.startswith("digraph")


def test_verify_small(capsys):
    code, out, _ = run(capsys, "verify", "rank", "counts", "--max-n", "4")
    assert code == 0 and out.count("PASS") == 2


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "normalize", "lie", "--expr", "[x1,x1]")
    assert code == 1 and "appears more than once" in err


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 2
