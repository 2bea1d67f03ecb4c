import json
import subprocess
import sys

import pytest

from qcluster import acceptance, cli
from qcluster.grassmann import rectangles_seed
from qcluster.qseed import load_seed, mutate_matrices


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gr_init_and_round_trip(tmp_path, capsys):
    path = tmp_path / "g36.json"
    code, _, _ = run(capsys, "gr", "init", "-k", "3", "-n", "6", "-o", str(path))
    assert code == 0
    assert load_seed(path) == rectangles_seed(3, 6)
    code, _, _ = run(capsys, "gr", "init", "-k", "3", "-n", "6", "--xi", "1", "-o", str(tmp_path / "x1.json"))
    assert code == 0
    assert load_seed(tmp_path / "x1.json").meta["xi"] == 1


def test_gr_init_bad_params(capsys):
    code, _, err = run(capsys, "gr", "init", "-k", "1", "-n", "3")
    assert code == 2 and "InvalidParams" in err


def test_mutate_prints_new_variable(tmp_path, capsys):
    path = tmp_path / "g36.json"
    run(capsys, "gr", "init", "-k", "3", "-n", "6", "-o", str(path))
    code, out, _ = run(capsys, "mutate", str(path), "D(1,2,4)", "-q")
    assert code == 0 and "new variable D(1,3,5)" in out


def test_mutate_twice_and_empty_are_identity(tmp_path, capsys):
    path = tmp_path / "g36.json"
    run(capsys, "gr", "init", "-k", "3", "-n", "6", "-o", str(path))
    for dirs in ([], ["0", "0"]):
        out = tmp_path / "out.json"
        assert run(capsys, "mutate", str(path), *dirs, "-o", str(out))[0] == 0
        assert json.loads(out.read_text()) == json.loads(path.read_text())


def test_check_scott(capsys):
    code, out, _ = run(capsys, "check", "scott", "-k", "2", "-n", "5")
    assert code == 0 and "# PASS: 45/45" in out


def test_check_quasihom_json(capsys):
    code, out, _ = run(capsys, "check", "quasihom", "-k", "3", "-n", "6", "--sigma", "1", "--format", "json")
    assert code == 0 and json.loads(out)["passed"]


def test_check_braid(capsys):
    code, out, _ = run(capsys, "check", "braid", "-k", "3", "-n", "6")
    assert code == 0 and "# PASS: 22/22" in out


def test_check_compat_file(tmp_path, capsys):
    path = tmp_path / "g.json"
    run(capsys, "gr", "init", "-k", "2", "-n", "5", "-o", str(path))
    assert run(capsys, "check", "compat", "--seed", str(path))[0] == 0


def test_check_relations_under_sigma(capsys):
    code, out, _ = run(capsys, "check", "relations", "-k", "2", "-n", "4", "--sigma", "1")
    assert code == 0


def test_check_needs_kn(capsys):
    with pytest.raises(SystemExit):
        cli.main(["check", "scott"])


@pytest.mark.parametrize(
    "word,expr,want",
    [
        ("s1 s2 s1", "D(1,4,5)", "D(3,5,6)"),
        ("s1 s1^-1", "z", "z"),
        ("s1", "D(2,3,4)", "[D(1,2,3) D(2,3,4)^-1 D(3,4,5)]"),
    ],
)
def test_braid_apply(capsys, word, expr, want):
    code, out, _ = run(capsys, "braid", "apply", word, expr, "-k", "3", "-n", "6")
    assert code == 0 and out.strip() == want


def test_braid_table(capsys):
    code, out, _ = run(capsys, "braid", "table", "-k", "3", "-n", "6", "--sigma", "2")
    assert code == 0
    assert "D(1,3,5)\t[D(3,4,5)^-1 z]" in out.splitlines()


def test_enumerate(capsys):
    code, out, _ = run(capsys, "enumerate", "-k", "2", "-n", "6", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["clusters"] == 14 and len(data["mutable_variables"]) == 9


def test_accept_subset(capsys):
    code, out, _ = run(capsys, "accept", "--only", "scott", "gr24")
    assert code == 0
    assert out.count("[PASS]") == 2 and "2/2 criteria passed" in out


def _sign_bug(btilde, lam, k):
    nb, nl = mutate_matrices(btilde, lam, k)
    rows = [list(r) for r in nl]
    for j in range(len(rows)):
        rows[j][k], rows[k][j] = -rows[j][k], -rows[k][j]
    return nb, tuple(tuple(r) for r in rows)


def test_accept_catches_lambda_sign_bug(monkeypatch, capsys):
    monkeypatch.setattr(acceptance, "mutate_matrices", _sign_bug)
    code, out, _ = run(capsys, "accept", "--only", "properties")
    assert code == 1 and "[FAIL]" in out


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "qcluster", "braid", "apply", "s2", "D(1,3,5)", "-k", "3", "-n", "6"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0 and res.stdout.strip() == "[D(3,4,5)^-1 z]"
