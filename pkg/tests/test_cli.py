import io
import json

import pytest

from seqrel import cli, instances
from seqrel.model import save_instance


@pytest.fixture
def fig1_path(tmp_path, fig1):
    path = tmp_path / "fig1.json"
    save_instance(fig1, path)
    return path


@pytest.fixture
def tri_path(tmp_path, triangular4):
    path = tmp_path / "tri.json"
    save_instance(triangular4, path)
    return path


def run(capsys, *argv):
    code = cli.main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_solve(capsys, fig1_path):
    code, out, _ = run(capsys, "solve", fig1_path)
    assert code == 0
    assert "value: 1.3125" in out
    assert "first action: A" in out


def test_solve_triangular_path(capsys, tri_path):
    code, out, _ = run(capsys, "solve", tri_path)
    assert "value: 1.53125" in out
    assert "all-positive path: A,B,C,D" in out


def test_solve_explain(capsys, fig1_path):
    code, out, _ = run(capsys, "solve", fig1_path, "--explain")
    assert code == 0
    assert "classes:" in out and "dominated: B" in out and "policy tree:" in out


def test_beta_override(capsys, tmp_path):
    path = tmp_path / "id.json"
    save_instance(instances.identity(2), path)
    code, out, _ = run(capsys, "solve", path, "--beta", "0")
    assert "value: 0.5" in out


def test_evaluate(capsys, fig1_path):
    code, out, _ = run(capsys, "evaluate", fig1_path, "--policy", "naive")
    assert code == 0 and "ratio:" in out and "bounds:" in out


def test_simulate(capsys, fig1_path):
    code, out, _ = run(capsys, "simulate", fig1_path, "--runs", "2000", "--seed", "1", "--trace", "1")
    assert code == 0
    assert out.startswith("type=")
    assert "mean:" in out and "exact: 1.3125" in out


def test_sweep(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", "--n-types", 3, "--n-categories", 3, "--samples", 3,
                       "--betas", "0,0.5", "--out-dir", tmp_path)
    assert code == 0
    assert (tmp_path / "sweep_3x3_rows.csv").exists()
    assert (tmp_path / "sweep_3x3_aggregates.csv").exists()


def test_gen(capsys, tmp_path):
    out_path = tmp_path / "g.json"
    code, _, _ = run(capsys, "gen", "--n-types", 4, "--n-categories", 3, "--seed", 5, "--out", out_path)
    assert code == 0
    doc = json.loads(out_path.read_text())
    assert len(doc["categories"]) == 3


def test_recommend(capsys, monkeypatch, tmp_path):
    path = tmp_path / "id.json"
    save_instance(instances.identity(2, products=[2, 1]), path)
    monkeypatch.setattr("sys.stdin", io.StringIO("x\n0\n1\n"))
    code, out, err = run(capsys, "recommend", path)
    assert code == 0
    assert out.splitlines() == ["A.1", "B.1", "payoff: 1"]
    assert "0 or 1" in err


def test_recommend_inconsistent(capsys, monkeypatch, tri_path):
    monkeypatch.setattr("sys.stdin", io.StringIO("0\n"))
    code, _, err = run(capsys, "recommend", tri_path)
    assert code == cli.EXIT_INCONSISTENT
    assert "inconsistent" in err


def test_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, "solve", tmp_path / "nope.json")
    assert code == cli.EXIT_IO


def test_invalid_instance(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"beta": 0.5, "categories": [{"name": "A", "products": 1}],
                                "types": [{"prior": 0.3, "relevance": [1]}]}))
    code, _, err = run(capsys, "solve", path)
    assert code == cli.EXIT_VALIDATION and "error" in err


def test_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["solve"])
    assert exc.value.code == cli.EXIT_USAGE
