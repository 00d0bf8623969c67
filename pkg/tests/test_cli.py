import json

from sylrank.cli import main
from sylrank.report import canonical_json


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_rank_verb_golden(capsys):
    code, out, _ = run_cli(capsys, "rank", "--ring", "Z",
                           "--fn", "pullback(mod(2),rkFp(2))", "--matrix", "2")
    assert code == 0
    assert out == canonical_json({"schema": "sylrank/1", "value": "0/1"}) + "\n"


def test_dim_verb_golden(capsys):
    code, out, _ = run_cli(capsys, "dim", "--ring", "Z",
                           "--fn", "pullback(incQ,rkQ)", "--module", "gens 1; rels 6")
    assert code == 0
    assert json.loads(out)["value"] == "0/1"


def test_check_axioms_exit_zero_and_deterministic(capsys):
    args = ("check-axioms", "--facet", "matrix", "--fn", "rkZmodPk(2,2)",
            "--samples", "40", "--seed", "7")
    code, out1, _ = run_cli(capsys, *args)
    assert code == 0
    code, out2, _ = run_cli(capsys, *args)
    assert out1 == out2


def test_failing_check_exits_one(capsys):
    code, out, _ = run_cli(
        capsys, "check-length", "--ring", "Z",
        "--fn", "convex(1/2*pullback(incQ,rkQ)+1/2*pullback(mod(2),rkFp(2)))",
        "--samples", "5", "--seed", "1",
    )
    assert code == 1
    assert json.loads(out)["ok"] is False


def test_parse_error_exits_two(capsys):
    code, out, err = run_cli(capsys, "rank", "--ring", "Z", "--fn", "nope(",
                             "--matrix", "2")
    assert code == 2
    assert out == ""
    assert "error" in err


def test_usage_error_exits_two(capsys):
    assert main(["rank", "--ring", "Z"]) == 2  # missing --fn
    assert main(["no-such-verb"]) == 2


def test_conflicting_matrix_sources_exit_two(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("2")
    code, _, err = run_cli(capsys, "rank", "--ring", "Z",
                           "--fn", "pullback(incQ,rkQ)",
                           "--matrix", "2", "--matrix-file", str(path))
    assert code == 2
    assert "exactly one" in err


def test_matrix_file_input(capsys, tmp_path):
    path = tmp_path / "m.txt"
    path.write_text("2,0;0,3")
    code, out, _ = run_cli(capsys, "rank", "--ring", "Z",
                           "--fn", "pullback(incQ,rkQ)", "--matrix-file", str(path))
    assert code == 0
    assert json.loads(out)["value"] == "2/1"


def test_module_file_with_sub_block(capsys, tmp_path):
    path = tmp_path / "mod.txt"
    path.write_text("ring Z\ngenerators 1\nrelations\n4\nsub\n2\n")
    code, out, _ = run_cli(capsys, "bidim", "--ring", "Z",
                           "--fn", "pullback(mod(4),rkZmodPk(2,2))",
                           "--module-file", str(path))
    assert code == 0
    assert json.loads(out)["value"] == "1/2"


def test_seed_env_default(capsys, monkeypatch):
    monkeypatch.setenv("SYLRANK_SEED", "11")
    code, out1, _ = run_cli(capsys, "check-axioms", "--facet", "matrix",
                            "--fn", "rkZmodPk(2,2)", "--samples", "25")
    assert code == 0
    assert json.loads(out1)["seed"] == 11


def test_tsv_format(capsys):
    code, out, _ = run_cli(capsys, "--format", "tsv", "rank", "--ring", "Z",
                           "--fn", "pullback(incQ,rkQ)", "--matrix", "3")
    assert code == 0
    assert "value\t1/1" in out


def test_ore_and_epi_verbs(capsys):
    code, out, _ = run_cli(capsys, "ore-test", "--fn", "pullback(mod(3),rkFp(3))",
                           "--m", "2", "--horizon", "6")
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "in-image" and doc["rk_pi"] == "1/1"

    code, out, _ = run_cli(capsys, "epi-range", "--epi", "Z->Zmod(2)",
                           "--fn", "pullback(incQ,rkQ)")
    assert code == 0
    assert json.loads(out)["in_image"] is False


def test_sofic_verbs(capsys):
    code, out, _ = run_cli(capsys, "sofic-dim", "--field", "Q", "--group", "C2",
                           "--module", "gens 1; rels", "--sub", "1*g0+1*g1")
    assert code == 0
    assert json.loads(out)["value"] == "1/2"

    code, out, _ = run_cli(capsys, "sofic-vs-vn", "--field", "Q", "--group", "C2",
                           "--samples", "5", "--seed", "2")
    assert code == 0
    assert json.loads(out)["ok"] is True
