import json

import pytest

from conftest import corpus_path
from cli.commands import EXIT_FALSE, EXIT_INPUT, EXIT_OK, EXIT_SEMANTIC, EXIT_TRUE, run
from utils.config import get_settings

TRIPLE = str(corpus_path("triple.sig"))
RUNNING = str(corpus_path("running.sig"))
BINARY = str(corpus_path("binary.sig"))
INTERP = str(corpus_path("interp.sig"))


def _corpus(name):
    return str(corpus_path(name))


def test_sat_reports_unsat_with_certificate(tmp_path, capsys):
    target = tmp_path / "phi1.json"
    code = run(["sat", "--sig", TRIPLE, "--formula", _corpus("triple_phi1.fol"), "--certificate", str(target)])
    assert code == EXIT_FALSE
    out = capsys.readouterr().out
    assert '"verdict": "unsat"' in out
    assert json.loads(target.read_text(encoding="utf-8"))["verdict"] == "unsat"


def test_sat_reports_sat(capsys):
    code = run(["sat", "--sig", TRIPLE, "--formula", _corpus("triple_phi3.fol"), "--minimal", "--jobs", "2"])
    assert code == EXIT_TRUE
    assert '"verdict": "sat"' in capsys.readouterr().out


def test_sat_outside_one_binding(capsys):
    code = run(["sat", "--sig", BINARY, "--formula", _corpus("infinity.fol")])
    assert code == EXIT_SEMANTIC
    assert "fragment not OB" in capsys.readouterr().err


@pytest.mark.parametrize(
    "formula, assign, expected, text",
    [
        ("running_phi1.fol", None, EXIT_TRUE, "true"),
        ("running_phi2.fol", "x=0,b=1", EXIT_TRUE, "true"),
        ("running_phi3_r.fol", "x=0", EXIT_FALSE, "false"),
    ],
)
def test_eval(formula, assign, expected, text, capsys):
    argv = ["eval", "--sig", RUNNING, "--str", _corpus("running.str"), "--formula", _corpus(formula)]
    if assign:
        argv += ["--assign", assign]
    assert run(argv) == expected
    assert capsys.readouterr().out.strip() == text


def test_eval_needs_bound_placeholders(capsys):
    argv = ["eval", "--sig", RUNNING, "--str", _corpus("running.str"), "--formula", _corpus("running_phi3_r.fol")]
    assert run(argv) == EXIT_SEMANTIC
    assert "unbound placeholder" in capsys.readouterr().err


@pytest.mark.parametrize(
    "sig, formula, fragment",
    [
        (TRIPLE, "triple_phi1.fol", "OB"),
        (RUNNING, "running_phi1.fol", "BB"),
        (BINARY, "infinity.fol", "DB"),
        (BINARY, "separating_cb.fol", "CB"),
    ],
)
def test_classify(sig, formula, fragment, capsys):
    assert run(["classify", "--sig", sig, "--formula", _corpus(formula)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == fragment


def test_model_prints_a_structure(capsys):
    code = run(["model", "--sig", TRIPLE, "--formula", _corpus("triple_phi2.fol"), "--max-order", "2"])
    assert code == EXIT_TRUE
    assert "structure {" in capsys.readouterr().out


def test_model_reports_absence(tmp_path, capsys):
    path = tmp_path / "contradiction.fol"
    path.write_text("forall x. (a,x) (q & ~q)\n", encoding="utf-8")
    code = run(["model", "--sig", INTERP, "--formula", str(path), "--max-order", "2", "--strategy", "enumerate"])
    assert code == EXIT_FALSE
    assert "no model of order <= 2" in capsys.readouterr().err


def test_bisim(capsys):
    argv = ["bisim", "--sig", BINARY, "--str1", _corpus("r1.str"), "--str2", _corpus("r2.str")]
    assert run(argv) == EXIT_TRUE
    assert capsys.readouterr().out.strip() == "bisimilar"
    argv = ["bisim", "--sig", BINARY, "--str1", _corpus("r3.str"), "--str2", _corpus("r4.str"), "--depth", "2"]
    assert run(argv) == EXIT_FALSE
    lines = capsys.readouterr().out.splitlines()
    assert lines == ["not bisimilar", "forall x0. (forall x1. ((a, x0) ((b, x1) r)))"]


def test_graphs(tmp_path, capsys):
    out = tmp_path / "graphs"
    code = run(["graphs", "--sig", TRIPLE, "--formula", _corpus("triple_phi2.fol"), "--out", str(out)])
    assert code == EXIT_OK
    assert capsys.readouterr().out.strip() == "a,b,c: 3 schemas, conflicting"
    assert '"s2.c" -> "s2.c"' in (out / "a_b_c_dependence.dot").read_text(encoding="utf-8")
    assert (out / "a_b_c_collapsing.dot").exists()

    run(["graphs", "--sig", TRIPLE, "--formula", _corpus("triple_phi1.fol"), "--out", str(out)])
    assert capsys.readouterr().out.strip() == "a,b,c: 3 schemas, overlapping"
    run(["graphs", "--sig", TRIPLE, "--formula", _corpus("triple_phi3.fol"), "--out", str(out)])
    assert capsys.readouterr().out.strip().startswith("a,b,c: 3 schemas, cycle s")


def test_normalize(capsys):
    assert run(["normalize", "--sig", INTERP, "--formula", _corpus("interpolate_left.fol")]) == EXIT_OK
    assert "x0" in capsys.readouterr().out


def test_interpolate(capsys):
    argv = [
        "interpolate",
        "--sig",
        INTERP,
        "--left",
        _corpus("interpolate_left.fol"),
        "--right",
        _corpus("interpolate_right.fol"),
    ]
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out.strip() == "forall x0. ((a, x0) q)"


def test_interpolate_rejects_non_implication(capsys):
    argv = ["interpolate", "--sig", INTERP, "--left", _corpus("interpolate_right.fol")]
    argv += ["--right", _corpus("interpolate_left.fol")]
    assert run(argv) == EXIT_SEMANTIC
    assert "not an implication" in capsys.readouterr().err


def test_skolem_check(capsys):
    valid = _corpus("skolem_valid.json")
    assert run(["skolem-check", "--table", valid]) == EXIT_OK
    assert capsys.readouterr().out.strip() == f"{valid}: valid skolem map for exists x. forall y. exists z."
    assert run(["skolem-check", "--table", _corpus("skolem_dependent.json")]) == EXIT_SEMANTIC
    assert "dependence violated for x" in capsys.readouterr().err


def test_entangle_is_reproducible(capsys):
    argv = ["entangle", "--sig", TRIPLE, "--formula", _corpus("triple_phi1.fol"), "--samples", "20", "--seed", "7"]
    assert run(argv) == EXIT_OK
    first = capsys.readouterr().out
    assert first.strip() == "a,b,c: entangled 20/20"
    run(argv)
    assert capsys.readouterr().out == first


def test_fmp_bound(capsys):
    assert run(["fmp-bound", "-n", "2", "-H", "1", "-k", "2"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "n=2 h=1 k=2 bound=33554432"
    assert run(["fmp-bound", "--sig", TRIPLE, "--formula", _corpus("triple_phi1.fol")]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "n=3 h=1 k=3 bound=3*2^(9!)"
    assert run(["fmp-bound", "-n", "2"]) == EXIT_INPUT


def test_check(capsys):
    argv = ["check", "--sig", RUNNING, "--str", _corpus("running.str"), "--formula", _corpus("running_phi1.fol")]
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out.splitlines() == [f"{RUNNING}: ok", f"{_corpus('running.str')}: ok", f"{_corpus('running_phi1.fol')}: ok"]


def test_usage_and_input_errors(tmp_path, capsys):
    assert run([]) == EXIT_INPUT
    broken = tmp_path / "broken.fol"
    broken.write_text("forall x. (a,x\n", encoding="utf-8")
    assert run(["classify", "--sig", INTERP, "--formula", str(broken)]) == EXIT_INPUT
    assert run(["classify", "--sig", INTERP, "--formula", str(tmp_path / "missing.fol")]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error: ")


def test_unknown_relation_is_semantic(tmp_path, capsys):
    path = tmp_path / "unknown.fol"
    path.write_text("forall x. (a,x) zzz\n", encoding="utf-8")
    assert run(["classify", "--sig", INTERP, "--formula", str(path)]) == EXIT_SEMANTIC
    assert "unknown relation" in capsys.readouterr().err


def test_vacuous_binding_fails_eval_but_not_sat(tmp_path, capsys):
    path = tmp_path / "vacuous.fol"
    path.write_text("forall x. (a,x)(b,y) s\n", encoding="utf-8")
    argv = ["eval", "--sig", RUNNING, "--str", _corpus("running.str"), "--formula", str(path)]
    assert run(argv) == EXIT_SEMANTIC
    err = capsys.readouterr().err
    assert "variable unassigned at binding" in err
    assert "vacuous" in err
    assert run(["sat", "--sig", RUNNING, "--formula", str(path)]) == EXIT_TRUE
    assert '"verdict": "sat"' in capsys.readouterr().out


def test_bisim_prints_nothing_when_search_hits_the_guard(monkeypatch, capsys):
    monkeypatch.setenv("SENTENCE_ENUMERATION_CAP", "1")
    get_settings.cache_clear()
    argv = ["bisim", "--sig", BINARY, "--str1", _corpus("r3.str"), "--str2", _corpus("r4.str"), "--depth", "2"]
    assert run(argv) == EXIT_SEMANTIC
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "resource guard" in captured.err


def test_help_explains_binding_precedence(capsys):
    with pytest.raises(SystemExit):
        run(["--help"])
    assert "((a,x) q) & r" in " ".join(capsys.readouterr().out.split())
