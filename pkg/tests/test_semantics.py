import random

import pytest

from conftest import load_formula
from logic.formula import Bind, Exists, Forall, Not, free_placeholders
from logic.normal_form import rename_apart, to_binding_normal_form
from logic.parser import parse_formula
from model.assignment import EMPTY_ASSIGNMENT, Assignment
from semantics.evaluator import evaluate, holds
from utils.errors import EvaluationError
from utils.generators import random_sentence, random_structure


def test_phi1_holds_on_the_running_structure(running_sig, running_str):
    phi1 = load_formula("running_phi1.fol", running_sig)
    assert evaluate(running_str, EMPTY_ASSIGNMENT, phi1)
    assert holds(running_str, phi1)


def test_phi2_under_assignment(running_sig, running_str):
    phi2 = load_formula("running_phi2.fol", running_sig)
    assert evaluate(running_str, Assignment({"x": "0", "b": "1"}), phi2)


def test_phi3_with_r_is_false(running_sig, running_str):
    phi3 = load_formula("running_phi3_r.fol", running_sig)
    assert not evaluate(running_str, Assignment({"x": "0"}), phi3)


def test_phi3_with_q_is_true(running_sig, running_str):
    # q 包含 (a↦0, b↦0) 和 (a↦0, b↦1)
    phi3 = load_formula("running_phi3.fol", running_sig)
    assert evaluate(running_str, Assignment({"x": "0"}), phi3)


def test_all_pairs_on_small_structures(binary_sig, bisim_structures):
    phi = load_formula("all_pairs.fol", binary_sig)
    assert holds(bisim_structures["r3"], phi)
    assert not holds(bisim_structures["r4"], phi)


def test_contradiction_never_holds(unary_sig):
    phi = parse_formula("forall x. (a,x) (q & ~q)", unary_sig)
    rng = random.Random(3)
    for _ in range(10):
        assert not holds(random_structure(unary_sig, rng), phi)


def test_unbound_placeholder(running_sig, running_str):
    phi2 = load_formula("running_phi2.fol", running_sig)
    with pytest.raises(EvaluationError, match="unbound placeholder: b"):
        evaluate(running_str, Assignment({"x": "0"}), phi2)
    with pytest.raises(EvaluationError, match="not a sentence"):
        holds(running_str, phi2)


def test_negation_duality_and_idempotent_binding(binary_sig):
    rng = random.Random(11)
    for _ in range(30):
        structure = random_structure(binary_sig, rng, order=2)
        phi = random_sentence(binary_sig, rng, depth=3)
        assert holds(structure, Not(phi)) == (not holds(structure, phi))
    for _ in range(10):
        structure = random_structure(binary_sig, rng, order=2)
        inner = parse_formula("(b,y) r", binary_sig)
        forall = Forall("x", Forall("y", Bind("a", "x", inner)))
        dual = Not(Exists("x", Not(Forall("y", Bind("a", "x", inner)))))
        twice = Forall("x", Forall("y", Bind("a", "x", Bind("a", "x", inner))))
        assert holds(structure, forall) == holds(structure, dual) == holds(structure, twice)


def test_evaluation_is_local(running_sig, running_str):
    phi2 = load_formula("running_phi2.fol", running_sig)
    assert free_placeholders(phi2) == frozenset({"b"})
    for b in running_str.domain:
        base = evaluate(running_str, Assignment({"b": b}), phi2)
        for extra in running_str.domain:
            assert evaluate(running_str, Assignment({"b": b, "x": extra, "a": extra}), phi2) == base


def test_renaming_apart_keeps_truth(binary_sig):
    rng = random.Random(19)
    for _ in range(40):
        structure = random_structure(binary_sig, rng, order=2)
        nf = to_binding_normal_form(random_sentence(binary_sig, rng, depth=3))
        expected = holds(structure, nf.to_formula())
        assert holds(structure, rename_apart(nf, start=5).to_formula()) == expected, nf.text()


def test_vacuous_binding_is_reported(running_sig, running_str):
    phi = parse_formula("forall x. (a,x)(b,y) s", running_sig)
    with pytest.raises(EvaluationError, match="variable unassigned at binding: \\(b, y\\); the binding is vacuous"):
        holds(running_str, phi)
    assert holds(running_str, to_binding_normal_form(phi).to_formula()) == holds(
        running_str, parse_formula("forall x. (a,x) s", running_sig)
    )
