import itertools
import random

import pytest

from conftest import load_normal_form
from logic.formula import And, Not, Or, Rel
from logic.normal_form import DerivedRelation, to_binding_normal_form
from logic.parser import parse_formula
from logic.printer import print_formula
from solver.propositional import basic_interpolant, interpolate_blocks, prop_eval, satisfiable, symbols_of
from utils.errors import InterpolationError
from utils.generators import random_implication_pair

A = frozenset({"a"})
Q = Rel("q", A)
R = Rel("r", A)
S = Rel("s", A)
U = Rel("u", A)


def test_projection_onto_the_shared_symbol():
    interpolant = basic_interpolant(DerivedRelation.of(And(Q, S)), DerivedRelation.of(Or(Q, R)))
    assert interpolant.body == Q


def test_unsatisfiable_antecedent_gives_a_contradiction():
    interpolant = basic_interpolant(DerivedRelation.of(And(Q, Not(Q))), DerivedRelation.of(U))
    assert interpolant.body == And(Q, Not(Q))
    assert not satisfiable([interpolant.body])


def test_fully_shared_alphabet_keeps_the_antecedent():
    interpolant = basic_interpolant(DerivedRelation.of(And(Q, R)), DerivedRelation.of(Or(Q, R)))
    assert interpolant.body == And(Q, R)


def test_valid_consequent_gives_a_tautology():
    interpolant = basic_interpolant(DerivedRelation.of(Or(Q, S)), DerivedRelation.of(Or(Q, Not(Q))))
    assert interpolant.body == Or(Q, Not(Q))


def test_non_implication_is_rejected():
    with pytest.raises(InterpolationError, match="not an implication"):
        basic_interpolant(DerivedRelation.of(Q), DerivedRelation.of(S))


def _valuations(symbols):
    for values in itertools.product((False, True), repeat=len(symbols)):
        yield dict(zip(symbols, values))


def test_random_implications_have_interpolants():
    rng = random.Random(5)
    for _ in range(50):
        first, second = random_implication_pair(rng)
        interpolant = basic_interpolant(first, second)
        shared = set(first.symbols()) & set(second.symbols())
        assert set(interpolant.symbols()) <= shared
        symbols = symbols_of([first.body, second.body])
        for valuation in _valuations(symbols):
            if prop_eval(first.body, valuation):
                assert prop_eval(interpolant.body, valuation), print_formula(first.body)
            if prop_eval(interpolant.body, valuation):
                assert prop_eval(second.body, valuation), print_formula(second.body)


def test_interpolate_blocks_from_corpus(unary_sig):
    (left,) = load_normal_form("interpolate_left.fol", unary_sig).leaves()
    (right,) = load_normal_form("interpolate_right.fol", unary_sig).leaves()
    assert interpolate_blocks(left, right).text() == "forall x0. ((a, x0) q)"


def test_interpolate_blocks_needs_one_schema(unary_sig, running_sig):
    (left,) = load_normal_form("interpolate_left.fol", unary_sig).leaves()
    (other,) = to_binding_normal_form(parse_formula("exists y. (a,y) (q | u)", unary_sig)).leaves()
    with pytest.raises(InterpolationError, match="schema mismatch"):
        interpolate_blocks(left, other)
    (mixed,) = load_normal_form("running_phi1.fol", running_sig).leaves()
    with pytest.raises(InterpolationError, match="not a one-binding block"):
        interpolate_blocks(left, mixed)
