import random

import pytest

from conftest import load_normal_form
from logic.formula import And, Not, Or, Rel
from logic.normal_form import Conj, DerivedRelation, Disj, NormalFormSentence, alpha_key, rename_apart, to_binding_normal_form
from logic.parser import parse_formula
from overlap.graphs import extract_schema, is_overlapping
from solver.bounds import compute_fmp_bound, fmp_parameters, format_fmp_bound
from solver.certificate import Certificate
from solver.cnf import CnfBuilder, atom, conjunction, disjunction, negate
from solver.decide import SAT, UNSAT, build_formula_function, decide_sat, find_conflict
from solver.propositional import bool_sat, models_by_cardinality
from solver.witness import distinct_leaves, witnesses
from utils.errors import CouplingError, FragmentError, SemanticError
from utils.generators import random_ob_sentence, random_signature

ABC = frozenset({"a", "b", "c"})
Q = Rel("q", ABC)
R = Rel("r", ABC)


def test_bool_sat():
    iff = Or(And(Q, R), And(Not(Q), Not(R)))
    assert not bool_sat([DerivedRelation.of(Q), DerivedRelation.of(Not(R)), DerivedRelation.of(iff)])
    assert bool_sat([DerivedRelation.of(Or(Q, Not(Q)))])
    assert not bool_sat([DerivedRelation.of(Q), DerivedRelation.of(Not(Q))])
    assert bool_sat([DerivedRelation.of(Q), DerivedRelation.of(iff)])
    with pytest.raises(CouplingError, match="argument-set mismatch"):
        bool_sat([DerivedRelation.of(Q), DerivedRelation.of(Rel("s", frozenset({"a"})))])


def test_bool_sat_solver_branch_matches_truth_table():
    iff = Or(And(Q, R), And(Not(Q), Not(R)))
    relations = [DerivedRelation.of(Q), DerivedRelation.of(Not(R)), DerivedRelation.of(iff)]
    assert bool_sat(relations, limit=0) == bool_sat(relations) is False
    assert bool_sat(relations[1:], limit=0) is True


def test_cnf_builder():
    builder = CnfBuilder()
    builder.require(conjunction([atom("p"), disjunction([negate(atom("p")), atom("q")])]))
    assert builder.solve() == {"p", "q"}
    builder.require(negate(atom("q")))
    assert builder.solve() is None


def test_models_by_cardinality():
    models = list(models_by_cardinality(Or(Q, R)))
    assert models == [frozenset({"q"}), frozenset({"r"}), frozenset({"q", "r"})]


def test_witnesses_of_a_disjunction(unary_sig):
    nf = to_binding_normal_form(parse_formula("(forall x. (a,x) q) | (exists y. (a,y) s)", unary_sig))
    first, second = nf.leaves()
    found = [set(w.leaves) for w in witnesses(nf)]
    assert found == [{first}, {second}, {first, second}]
    assert len(list(witnesses(nf, minimal_only=True))) == 2


def test_witnesses_of_single_leaf_and_conjunction(unary_sig, triple_sig):
    nf = to_binding_normal_form(parse_formula("forall x. (a,x) q", unary_sig))
    assert [w.leaves for w in witnesses(nf)] == [nf.leaves()]
    phi1 = load_normal_form("triple_phi1.fol", triple_sig)
    (only,) = list(witnesses(phi1))
    assert len(only) == 3


def test_alpha_equivalent_leaves_count_once(unary_sig):
    nf = to_binding_normal_form(parse_formula("(forall x. (a,x) q) & (forall y. (a,y) q)", unary_sig))
    (only,) = list(witnesses(nf))
    assert len(only) == 1


def test_formula_function_of_phi1(triple_sig):
    (witness,) = list(witnesses(load_normal_form("triple_phi1.fol", triple_sig)))
    f = build_formula_function(witness)
    bodies = sorted((relation.body for relation in f.entries.values()), key=repr)
    assert Or(And(Q, R), And(Not(Q), Not(R))) in bodies
    assert Q in bodies and Not(R) in bodies


@pytest.mark.parametrize(
    "name, expected",
    [
        ("triple_phi1.fol", UNSAT),
        ("triple_phi2.fol", SAT),
        ("triple_phi3.fol", SAT),
        ("triple_phi4.fol", SAT),
    ],
)
def test_triple_verdicts(name, expected, triple_sig):
    verdict = decide_sat(load_normal_form(name, triple_sig))
    assert verdict.value == expected
    assert decide_sat(load_normal_form(name, triple_sig), minimal_only=True, jobs=2).value == expected


def test_phi1_certificate(triple_sig):
    verdict = decide_sat(load_normal_form("triple_phi1.fol", triple_sig))
    certificate = Certificate.model_validate_json(verdict.to_certificate().to_json())
    assert certificate.verdict == "unsat"
    (record,) = certificate.witnesses
    assert len(record.leaves) == 3
    assert record.conflict.args == ["a", "b", "c"]
    assert len(record.conflict.schemas) == 3
    assert record.conflict.conjunction.count("&") >= 2


def test_sat_certificate_names_the_witness(triple_sig):
    verdict = decide_sat(load_normal_form("triple_phi2.fol", triple_sig))
    certificate = verdict.to_certificate()
    assert certificate.verdict == "sat"
    assert certificate.witnesses[0].leaves == verdict.witness.texts()
    assert "conflict" not in certificate.to_json()
    assert find_conflict(verdict.witness) is None


def test_contradictory_leaves(unary_sig):
    nf = to_binding_normal_form(parse_formula("(forall x. (a,x) q) & (forall x. (a,x) ~q)", unary_sig))
    assert decide_sat(nf).value == UNSAT
    weaker = to_binding_normal_form(parse_formula("(forall x. (a,x) q) | (forall x. (a,x) ~q)", unary_sig))
    assert decide_sat(weaker).is_sat


def test_existential_leaves_do_not_clash(unary_sig):
    nf = to_binding_normal_form(parse_formula("(exists x. (a,x) q) & (exists x. (a,x) ~q)", unary_sig))
    assert decide_sat(nf).is_sat


def test_decide_requires_one_binding(binary_sig, running_sig):
    with pytest.raises(FragmentError, match="fragment not OB"):
        decide_sat(load_normal_form("infinity.fol", binary_sig))
    with pytest.raises(FragmentError, match="fragment not OB"):
        decide_sat(load_normal_form("running_phi1.fol", running_sig))


# ---- 有限模型界 ----


@pytest.mark.parametrize("n, h, k, expected", [(1, 1, 1, 2), (2, 1, 2, 33554432), (1, 2, 2, 8)])
def test_fmp_bound(n, h, k, expected):
    assert compute_fmp_bound(n, h, k) == expected
    assert format_fmp_bound(n, h, k) == str(expected)


def test_fmp_bound_is_exact_past_the_render_cap():
    assert compute_fmp_bound(1, 1, 7) == 2 ** 5040
    assert compute_fmp_bound(3, 1, 3) == 3 * 2 ** 362880
    assert format_fmp_bound(1, 1, 7) == "1*2^(7!)"
    assert format_fmp_bound(3, 1, 3) == "3*2^(9!)"
    assert format_fmp_bound(1, 1, 7, cap=5040) == str(2 ** 5040)


def test_fmp_bound_parameters_must_be_positive():
    with pytest.raises(SemanticError, match="at least 1"):
        compute_fmp_bound(0, 1, 1)
    with pytest.raises(SemanticError, match="at least 1"):
        format_fmp_bound(1, 0, 1)


def test_fmp_parameters(triple_sig, unary_sig):
    assert fmp_parameters(load_normal_form("triple_phi1.fol", triple_sig)) == (3, 1, 3)
    nf = to_binding_normal_form(parse_formula("(forall x. (a,x) q) & (forall y. (a,y) ~q)", unary_sig))
    assert fmp_parameters(nf) == (1, 1, 1)


# ---- 性质测试 ----


def _mirror(tree):
    if isinstance(tree, (Conj, Disj)):
        return type(tree)(_mirror(tree.right), _mirror(tree.left))
    return tree


def _fresh_names(block):
    return block.rename({variable: f"v{variable}" for variable in block.prefix.variables})


def _random_normal_forms(seed, count):
    rng = random.Random(seed)
    for _ in range(count):
        signature = random_signature(rng, max_arguments=3, max_relations=2)
        yield to_binding_normal_form(random_ob_sentence(signature, rng, max_leaves=3))


def test_verdict_ignores_variable_names_and_leaf_order():
    for nf in _random_normal_forms(17, 100):
        expected = decide_sat(nf).value
        assert decide_sat(nf.map_leaves(_fresh_names)).value == expected, nf.text()
        assert decide_sat(rename_apart(nf, start=7)).value == expected, nf.text()
        assert decide_sat(NormalFormSentence(_mirror(nf.tree))).value == expected, nf.text()


def test_unsat_conflicts_recheck(triple_sig, unary_sig):
    contradiction = to_binding_normal_form(
        parse_formula("(forall x. (a,x) q) & (forall x. (a,x) ~q)", unary_sig)
    )
    candidates = [load_normal_form("triple_phi1.fol", triple_sig), contradiction]
    candidates += list(_random_normal_forms(23, 100))
    unsat = 0
    for nf in candidates:
        verdict = decide_sat(nf)
        if verdict.is_sat:
            continue
        unsat += 1
        assert verdict.records
        for witness, conflict in verdict.records:
            assert set(conflict.schemas) <= {extract_schema(leaf) for leaf in witness.leaves}
            assert is_overlapping(conflict.schemas, conflict.arguments)
            assert not bool_sat(conflict.relations)
            assert conflict.to_record().args == sorted(conflict.arguments)
    assert unsat >= 2


def test_witness_sets_are_upward_closed():
    for nf in _random_normal_forms(31, 60):
        keys = [alpha_key(leaf) for leaf in distinct_leaves(nf)]
        found = {frozenset(alpha_key(leaf) for leaf in w.leaves) for w in witnesses(nf)}
        assert frozenset(keys) in found, nf.text()
        for subset in found:
            for key in keys:
                assert subset | {key} in found, nf.text()
