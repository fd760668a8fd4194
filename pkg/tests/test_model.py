import pytest

from model.assignment import Assignment, extend_assignment, parse_assignment_literal, restrict_assignment
from model.files import format_signature, format_structure, parse_signature, parse_structure
from model.signature import LanguageSignature, validate_signature
from model.structure import (
    RelationalStructure,
    all_structures,
    all_tuple_functions,
    canonical_domain,
    count_atoms,
    validate_structure,
)
from utils.errors import AssignmentError, FileFormatError, InputError


def test_running_signature(running_sig):
    assert running_sig.arguments == ("a", "b")
    assert running_sig.relations == ("q", "r", "s")
    assert running_sig.arity("s") == frozenset({"a"})
    assert running_sig.relations_over(frozenset({"a", "b"})) == ("q", "r")
    assert running_sig.argument_sets() == [frozenset({"a"}), frozenset({"a", "b"})]
    assert validate_signature(running_sig) == []


def test_signature_violations_name_the_symbol():
    sig = parse_signature("signature { arguments: a; relation q(a, z); relation a(a); }")
    violations = validate_signature(sig)
    assert any(v.startswith("q: unknown argument z") for v in violations)
    assert any(v.startswith("a: used both as argument and relation") for v in violations)


def test_signature_without_relations():
    sig = LanguageSignature.create(["a"], [], {})
    assert "signature has no relations" in validate_signature(sig)


def test_relation_declared_twice():
    with pytest.raises(FileFormatError, match="declared twice"):
        parse_signature("signature { arguments: a; relation q(a); relation q(a); }")


def test_malformed_signature_reports_position():
    with pytest.raises(FileFormatError) as info:
        parse_signature("signature { arguments a; }")
    assert info.value.line == 1


def test_running_structure(running_sig, running_str):
    assert running_str.domain == ("0", "1")
    assert running_str.contains("q", Assignment({"a": "0", "b": "1"}))
    assert not running_str.contains("r", Assignment({"a": "0", "b": "1"}))
    assert running_str.interpretation("s") == frozenset({Assignment({"a": "1"})})
    assert validate_structure(running_sig, running_str) == []


def test_structure_violations(running_sig):
    structure = RelationalStructure.create(
        running_sig,
        ["0"],
        {"q": [{"a": "0"}], "s": [{"a": "5"}]},
    )
    violations = validate_structure(running_sig, structure)
    assert any(v.startswith("q: support mismatch") for v in violations)
    assert "s: value 5 of a not in domain" in violations


def test_empty_domain_is_a_violation(running_sig):
    structure = RelationalStructure.create(running_sig, [], {})
    assert "empty domain" in validate_structure(running_sig, structure)


def test_formatted_structure_parses_back(running_sig, running_str):
    text = format_structure(running_str)
    assert "  s: [a=1];" in text
    assert parse_structure(text, running_sig) == running_str
    assert parse_signature(format_signature(running_sig)) == running_sig


def test_empty_relation_is_written_explicitly(binary_sig):
    structure = RelationalStructure.create(binary_sig, ["0"], {})
    assert "  r: ;" in format_structure(structure)
    assert parse_structure(format_structure(structure), binary_sig) == structure


def test_extend_and_restrict():
    chi = Assignment({"a": "0", "b": "1", "x": "0"})
    assert restrict_assignment(chi, {"a", "b"}) == Assignment({"a": "0", "b": "1"})
    extended = extend_assignment(Assignment({"x": "0"}), {"a", "b"}, "1")
    assert extended == Assignment({"x": "0", "a": "1", "b": "1"})
    with pytest.raises(AssignmentError, match="cannot restrict"):
        restrict_assignment(Assignment({"a": "0"}), {"a", "c"})


def test_assignment_literal():
    assert parse_assignment_literal("x=d0, b=d1") == Assignment({"x": "d0", "b": "d1"})
    assert parse_assignment_literal("") == Assignment()
    with pytest.raises(InputError, match="malformed assignment entry"):
        parse_assignment_literal("x")


def test_tuple_functions_and_structures(binary_sig):
    domain = canonical_domain(2)
    assert domain == ("e0", "e1")
    assert len(list(all_tuple_functions({"a", "b"}, domain))) == 4
    assert count_atoms(binary_sig, 2) == 4
    structures = list(all_structures(binary_sig, domain))
    assert len(structures) == 16
    assert structures[0].interpretation("r") == frozenset()
    assert len(structures[-1].interpretation("r")) == 4


def test_restrict_undoes_extend():
    chi = Assignment({"x": "0", "y": "1"})
    for placeholders in ({"a"}, {"a", "b"}, {"z"}):
        extended = chi.extend(placeholders, "1")
        assert extended.restrict(chi.domain) == chi
        assert extended.domain == chi.domain | placeholders
    for subset in ({"x"}, {"x", "y"}, set()):
        once = chi.restrict(subset)
        assert once.restrict(subset) == once
        assert once.domain == subset
