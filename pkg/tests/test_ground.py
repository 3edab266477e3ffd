"""Unit tests for grounding: quantifier expansion, equality resolution,
and rule instantiation order."""

import pytest

from causelp.ground import (GroundingError, ground_formula, ground_program,
                            ground_theory)
from causelp.normalize import normalize_theory
from causelp.parser import parse_formula, parse_theory
from causelp.syntax import (And, Atom, Bottom, CausalRule, CausalTheory,
                            Equal, Exists, Forall, Not, ObjectConstant, Or,
                            Program, ProgramRule, RuleKind, Signature, Top,
                            atom, formula_text, program_rule, term)

SIG = Signature(("a", "b"), (("p", 1), ("q", 0)), ("p",), (), ("a", "b"))


def test_forall_expands_to_conjunction():
    f = Forall("X", atom("p", "X"))
    assert formula_text(ground_formula(f, SIG)) == "p(a) & p(b)"


def test_exists_expands_to_disjunction():
    f = Exists("X", Not(atom("p", "X")))
    assert formula_text(ground_formula(f, SIG)) == "~p(a) | ~p(b)"


def test_equality_resolves():
    f = Forall("X", Equal(term("X"), term("a")))
    assert formula_text(ground_formula(f, SIG)) == "true & false"


def test_unbound_variable_is_an_error():
    with pytest.raises(GroundingError):
        ground_formula(atom("p", "X"), SIG)
    assert ground_formula(atom("p", "X"), SIG, {"X": "b"}) == atom("p", "b")


def test_nested_quantifier_shadowing():
    f = Forall("X", Exists("X", atom("p", "X")))
    assert formula_text(ground_formula(f, SIG)) == \
        "(p(a) | p(b)) & (p(a) | p(b))"


def test_ground_theory_instantiation_order():
    t = CausalTheory(SIG, (
        CausalRule(atom("p", "X"), Not(atom("p", "X")), RuleKind.L),
        CausalRule(Bottom(), Atom("q"), RuleKind.C)))
    gt = ground_theory(t)
    assert [formula_text(r.head) for r in gt.rules] == \
        ["p(a)", "p(b)", "false"]
    assert [r.kind for r in gt.rules] == \
        [RuleKind.L, RuleKind.L, RuleKind.C]


def test_ground_program():
    p = Program(SIG, (program_rule(Not(atom("p", "X")), atom("p", "X")),),
                ("p",))
    gp = ground_program(p)
    assert len(gp.rules) == 2
    assert all(r.universals == () for r in gp.rules)
    assert gp.rules[0].head == atom("p", "a")


def test_ground_rule_with_two_variables():
    sig = Signature(("a", "b"), (("r", 2),), ("r",), (), ("a", "b"))
    t = CausalTheory(sig, (
        CausalRule(atom("r", "X", "Y"), Top(), RuleKind.L),))
    gt = ground_theory(t)
    heads = [formula_text(r.head) for r in gt.rules]
    assert heads == ["r(a, a)", "r(a, b)", "r(b, a)", "r(b, b)"]
