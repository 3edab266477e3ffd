"""Unit tests for rule normalization: implication elimination,
classification, and explainable-head rewriting."""

import pytest

from causelp.normalize import (NormalizeError, classify,
                               eliminate_body_implications, head_literals,
                               normalize_rule, normalize_theory,
                               rewrite_nonexplainable_heads)
from causelp.syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Iff,
                            Implies, Not, Or, RuleKind, Signature, Top, atom)

SIG = Signature(("a",), (("p", 0), ("q", 0), ("e", 0)),
                explainable=("p", "q"), universe=("a",))

P, Q, E = Atom("p"), Atom("q"), Atom("e")


def test_eliminate_body_implications():
    r = CausalRule(P, Implies(Q, Implies(E, P)))
    out = eliminate_body_implications(r)
    assert out.body == Or(Not(Q), Or(Not(E), P))
    assert out.head == P  # heads untouched


def test_classify_each_kind():
    assert classify(CausalRule(Bottom(), Top()), SIG) == RuleKind.C
    assert classify(CausalRule(Not(P), Top()), SIG) == RuleKind.L
    assert classify(CausalRule(Iff(P, Not(Q)), Top()), SIG) == RuleKind.S
    assert classify(CausalRule(Or(P, Not(Q)), Top()), SIG) == RuleKind.D
    with pytest.raises(NormalizeError):
        classify(CausalRule(And(P, Q), Top()), SIG)
    with pytest.raises(NormalizeError):
        classify(CausalRule(Iff(And(P, Q), P), Top()), SIG)


def test_head_literals():
    assert head_literals(Bottom()) == []
    assert head_literals(Or(Or(P, Not(Q)), E)) == [P, Not(Q), E]
    with pytest.raises(NormalizeError):
        head_literals(Or(P, And(P, Q)))


def test_rewrite_l_rule_nonexplainable():
    # e <= G  becomes  false <= G & ~e
    [out] = rewrite_nonexplainable_heads(CausalRule(E, Q, RuleKind.L), SIG)
    assert out.kind == RuleKind.C
    assert out.head == Bottom()
    assert out.body == And(Q, Not(E))


def test_rewrite_s_rule_nonexplainable():
    # e <-> p <= G  becomes  p <= G & e  and  ~p <= G & ~e
    out = rewrite_nonexplainable_heads(
        CausalRule(Iff(E, P), Q, RuleKind.S), SIG)
    assert [(r.head, r.body, r.kind) for r in out] == [
        (P, And(Q, E), RuleKind.L),
        (Not(P), And(Q, Not(E)), RuleKind.L)]


def test_rewrite_s_rule_symmetric_side():
    # p <-> ~e: the non-explainable literal is on the right; roles swap
    out = rewrite_nonexplainable_heads(
        CausalRule(Iff(P, Not(E)), Top(), RuleKind.S), SIG)
    assert [(r.head, r.body) for r in out] == [
        (P, And(Top(), Not(E))), (Not(P), And(Top(), E))]


def test_rewrite_d_rule_strips_leftmost_first():
    # e | p | ~e <= G: both e-literals stripped, leftmost first
    rule = CausalRule(Or(Or(E, P), Not(E)), Q, RuleKind.D)
    [out] = rewrite_nonexplainable_heads(rule, SIG)
    assert out.head == P
    assert out.body == And(And(Q, Not(E)), E)
    assert out.kind == RuleKind.L  # single remaining literal


def test_rewrite_d_rule_all_nonexplainable():
    [out] = rewrite_nonexplainable_heads(
        CausalRule(Or(E, Not(E)), Q, RuleKind.D), SIG)
    assert out.kind == RuleKind.C
    assert out.head == Bottom()


def test_explainable_heads_pass_through():
    rule = CausalRule(Or(P, Not(Q)), Top(), RuleKind.D)
    assert rewrite_nonexplainable_heads(rule, SIG) == [rule]


def test_top_head_dropped():
    assert normalize_rule(CausalRule(Top(), Q), SIG) == []


def test_normalize_theory_kinds():
    t = CausalTheory(SIG, (
        CausalRule(Bottom(), P),
        CausalRule(P, Implies(Q, E)),
        CausalRule(Iff(P, Q), Top()),
        CausalRule(Or(P, Q), E),
    ))
    nt = normalize_theory(t)
    assert [r.kind for r in nt.rules] == [
        RuleKind.C, RuleKind.L, RuleKind.S, RuleKind.D]
    assert nt.rules[1].body == Or(Not(Q), E)


def test_equality_literal_head_is_never_explainable():
    sig = Signature(("a", "b"), (("p", 1),), ("p",), (), ("a", "b"))
    from causelp.syntax import Equal, term
    rule = CausalRule(Equal(term("X"), term("a")), atom("p", "X"), RuleKind.L)
    [out] = rewrite_nonexplainable_heads(rule, sig)
    assert out.kind == RuleKind.C
    assert out.head == Bottom()
