"""Unit tests for the .ct reader, including a printer round-trip property."""

import pytest
from hypothesis import given, strategies as st

from causelp.parser import ParseError, parse_formula, parse_theory
from causelp.syntax import (And, Atom, Bottom, Equal, Exists, Forall,
                            GroundAtom, Iff, Implies, Not, ObjectConstant,
                            Or, Signature, Top, Variable, atom,
                            formula_text)


def test_minimal_theory():
    doc = parse_theory("universe a. explainable p/1. p(a) <= true.")
    assert doc.signature.universe == ("a",)
    assert doc.signature.explainable == ("p",)
    assert len(doc.rules) == 1
    assert doc.rules[0].head == atom("p", "a")
    assert doc.rules[0].body == Top()
    assert not doc.is_program


def test_implicit_arity_inference():
    doc = parse_theory("universe a. explainable p. p(a, a) <= ~q.")
    assert doc.signature.arity("p") == 2
    assert doc.signature.arity("q") == 0


def test_arity_conflict_reports_position():
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. explainable p/1.\np(a, a) <= true.")
    assert "line 2" in str(e.value)
    assert "arity" in str(e.value)


def test_connectives_and_quantifiers():
    doc = parse_theory(
        "universe a, b. explainable p/1.\n"
        "p(X) <= exists Y: r(X, Y) & ~(s | t) -> X = a.")
    body = doc.rules[0].body
    assert isinstance(body, Exists)
    # forall/exists scope extends to the end; -> binds loosest inside
    assert isinstance(body.body, Implies)


def test_iff_only_in_head():
    doc = parse_theory("universe a. explainable p/0, q/0. p <-> ~q <= r.")
    assert isinstance(doc.rules[0].head, Iff)
    with pytest.raises(ParseError):
        parse_theory("universe a. explainable p/0. p <= q <-> r.")
    with pytest.raises(ParseError):
        parse_theory("universe a. explainable p/0. p <= (q <-> r).")


def test_quantified_head_rejected():
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. explainable p/1. forall X: p(X) <= true.")
    assert "quantifiers are not supported in causal-rule heads" in str(e.value)


def test_facts_must_be_extensional_and_in_universe():
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. explainable p/1. fact p(a).")
    assert "not extensional" in str(e.value)
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. extensional r/1. explainable p/1.\n"
                     "fact r(b). p(a) <= true.")
    assert "outside the universe" in str(e.value)


def test_fact_parsing():
    doc = parse_theory("universe a, b. extensional r/2. explainable p/0.\n"
                       "fact r(a, b). p <= true.")
    assert doc.facts == (GroundAtom("r", ("a", "b")),)


def test_program_document():
    doc = parse_theory(
        "universe a, b. intensional q/1. extensional p/1.\n"
        "rule forall X: ~p(X) -> (q(X) | ~q(X)).\nfact p(a).")
    assert doc.is_program
    prog = doc.program()
    assert prog.intensional == ("q",)
    r = prog.rules[0]
    assert r.universals == ("X",)
    assert r.body == Not(atom("p", "X"))


def test_mixing_rule_kinds_rejected():
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. explainable p/0. intensional q/0.\n"
                     "p <= true. rule q.")
    assert "mix" in str(e.value)


def test_missing_universe():
    with pytest.raises(ParseError):
        parse_theory("explainable p/0. p <= true.")


def test_comments_and_positions():
    doc = parse_theory("% a comment\nuniverse a. % trailing\n"
                       "explainable p/0. p <= true.")
    assert len(doc.rules) == 1
    with pytest.raises(ParseError) as e:
        parse_theory("universe a.\nexplainable p/0.\np <= @.")
    assert "line 3" in str(e.value)


def test_parse_formula_standalone():
    sig = Signature(("a",), (("p", 1), ("q", 0)), universe=("a",))
    f = parse_formula("~p(a) & q", sig)
    assert f == And(Not(atom("p", "a")), Atom("q"))
    with pytest.raises(ParseError):
        parse_formula("p(a) q", sig)  # trailing input
    with pytest.raises(ParseError):
        parse_formula("r(a)", sig)  # undeclared


def test_bare_variable_rejected():
    with pytest.raises(ParseError) as e:
        parse_theory("universe a. explainable p/0. p <= X.")
    assert "bare variable" in str(e.value)


# --- printer/parser round trip -------------------------------------------

_SIG = Signature(("a", "b"), (("p", 1), ("q", 0), ("r", 2)),
                 universe=("a", "b"))

_terms = st.sampled_from(["a", "b", "X", "Y"])


def _atoms():
    return st.one_of(
        st.just(Top()), st.just(Bottom()), st.just(Atom("q")),
        st.builds(lambda t: atom("p", t), _terms),
        st.builds(lambda t1, t2: atom("r", t1, t2), _terms, _terms),
        st.builds(lambda t1, t2: Equal(
            ObjectConstant(t1) if t1.islower() else Variable(t1),
            ObjectConstant(t2) if t2.islower() else Variable(t2)),
            _terms, _terms))


_formulas = st.recursive(
    _atoms(),
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Implies, sub, sub),
        st.builds(lambda f: Forall("X", f), sub),
        st.builds(lambda f: Exists("Y", f), sub)),
    max_leaves=12)


@given(_formulas)
def test_formula_text_round_trips(f):
    assert parse_formula(formula_text(f), _SIG) == f
