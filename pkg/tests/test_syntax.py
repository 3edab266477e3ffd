"""Unit tests for the core AST, signatures, and pretty printer."""

import pytest

from causelp.syntax import (And, Atom, Bottom, CausalRule, CausalTheory,
                            Equal, Exists, Forall, GroundAtom, Iff, Implies,
                            Not, ObjectConstant, Or, Program, ProgramRule,
                            Signature, TheoryError, Top, Variable, atom,
                            conj, disj, formula_text, free_variables,
                            is_literal, literal_complement, predicates_in,
                            program_rule, rule_text, term)


def test_term_case_convention():
    assert term("X") == Variable("X")
    assert term("a") == ObjectConstant("a")
    with pytest.raises(TheoryError):
        term("")


def test_conj_disj_folds():
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert conj([]) == Top()
    assert disj([]) == Bottom()
    assert conj([p, q, r]) == And(And(p, q), r)
    assert disj([p, q]) == Or(p, q)


def test_free_variables_capture_aware():
    f = And(atom("p", "X"), Forall("X", Implies(atom("p", "X"),
                                                atom("q", "Y"))))
    assert free_variables(f) == ("X", "Y")


def test_literals():
    a = atom("p", "a")
    assert is_literal(a) and is_literal(Not(a))
    assert is_literal(Equal(term("X"), term("a")))
    assert not is_literal(And(a, a))
    assert literal_complement(a) == Not(a)
    assert literal_complement(Not(a)) == a
    with pytest.raises(TheoryError):
        literal_complement(And(a, a))


def test_predicates_in_first_occurrence_order():
    f = Or(Atom("q"), And(Atom("p"), Atom("q")))
    assert predicates_in(f) == ("q", "p")


def test_signature_validation():
    with pytest.raises(TheoryError):
        Signature(("a",), (("p", 0), ("p", 1)), universe=("a",))
    with pytest.raises(TheoryError):
        Signature(("a",), (("=", 2),), universe=("a",))
    with pytest.raises(TheoryError):
        Signature(("a",), (("p", 0),), explainable=("q",), universe=("a",))
    with pytest.raises(TheoryError):  # empty universe
        Signature(("a",), (("p", 0),))
    with pytest.raises(TheoryError):  # explainable/extensional overlap
        Signature(("a",), (("p", 0),), ("p",), ("p",), ("a",))


def test_ground_atoms_canonical_order():
    sig = Signature(("a", "b"), (("p", 1), ("q", 0), ("r", 2)),
                    universe=("a", "b"))
    assert sig.ground_atoms() == (
        GroundAtom("p", ("a",)), GroundAtom("p", ("b",)),
        GroundAtom("q"),
        GroundAtom("r", ("a", "a")), GroundAtom("r", ("a", "b")),
        GroundAtom("r", ("b", "a")), GroundAtom("r", ("b", "b")))
    assert sig.ground_atoms(["q"]) == (GroundAtom("q"),)


def test_ground_atom_str():
    assert str(GroundAtom("p", ("a", "b"))) == "p(a,b)"
    assert str(GroundAtom("dark")) == "dark"


def test_program_rule_closure():
    r = program_rule(atom("p", "X"), atom("q", "Y", "X"))
    assert r.universals == ("X", "Y")
    with pytest.raises(TheoryError):
        ProgramRule((), atom("p", "X"), Atom("q"))
    with pytest.raises(TheoryError):  # nested implication
        program_rule(Implies(Atom("p"), Atom("q")), Atom("r"))


def test_program_rule_formula():
    r = program_rule(Not(atom("p", "X")), atom("q", "X"))
    assert formula_text(r.formula()) == "forall X: ~p(X) -> q(X)"
    fact = program_rule(Top(), Atom("p"))
    assert formula_text(fact.formula()) == "p"


def test_pretty_printer_precedence():
    p, q, r = Atom("p"), Atom("q"), Atom("r")
    assert formula_text(Or(And(p, q), r)) == "p & q | r"
    assert formula_text(And(Or(p, q), r)) == "(p | q) & r"
    assert formula_text(Not(And(p, q))) == "~(p & q)"
    assert formula_text(Implies(p, Implies(q, r))) == "p -> q -> r"
    assert formula_text(Implies(Implies(p, q), r)) == "(p -> q) -> r"
    assert formula_text(Not(Not(Not(p)))) == "~~~p"


def test_theory_rejects_bad_formulas():
    sig = Signature(("a",), (("p", 1),), ("p",), (), ("a",))
    with pytest.raises(TheoryError):  # arity mismatch
        CausalTheory(sig, (CausalRule(Atom("p"), Top()),))
    with pytest.raises(TheoryError):  # undeclared predicate
        CausalTheory(sig, (CausalRule(Atom("q"), Top()),))
    # Iff allowed at head root only
    head = Iff(atom("p", "a"), Not(atom("p", "a")))
    CausalTheory(sig, (CausalRule(head, Top()),))
    with pytest.raises(TheoryError):
        CausalTheory(sig, (CausalRule(atom("p", "a"), head),))


def test_program_intensional_must_be_declared():
    sig = Signature(("a",), (("p", 0),), universe=("a",))
    with pytest.raises(TheoryError):
        Program(sig, (), ("q",))


def test_rule_text():
    r = program_rule(Not(Not(Atom("p"))), Atom("q_hat"))
    assert rule_text(r) == "~~p -> q_hat"
