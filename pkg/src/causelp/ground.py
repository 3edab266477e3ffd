"""Grounding over the finite universe: variable instantiation, quantifier
expansion into finite conjunctions/disjunctions, equality resolution."""

from __future__ import annotations

import itertools
from typing import Mapping

from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Equal,
                     Exists, Forall, Formula, Iff, Implies, Not,
                     ObjectConstant, Or, Program, ProgramRule, Signature,
                     Term, TheoryError, Top, Variable, conj, disj,
                     free_variables)


class GroundingError(TheoryError):
    pass


def _ground_term(t: Term, binding: Mapping[str, str]) -> ObjectConstant:
    if isinstance(t, ObjectConstant):
        return t
    if t.name not in binding:
        raise GroundingError(f"unbound variable {t.name}")
    return ObjectConstant(binding[t.name])


def ground_formula(f: Formula, sig: Signature,
                   binding: Mapping[str, str] | None = None) -> Formula:
    """Quantifier-free, variable-free instance of f under the binding.
    forall expands to a conjunction over the universe, exists to a
    disjunction; ground equalities resolve to true/false."""
    b = dict(binding or {})

    def go(g: Formula, b: Mapping[str, str]) -> Formula:
        if isinstance(g, (Top, Bottom)):
            return g
        if isinstance(g, Atom):
            return Atom(g.pred, tuple(_ground_term(t, b) for t in g.args))
        if isinstance(g, Equal):
            left = _ground_term(g.left, b)
            right = _ground_term(g.right, b)
            return Top() if left.name == right.name else Bottom()
        if isinstance(g, Not):
            return Not(go(g.sub, b))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left, b), go(g.right, b))
        if isinstance(g, (Forall, Exists)):
            parts = [go(g.body, {**b, g.var: c}) for c in sig.universe]
            return conj(parts) if isinstance(g, Forall) else disj(parts)
        raise GroundingError(f"not a formula: {g!r}")

    return go(f, b)


def _bindings(variables: tuple[str, ...], sig: Signature):
    for combo in itertools.product(sig.universe, repeat=len(variables)):
        yield dict(zip(variables, combo))


def ground_theory(t: CausalTheory) -> CausalTheory:
    """One ground rule per binding of each rule's free variables; rule
    order is (source rule index, lexicographic binding)."""
    sig = t.signature
    out: list[CausalRule] = []
    for r in t.rules:
        seen: list[str] = []
        for v in free_variables(r.head) + free_variables(r.body):
            if v not in seen:
                seen.append(v)
        for b in _bindings(tuple(seen), sig):
            out.append(CausalRule(ground_formula(r.head, sig, b),
                                  ground_formula(r.body, sig, b),
                                  r.kind))
    return CausalTheory(sig, tuple(out))


def ground_program(p: Program) -> Program:
    sig = p.signature
    out: list[ProgramRule] = []
    for r in p.rules:
        for b in _bindings(r.universals, sig):
            out.append(ProgramRule((), ground_formula(r.body, sig, b),
                                   ground_formula(r.head, sig, b)))
    return Program(sig, tuple(out), p.intensional, p.hats)
