"""Seed-reproducible random instances for the property suites: ground
propositional causal theories over the four rule kinds, definite theories
for the completion oracle, and negation-free programs for the minimality
cross-check.  Every generator is a pure function of its seed."""

from __future__ import annotations

import random

from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Formula,
                     Iff, Not, Or, Program, ProgramRule, RuleKind, Signature,
                     Top, conj, disj)

_UNIVERSE = ("d",)


def _signature(pred_names: tuple[str, ...],
               explainable: tuple[str, ...]) -> Signature:
    return Signature(_UNIVERSE, tuple((p, 0) for p in pred_names),
                     explainable, (), _UNIVERSE)


def random_body(rng: random.Random, preds: tuple[str, ...],
                depth: int = 3, *, allow_not: bool = True) -> Formula:
    """Random formula tree over the atoms, true, false, ~, &, |."""
    leaves = ["atom", "top", "bottom"]
    inner = ["and", "or"] + (["not"] if allow_not else [])
    kind = rng.choice(leaves if depth == 0 else leaves + inner * 2)
    if kind == "atom":
        return Atom(rng.choice(preds))
    if kind == "top":
        return Top()
    if kind == "bottom":
        return Bottom()
    if kind == "not":
        return Not(random_body(rng, preds, depth - 1))
    sub = And if kind == "and" else Or
    return sub(random_body(rng, preds, depth - 1, allow_not=allow_not),
               random_body(rng, preds, depth - 1, allow_not=allow_not))


def _random_literal(rng: random.Random, preds: tuple[str, ...]) -> Formula:
    a = Atom(rng.choice(preds))
    return Not(a) if rng.random() < 0.5 else a


def random_theory(seed: int) -> CausalTheory:
    """Ground causal theory: up to 4 propositional atoms with a nonempty
    explainable subset, up to 6 rules drawn from kinds C, L, S, D.  Head
    literals are mostly explainable; occasionally a non-explainable one is
    produced to exercise the head-rewriting pipeline."""
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    preds = tuple(f"p{i}" for i in range(n))
    k = rng.randint(1, n)
    explainable = tuple(sorted(rng.sample(preds, k)))
    sig = _signature(preds, explainable)

    def head_pred() -> str:
        if rng.random() < 0.15:
            return rng.choice(preds)
        return rng.choice(explainable)

    def head_literal() -> Formula:
        a = Atom(head_pred())
        return Not(a) if rng.random() < 0.5 else a

    rules = []
    for _ in range(rng.randint(0, 6)):
        kind = rng.choice("CLSD")
        body = random_body(rng, preds, depth=rng.randint(0, 3))
        if kind == "C":
            head: Formula = Bottom()
        elif kind == "L":
            head = head_literal()
        elif kind == "S":
            head = Iff(head_literal(), head_literal())
        else:
            head = disj([head_literal()
                         for _ in range(rng.randint(1, 3))])
        rules.append(CausalRule(head, body, RuleKind.UNCLASSIFIED))
    return CausalTheory(sig, tuple(rules))


def random_definite_theory(seed: int) -> CausalTheory:
    """Ground definite theory: up to 5 atoms, every head an explainable
    atom, its negation, or false."""
    rng = random.Random(seed)
    n = rng.randint(1, 5)
    preds = tuple(f"p{i}" for i in range(n))
    k = rng.randint(1, n)
    explainable = tuple(sorted(rng.sample(preds, k)))
    sig = _signature(preds, explainable)
    rules = []
    for _ in range(rng.randint(0, 6)):
        body = random_body(rng, preds, depth=rng.randint(0, 3))
        roll = rng.random()
        if roll < 0.15:
            head: Formula = Bottom()
        else:
            a = Atom(rng.choice(explainable))
            head = Not(a) if roll < 0.55 else a
        rules.append(CausalRule(head, body, RuleKind.UNCLASSIFIED))
    return CausalTheory(sig, tuple(rules))


def random_negation_free_program(seed: int) -> Program:
    """Ground program without negation: heads are atom disjunctions or
    false, bodies are positive formulas; all predicates intensional."""
    rng = random.Random(seed)
    n = rng.randint(1, 4)
    preds = tuple(f"p{i}" for i in range(n))
    sig = _signature(preds, ())
    rules = []
    for _ in range(rng.randint(1, 6)):
        body = Top() if rng.random() < 0.4 else \
            random_body(rng, preds, depth=rng.randint(0, 2), allow_not=False)
        if rng.random() < 0.1:
            head: Formula = Bottom()
        else:
            head = disj([Atom(rng.choice(preds))
                         for _ in range(rng.randint(1, 2))])
        rules.append(ProgramRule((), body, head))
    return Program(sig, tuple(rules), preds)
