"""Core symbol table, formula AST, causal-theory and logic-program types.

All values here are immutable after construction and safe to share across
threads.  Formula equality is structural: two parses of the same text
compare equal.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Mapping, Union


class TheoryError(Exception):
    """A declaration, formula, or rule violates a structural invariant."""


# ---------------------------------------------------------------------------
# Terms

@dataclass(frozen=True)
class Variable:
    name: str


@dataclass(frozen=True)
class ObjectConstant:
    name: str


Term = Union[Variable, ObjectConstant]


def term(name: str) -> Term:
    """Uppercase-initial names are variables, lowercase-initial are constants."""
    if not name:
        raise TheoryError("empty term name")
    if name[0].isupper():
        return Variable(name)
    return ObjectConstant(name)


# ---------------------------------------------------------------------------
# Formulas
#
# Function symbols of nonzero arity are rejected by construction: term
# arguments are variables or object constants only.  Iff is surface syntax;
# it is legal only as the top connective of a synonymity-rule head and in
# classically evaluated formulas (literal completion, grounding examples).

@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class Bottom:
    pass


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Equal:
    left: Term
    right: Term


@dataclass(frozen=True)
class Not:
    sub: "Formula"


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Iff:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"


Formula = Union[Top, Bottom, Atom, Equal, Not, And, Or, Implies, Iff,
                Forall, Exists]

TRUE = Top()
FALSE = Bottom()


def atom(pred: str, *names: str) -> Atom:
    return Atom(pred, tuple(term(n) for n in names))


def conj(parts: Iterable[Formula]) -> Formula:
    """Left fold of a conjunction; the empty conjunction is Top."""
    parts = list(parts)
    if not parts:
        return TRUE
    out = parts[0]
    for p in parts[1:]:
        out = And(out, p)
    return out


def disj(parts: Iterable[Formula]) -> Formula:
    """Left fold of a disjunction; the empty disjunction is Bottom."""
    parts = list(parts)
    if not parts:
        return FALSE
    out = parts[0]
    for p in parts[1:]:
        out = Or(out, p)
    return out


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Not):
        yield from subformulas(f.sub)
    elif isinstance(f, (And, Or, Implies, Iff)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)
    elif isinstance(f, (Forall, Exists)):
        yield from subformulas(f.body)


def free_variables(f: Formula) -> tuple[str, ...]:
    """Free variables of f in first-occurrence order, capture-aware."""
    out: list[str] = []

    def terms_of(g: Formula) -> tuple[Term, ...]:
        if isinstance(g, Atom):
            return g.args
        return (g.left, g.right)

    def walk(g: Formula, bound: frozenset[str]) -> None:
        if isinstance(g, (Atom, Equal)):
            for t in terms_of(g):
                if isinstance(t, Variable) and t.name not in bound \
                        and t.name not in out:
                    out.append(t.name)
        elif isinstance(g, Not):
            walk(g.sub, bound)
        elif isinstance(g, (And, Or, Implies, Iff)):
            walk(g.left, bound)
            walk(g.right, bound)
        elif isinstance(g, (Forall, Exists)):
            walk(g.body, bound | {g.var})

    walk(f, frozenset())
    return tuple(out)


def substitute_head_predicates(f: Formula, mapping: Mapping[str, str]) -> Formula:
    """Rename every atom whose predicate is in the mapping; other nodes unchanged."""
    if isinstance(f, Atom):
        if f.pred in mapping:
            return Atom(mapping[f.pred], f.args)
        return f
    if isinstance(f, (Top, Bottom, Equal)):
        return f
    if isinstance(f, Not):
        return Not(substitute_head_predicates(f.sub, mapping))
    if isinstance(f, (And, Or, Implies, Iff)):
        return type(f)(substitute_head_predicates(f.left, mapping),
                       substitute_head_predicates(f.right, mapping))
    if isinstance(f, (Forall, Exists)):
        return type(f)(f.var, substitute_head_predicates(f.body, mapping))
    raise TheoryError(f"not a formula: {f!r}")


def predicates_in(f: Formula) -> tuple[str, ...]:
    """Predicate names occurring in f, in first-occurrence order."""
    out: list[str] = []
    for g in subformulas(f):
        if isinstance(g, Atom) and g.pred not in out:
            out.append(g.pred)
    return tuple(out)


def contains_implies(f: Formula) -> bool:
    return any(isinstance(g, Implies) for g in subformulas(f))


def contains_quantifier(f: Formula) -> bool:
    return any(isinstance(g, (Forall, Exists)) for g in subformulas(f))


def is_literal(f: Formula) -> bool:
    """An atom, an equality, or a negation of one of those."""
    if isinstance(f, (Atom, Equal)):
        return True
    return isinstance(f, Not) and isinstance(f.sub, (Atom, Equal))


def literal_complement(f: Formula) -> Formula:
    if isinstance(f, Not) and isinstance(f.sub, (Atom, Equal)):
        return f.sub
    if isinstance(f, (Atom, Equal)):
        return Not(f)
    raise TheoryError(f"not a literal: {f!r}")


# ---------------------------------------------------------------------------
# Ground atoms and interpretations

@dataclass(frozen=True, order=True)
class GroundAtom:
    pred: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if not self.args:
            return self.pred
        return f"{self.pred}({','.join(self.args)})"

    def formula(self) -> Atom:
        return Atom(self.pred, tuple(ObjectConstant(a) for a in self.args))


@dataclass(frozen=True)
class Interpretation:
    """Herbrand truth assignment, stored as the set of true ground atoms.

    Totality over the signature's ground atoms is implicit: atoms absent
    from the set are false.  Equality atoms are never stored; they are
    evaluated syntactically.
    """

    true_atoms: frozenset[GroundAtom]

    def value(self, a: GroundAtom) -> bool:
        return a in self.true_atoms


@dataclass(frozen=True)
class ModelSet:
    atoms: tuple[GroundAtom, ...]
    models: tuple[Interpretation, ...]
    projected: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.models)

    def as_sets(self) -> set[frozenset[GroundAtom]]:
        return {m.true_atoms for m in self.models}


# ---------------------------------------------------------------------------
# Signatures

EQUALITY = "="


@dataclass(frozen=True)
class Signature:
    object_constants: tuple[str, ...]
    predicates: tuple[tuple[str, int], ...]
    explainable: tuple[str, ...] = ()
    extensional: tuple[str, ...] = ()
    universe: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        names = [p for p, _ in self.predicates]
        if len(set(names)) != len(names):
            raise TheoryError("duplicate predicate declaration")
        if EQUALITY in names:
            raise TheoryError("equality is builtin and may not be declared")
        for p, k in self.predicates:
            if k < 0:
                raise TheoryError(f"negative arity for {p}")
        for p in self.explainable + self.extensional:
            if p not in names:
                raise TheoryError(f"undeclared predicate: {p}")
        if set(self.explainable) & set(self.extensional):
            raise TheoryError("explainable and extensional sets overlap")
        if not self.universe:
            raise TheoryError("universe must be nonempty")
        if not set(self.universe) <= set(self.object_constants):
            raise TheoryError("universe mentions undeclared object constants")

    def arity(self, pred: str) -> int:
        for p, k in self.predicates:
            if p == pred:
                return k
        raise TheoryError(f"undeclared predicate: {pred}")

    def has_predicate(self, pred: str) -> bool:
        return any(p == pred for p, _ in self.predicates)

    def ground_atoms(self, preds: Iterable[str] | None = None) -> tuple[GroundAtom, ...]:
        """Ground atoms in canonical order: predicate declaration order,
        argument tuples lexicographic over the universe order."""
        wanted = None if preds is None else set(preds)
        out = []
        for p, k in self.predicates:
            if wanted is not None and p not in wanted:
                continue
            for args in itertools.product(self.universe, repeat=k):
                out.append(GroundAtom(p, args))
        return tuple(out)

    def with_predicates(self, extra: Iterable[tuple[str, int]]) -> "Signature":
        return Signature(self.object_constants,
                         self.predicates + tuple(extra),
                         self.explainable, self.extensional, self.universe)


def check_formula(f: Formula, sig: Signature, allow_iff: bool = False) -> None:
    """Validate declarations and arities; Iff is rejected unless allowed
    at the root (synonymity-rule head position)."""
    if isinstance(f, Iff):
        if not allow_iff:
            raise TheoryError("<-> is only allowed as a synonymity-rule head")
        check_formula(f.left, sig)
        check_formula(f.right, sig)
        return
    if isinstance(f, Atom):
        if not sig.has_predicate(f.pred):
            raise TheoryError(f"undeclared predicate: {f.pred}")
        if sig.arity(f.pred) != len(f.args):
            raise TheoryError(
                f"arity mismatch: {f.pred} declared /{sig.arity(f.pred)}, "
                f"used with {len(f.args)} arguments")
        for t in f.args:
            if isinstance(t, ObjectConstant) \
                    and t.name not in sig.object_constants:
                raise TheoryError(f"undeclared object constant: {t.name}")
    elif isinstance(f, Equal):
        for t in (f.left, f.right):
            if isinstance(t, ObjectConstant) \
                    and t.name not in sig.object_constants:
                raise TheoryError(f"undeclared object constant: {t.name}")
    elif isinstance(f, Not):
        check_formula(f.sub, sig)
    elif isinstance(f, (And, Or, Implies)):
        check_formula(f.left, sig)
        check_formula(f.right, sig)
    elif isinstance(f, (Forall, Exists)):
        check_formula(f.body, sig)


# ---------------------------------------------------------------------------
# Causal theories

class RuleKind(Enum):
    C = "C"
    L = "L"
    S = "S"
    D = "D"
    UNCLASSIFIED = "?"


@dataclass(frozen=True)
class CausalRule:
    head: Formula
    body: Formula
    kind: RuleKind = RuleKind.UNCLASSIFIED


@dataclass(frozen=True)
class CausalTheory:
    signature: Signature
    rules: tuple[CausalRule, ...]

    def __post_init__(self) -> None:
        for r in self.rules:
            check_formula(r.head, self.signature, allow_iff=True)
            check_formula(r.body, self.signature)


# ---------------------------------------------------------------------------
# Logic programs

@dataclass(frozen=True)
class ProgramRule:
    """Denotes the universal closure, over `universals`, of body -> head.

    Neither side may contain a nested implication; the implication of the
    rule itself is the only one.
    """

    universals: tuple[str, ...]
    body: Formula
    head: Formula

    def __post_init__(self) -> None:
        for side in (self.body, self.head):
            if contains_implies(side):
                raise TheoryError("program rule contains a nested implication")
            if any(isinstance(g, Iff) for g in subformulas(side)):
                raise TheoryError("program rule contains <->")
        free = set(free_variables(self.body)) | set(free_variables(self.head))
        if not free <= set(self.universals):
            missing = sorted(free - set(self.universals))
            raise TheoryError(f"unclosed program rule, free: {missing}")

    def formula(self) -> Formula:
        """The rule as a sentence: quantifier prefix over body -> head."""
        core: Formula = self.head if self.body == TRUE \
            else Implies(self.body, self.head)
        for v in reversed(self.universals):
            core = Forall(v, core)
        return core


def program_rule(body: Formula, head: Formula) -> ProgramRule:
    """Close body -> head over its free variables, first-occurrence order."""
    seen: list[str] = []
    for v in free_variables(body) + free_variables(head):
        if v not in seen:
            seen.append(v)
    return ProgramRule(tuple(seen), body, head)


@dataclass(frozen=True)
class Program:
    """A conjunction of program rules with a fixed intensional predicate list.

    `hats` records the shadow predicates introduced by the causal-theory
    translation as (base, hat) pairs; it is empty for hand-written programs.
    """

    signature: Signature
    rules: tuple[ProgramRule, ...]
    intensional: tuple[str, ...]
    hats: tuple[tuple[str, str], ...] = ()

    def __post_init__(self) -> None:
        for p in self.intensional:
            if not self.signature.has_predicate(p):
                raise TheoryError(f"undeclared intensional predicate: {p}")

    @property
    def hat_for(self) -> dict[str, str]:
        return {base: hat for base, hat in self.hats}

    @property
    def base_for(self) -> dict[str, str]:
        return {hat: base for base, hat in self.hats}


# ---------------------------------------------------------------------------
# Pretty printing
#
# Precedence: quantifiers and -> bind loosest, then |, then &, then ~.
# -> is right-associative; & and | associate to the left.

_PREC_IMPL = 1
_PREC_OR = 2
_PREC_AND = 3
_PREC_UNARY = 4


def _term_text(t: Term) -> str:
    return t.name


def _fmt(f: Formula, need: int) -> str:
    if isinstance(f, Top):
        return "true"
    if isinstance(f, Bottom):
        return "false"
    if isinstance(f, Atom):
        if not f.args:
            return f.pred
        return f"{f.pred}({', '.join(_term_text(t) for t in f.args)})"
    if isinstance(f, Equal):
        return f"{_term_text(f.left)} = {_term_text(f.right)}"
    if isinstance(f, Not):
        return _wrap(f"~{_fmt(f.sub, _PREC_UNARY)}", _PREC_UNARY, need)
    if isinstance(f, And):
        s = f"{_fmt(f.left, _PREC_AND)} & {_fmt(f.right, _PREC_AND + 1)}"
        return _wrap(s, _PREC_AND, need)
    if isinstance(f, Or):
        s = f"{_fmt(f.left, _PREC_OR)} | {_fmt(f.right, _PREC_OR + 1)}"
        return _wrap(s, _PREC_OR, need)
    if isinstance(f, Implies):
        s = f"{_fmt(f.left, _PREC_IMPL + 1)} -> {_fmt(f.right, _PREC_IMPL)}"
        return _wrap(s, _PREC_IMPL, need)
    if isinstance(f, Iff):
        s = f"{_fmt(f.left, _PREC_IMPL + 1)} <-> {_fmt(f.right, _PREC_IMPL + 1)}"
        return _wrap(s, _PREC_IMPL, need)
    if isinstance(f, (Forall, Exists)):
        kw = "forall" if isinstance(f, Forall) else "exists"
        s = f"{kw} {f.var}: {_fmt(f.body, 0)}"
        return _wrap(s, _PREC_IMPL, need)
    raise TheoryError(f"not a formula: {f!r}")


def _wrap(s: str, prec: int, need: int) -> str:
    return f"({s})" if prec < need else s


def formula_text(f: Formula) -> str:
    return _fmt(f, 0)


def rule_text(r: ProgramRule) -> str:
    return formula_text(r.formula())


def causal_rule_text(r: CausalRule) -> str:
    return f"{_fmt(r.head, 0)} <= {_fmt(r.body, 0)}"
