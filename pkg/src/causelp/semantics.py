"""Brute-force semantic oracles: classical evaluation, causal-model
enumeration, stable and minimal models, literal completion, and the
soundness cross-check between the causal and translated sides.

Everything here enumerates Herbrand interpretations exhaustively, which is
the point: these are the trusted, definition-shaped reference procedures.
A guardrail refuses enumerations beyond 24 free ground atoms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

from .ground import ground_program, ground_theory
from .normalize import normalize_theory
from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Equal,
                     Exists, Forall, Formula, GroundAtom, Iff, Implies,
                     Interpretation, ModelSet, Not, ObjectConstant, Or,
                     Program, ProgramRule, RuleKind, Signature, TheoryError,
                     Top, disj, free_variables)
from .translate import translate

DESK_LIMIT = 24

Model = frozenset  # of GroundAtom


class EnumerationLimitError(TheoryError):
    """The instance exceeds the desk-scale enumeration guardrail."""


class SemanticsError(TheoryError):
    pass


# ---------------------------------------------------------------------------
# Classical evaluation

def _gatom(f: Atom) -> GroundAtom:
    args = []
    for t in f.args:
        if not isinstance(t, ObjectConstant):
            raise SemanticsError(f"non-ground atom {f!r}")
        args.append(t.name)
    return GroundAtom(f.pred, tuple(args))


def compile_eval(f: Formula) -> Callable[[Model], bool]:
    """Compile a ground, quantifier-free formula to a truth function."""
    if isinstance(f, Top):
        return lambda m: True
    if isinstance(f, Bottom):
        return lambda m: False
    if isinstance(f, Atom):
        ga = _gatom(f)
        return lambda m: ga in m
    if isinstance(f, Equal):
        for t in (f.left, f.right):
            if not isinstance(t, ObjectConstant):
                raise SemanticsError("non-ground equality")
        v = f.left.name == f.right.name
        return lambda m: v
    if isinstance(f, Not):
        g = compile_eval(f.sub)
        return lambda m: not g(m)
    if isinstance(f, And):
        a, b = compile_eval(f.left), compile_eval(f.right)
        return lambda m: a(m) and b(m)
    if isinstance(f, Or):
        a, b = compile_eval(f.left), compile_eval(f.right)
        return lambda m: a(m) or b(m)
    if isinstance(f, Implies):
        a, b = compile_eval(f.left), compile_eval(f.right)
        return lambda m: (not a(m)) or b(m)
    if isinstance(f, Iff):
        a, b = compile_eval(f.left), compile_eval(f.right)
        return lambda m: a(m) == b(m)
    raise SemanticsError(f"cannot evaluate {f!r} classically")


def evaluate(f: Formula, i: Interpretation | Model) -> bool:
    m = i.true_atoms if isinstance(i, Interpretation) else i
    return compile_eval(f)(m)


# ---------------------------------------------------------------------------
# Enumeration helpers

def _split_fixed(atoms: tuple[GroundAtom, ...],
                 fixed: Mapping[GroundAtom, bool] | None):
    if fixed:
        base = frozenset(a for a in atoms if fixed.get(a))
        free = [a for a in atoms if a not in fixed]
    else:
        base = frozenset()
        free = list(atoms)
    return base, free


def _guard(n_free: int, force: bool) -> None:
    if n_free > DESK_LIMIT and not force:
        raise EnumerationLimitError(
            f"{n_free} free ground atoms exceed the desk-scale limit of "
            f"{DESK_LIMIT}; pass force=True (or --force) to override")


def _interpretations(atoms: tuple[GroundAtom, ...],
                     fixed: Mapping[GroundAtom, bool] | None,
                     force: bool) -> Iterator[Model]:
    """All interpretations respecting `fixed`, as binary counters over the
    canonical atom order (lexicographic, False before True)."""
    base, free = _split_fixed(atoms, fixed)
    _guard(len(free), force)
    for bits in itertools.product((False, True), repeat=len(free)):
        yield base | frozenset(itertools.compress(free, bits))


def _model_set(atoms: tuple[GroundAtom, ...],
               models: Iterable[Model],
               projected: tuple[str, ...] = ()) -> ModelSet:
    return ModelSet(atoms, tuple(Interpretation(m) for m in models),
                    projected)


def facts_to_fixed(sig: Signature,
                   facts: Iterable[GroundAtom]) -> dict[GroundAtom, bool]:
    """Pin every extensional ground atom: true if listed, false otherwise."""
    facts = set(facts)
    fixed = {}
    for a in sig.ground_atoms(sig.extensional):
        fixed[a] = a in facts
    for a in facts:
        if a.pred not in sig.extensional:
            raise SemanticsError(f"fact {a} is not over an extensional predicate")
    return fixed


# ---------------------------------------------------------------------------
# Causal models

def _compile_head(f: Formula, explainable: frozenset[str]
                  ) -> Callable[[Model, Model], bool]:
    """Head evaluator: explainable atoms read from the candidate assignment,
    everything else from the interpretation."""
    if isinstance(f, Atom):
        ga = _gatom(f)
        if f.pred in explainable:
            return lambda heads, m: ga in heads
        return lambda heads, m: ga in m
    if isinstance(f, Top):
        return lambda heads, m: True
    if isinstance(f, Bottom):
        return lambda heads, m: False
    if isinstance(f, Equal):
        v = compile_eval(f)(frozenset())
        return lambda heads, m: v
    if isinstance(f, Not):
        g = _compile_head(f.sub, explainable)
        return lambda heads, m: not g(heads, m)
    if isinstance(f, (And, Or, Implies, Iff)):
        a = _compile_head(f.left, explainable)
        b = _compile_head(f.right, explainable)
        if isinstance(f, And):
            return lambda heads, m: a(heads, m) and b(heads, m)
        if isinstance(f, Or):
            return lambda heads, m: a(heads, m) or b(heads, m)
        if isinstance(f, Implies):
            return lambda heads, m: (not a(heads, m)) or b(heads, m)
        return lambda heads, m: a(heads, m) == b(heads, m)
    raise SemanticsError(f"cannot evaluate head {f!r}")


def _compile_dagger(t: CausalTheory) -> Callable[[Model, Model], bool]:
    explainable = frozenset(t.signature.explainable)
    parts = [(compile_eval(r.body), _compile_head(r.head, explainable))
             for r in t.rules]

    def dagger(heads: Model, m: Model) -> bool:
        return all((not body(m)) or head(heads, m) for body, head in parts)

    return dagger


def theory_dagger(t: CausalTheory, heads: Mapping[GroundAtom, bool],
                  i: Interpretation | Model) -> bool:
    """Truth of the conjunction, over all rules F <= G, of G -> F* where
    explainable atoms in F take their value from `heads` and everything
    else is evaluated in i.  `heads` must be total on the explainable
    ground atoms."""
    expl_atoms = t.signature.ground_atoms(t.signature.explainable)
    missing = [a for a in expl_atoms if a not in heads]
    if missing:
        raise SemanticsError(f"head assignment not total, missing {missing[0]}")
    hset = frozenset(a for a in expl_atoms if heads[a])
    m = i.true_atoms if isinstance(i, Interpretation) else i
    return _compile_dagger(t)(hset, m)


def causal_models(t: CausalTheory, *,
                  fixed: Mapping[GroundAtom, bool] | None = None,
                  force: bool = False) -> ModelSet:
    """Interpretations I such that I itself is the unique explainable-atom
    assignment v with dagger(v, I) true.  Exhaustive over interpretations
    and assignments; t must be ground."""
    sig = t.signature
    atoms = sig.ground_atoms()
    expl_atoms = [a for a in atoms if a.pred in sig.explainable]
    expl_set = frozenset(expl_atoms)
    dagger = _compile_dagger(t)
    n = len(expl_atoms)
    models = []
    for m in _interpretations(atoms, fixed, force):
        own = m & expl_set
        if not dagger(own, m):
            continue
        ok = True
        for bits in itertools.product((False, True), repeat=n):
            v = frozenset(itertools.compress(expl_atoms, bits))
            if v != own and dagger(v, m):
                ok = False
                break
        if ok:
            models.append(m)
    return _model_set(atoms, models)


# ---------------------------------------------------------------------------
# Stable models

def shadow(pred: str) -> str:
    return pred + "'"


def f_diamond(f: Formula, intensional: Iterable[str]) -> Formula:
    """Replace each occurrence of an intensional predicate that is not in
    the scope of any negation by its shadow predicate."""
    intens = set(intensional)

    def go(g: Formula, under_neg: bool) -> Formula:
        if isinstance(g, Atom):
            if g.pred in intens and not under_neg:
                return Atom(shadow(g.pred), g.args)
            return g
        if isinstance(g, Not):
            return Not(go(g.sub, True))
        if isinstance(g, (And, Or, Implies, Iff)):
            return type(g)(go(g.left, under_neg), go(g.right, under_neg))
        if isinstance(g, (Forall, Exists)):
            return type(g)(g.var, go(g.body, under_neg))
        return g

    return go(f, False)


def _compile_diamond(f: Formula, intens: frozenset[str],
                     under_neg: bool = False
                     ) -> Callable[[Model, Model], bool]:
    """Two-level evaluator of F-diamond: non-negated intensional atoms read
    from the candidate u, everything else from the interpretation."""
    if isinstance(f, Atom):
        ga = _gatom(f)
        if f.pred in intens and not under_neg:
            return lambda u, m: ga in u
        return lambda u, m: ga in m
    if isinstance(f, Top):
        return lambda u, m: True
    if isinstance(f, Bottom):
        return lambda u, m: False
    if isinstance(f, Equal):
        v = compile_eval(f)(frozenset())
        return lambda u, m: v
    if isinstance(f, Not):
        g = _compile_diamond(f.sub, intens, True)
        return lambda u, m: not g(u, m)
    if isinstance(f, And):
        a = _compile_diamond(f.left, intens, under_neg)
        b = _compile_diamond(f.right, intens, under_neg)
        return lambda u, m: a(u, m) and b(u, m)
    if isinstance(f, Or):
        a = _compile_diamond(f.left, intens, under_neg)
        b = _compile_diamond(f.right, intens, under_neg)
        return lambda u, m: a(u, m) or b(u, m)
    if isinstance(f, Implies):
        raise SemanticsError("malformed rule: nested implication")
    raise SemanticsError(f"cannot evaluate {f!r}")


def _check_ground_rule(r: ProgramRule) -> None:
    if r.universals:
        raise SemanticsError("program not ground")


def stable_models(p: Program, *,
                  fixed: Mapping[GroundAtom, bool] | None = None,
                  force: bool = False) -> ModelSet:
    """Models I of p with no strictly smaller intensional assignment u
    satisfying the diamond transform (negated occurrences held at I)."""
    sig = p.signature
    atoms = sig.ground_atoms()
    intens = frozenset(p.intensional)
    int_atoms = frozenset(a for a in atoms if a.pred in intens)
    sat = []
    dia = []
    for r in p.rules:
        _check_ground_rule(r)
        sat.append(compile_eval(Implies(r.body, r.head)
                                if not isinstance(r.body, Top) else r.head))
        body_d = _compile_diamond(r.body, intens)
        head_d = _compile_diamond(r.head, intens)
        dia.append((body_d, head_d))
    models = []
    for m in _interpretations(atoms, fixed, force):
        if not all(fn(m) for fn in sat):
            continue
        own = list(m & int_atoms)
        stable = True
        for k in range(len(own)):
            # all proper subsets of the true intensional atoms
            for keep in itertools.combinations(own, k):
                u = frozenset(keep)
                if all((not b(u, m)) or h(u, m) for b, h in dia):
                    stable = False
                    break
            if not stable:
                break
        if stable:
            models.append(m)
    return _model_set(atoms, models)


def minimal_models(p: Program, *,
                   fixed: Mapping[GroundAtom, bool] | None = None,
                   force: bool = False) -> ModelSet:
    """Classical models of p minimal under set inclusion on intensional
    atoms, with the non-intensional atoms fixed pointwise."""
    sig = p.signature
    atoms = sig.ground_atoms()
    intens = frozenset(p.intensional)
    int_atoms = frozenset(a for a in atoms if a.pred in intens)
    sat = []
    for r in p.rules:
        _check_ground_rule(r)
        sat.append(compile_eval(Implies(r.body, r.head)))
    classical = [m for m in _interpretations(atoms, fixed, force)
                 if all(fn(m) for fn in sat)]
    models = []
    for m in classical:
        mi, mx = m & int_atoms, m - int_atoms
        minimal = not any(o & int_atoms < mi and (o - int_atoms) == mx
                          for o in classical)
        if minimal:
            models.append(m)
    return _model_set(atoms, models)


# ---------------------------------------------------------------------------
# Literal completion

def _definite_head(r: CausalRule, explainable: tuple[str, ...]):
    """(ground atom, polarity) of a definite head, or None for a constraint."""
    if isinstance(r.head, Bottom):
        return None
    h = r.head
    positive = True
    if isinstance(h, Not):
        h, positive = h.sub, False
    if isinstance(h, Atom) and h.pred in explainable:
        return _gatom(h), positive
    raise SemanticsError(f"theory is not definite: head {r.head!r}")


def literal_completion(t: CausalTheory) -> Formula:
    """Clark-style completion over literals of a ground definite theory:
    for every explainable ground atom A,
        A  <-> (disjunction of bodies of rules  A <= G), and
        ~A <-> (disjunction of bodies of rules ~A <= G),
    plus ~G for every constraint.  Classical models of the result coincide
    with the causal models."""
    sig = t.signature
    pos: dict[GroundAtom, list[Formula]] = {}
    neg: dict[GroundAtom, list[Formula]] = {}
    constraints: list[Formula] = []
    for r in t.rules:
        slot = _definite_head(r, sig.explainable)
        if slot is None:
            constraints.append(Not(r.body))
        else:
            ga, positive = slot
            (pos if positive else neg).setdefault(ga, []).append(r.body)
    parts: list[Formula] = []
    for ga in sig.ground_atoms(sig.explainable):
        a = ga.formula()
        parts.append(Iff(a, disj(pos.get(ga, []))))
        parts.append(Iff(Not(a), disj(neg.get(ga, []))))
    parts.extend(constraints)
    out: Formula = parts[0] if parts else Top()
    for part in parts[1:]:
        out = And(out, part)
    return out


def completion_models(t: CausalTheory, *,
                      fixed: Mapping[GroundAtom, bool] | None = None,
                      force: bool = False) -> ModelSet:
    """Classical models of the literal completion, enumerated."""
    atoms = t.signature.ground_atoms()
    fn = compile_eval(literal_completion(t))
    models = [m for m in _interpretations(atoms, fixed, force) if fn(m)]
    return _model_set(atoms, models)


# ---------------------------------------------------------------------------
# Soundness cross-check

@dataclass(frozen=True)
class Report:
    ok: bool
    detail: str
    problems: tuple[str, ...] = ()
    causal: ModelSet | None = None
    stable: ModelSet | None = None


def project_hats(m: Model, hats: Iterable[tuple[str, str]]) -> Model:
    hatset = {hat for _, hat in hats}
    return frozenset(a for a in m if a.pred not in hatset)


def check_soundness(t: CausalTheory, facts: Iterable[GroundAtom] = (),
                    *, program: Program | None = None,
                    force: bool = False) -> Report:
    """Machine-check the soundness theorem on one instance: the stable
    models of the translated program, with hat predicates forgotten, must
    be exactly the causal models of the theory, and every stable model
    must interpret each hat predicate as the complement of its base.

    `program` overrides the translation (for validating simplified or
    deliberately altered programs against the same theory)."""
    nt = normalize_theory(t)
    gt = ground_theory(nt)
    sig = t.signature
    facts = tuple(facts)
    cm = causal_models(gt, fixed=facts_to_fixed(sig, facts) if facts else None,
                       force=force)
    prog = program if program is not None else translate(nt)
    gp = ground_program(prog)
    sm = stable_models(
        gp, fixed=facts_to_fixed(prog.signature, facts) if facts else None,
        force=force)
    problems = []
    hat_pairs = prog.hats
    projections = set()
    for i in sm.models:
        m = i.true_atoms
        for base, hat in hat_pairs:
            for ga in sig.ground_atoms([base]):
                hga = GroundAtom(hat, ga.args)
                if (ga in m) == (hga in m):
                    problems.append(
                        f"stable model violates {hat} = complement of {base}: "
                        f"{sorted(map(str, m))}")
        projections.add(project_hats(m, hat_pairs))
    causal_set = cm.as_sets()
    if len(projections) != len(sm.models):
        problems.append("hat projection is not injective on stable models")
    for m in sorted(projections - causal_set):
        problems.append(f"stable-side model is not causal: {sorted(map(str, m))}")
    for m in sorted(causal_set - projections):
        problems.append(f"causal model missing on stable side: {sorted(map(str, m))}")
    ok = not problems
    detail = (f"{'PASS' if ok else 'FAIL'} "
              f"({len(cm.models)} causal / {len(sm.models)} stable)")
    return Report(ok, detail, tuple(problems), cm, sm)


def check_extensional_simulation(p: Program, facts: Iterable[GroundAtom],
                                 *, force: bool = False) -> Report:
    """Verify the facts-as-rules simulation of extensional predicates:
    stable models of p with the extensional atoms pinned by `facts` must
    equal the stable models of p plus one fact rule per atom, with every
    predicate treated as intensional.

    Requires every non-intensional occurrence in p to be in the scope of
    negation or in a rule body; otherwise reports "condition violated"."""
    sig = p.signature
    intens = set(p.intensional)
    for r in p.rules:
        bad = _positive_occurrence(r.head, lambda q: q not in intens)
        if bad:
            return Report(False, "condition violated",
                          (f"non-intensional predicate {bad} occurs "
                           f"positively in a rule head",))
    facts = tuple(facts)
    extensional = tuple(q for q, _ in sig.predicates if q not in intens)
    fixed = {}
    for a in sig.ground_atoms(extensional):
        fixed[a] = a in set(facts)
    left = stable_models(p, fixed=fixed, force=force)
    fact_rules = tuple(ProgramRule((), Top(), a.formula()) for a in facts)
    all_int = tuple(q for q, _ in sig.predicates)
    right = stable_models(Program(sig, p.rules + fact_rules, all_int, p.hats),
                          force=force)
    ok = left.as_sets() == right.as_sets()
    detail = f"{'PASS' if ok else 'FAIL'} ({len(left.models)} models)"
    problems = () if ok else tuple(
        f"mismatch: {sorted(map(str, m))}"
        for m in left.as_sets() ^ right.as_sets())
    return Report(ok, detail, problems, stable=left)


def _positive_occurrence(f: Formula, pred_test) -> str | None:
    """First predicate satisfying pred_test that occurs outside any negation."""
    if isinstance(f, Atom):
        return f.pred if pred_test(f.pred) else None
    if isinstance(f, Not):
        return None
    if isinstance(f, (And, Or, Implies, Iff)):
        return (_positive_occurrence(f.left, pred_test)
                or _positive_occurrence(f.right, pred_test))
    if isinstance(f, (Forall, Exists)):
        return _positive_occurrence(f.body, pred_test)
    return None
