"""Translation of normalized causal theories into logic programs.

Each explainable predicate p gets a fresh shadow predicate (rendered
`p_hat` in formula output, `-p` in solver output) standing for its
classical negation.  The four rule kinds are translated separately;
completeness constraints force the shadow to be the exact complement.
"""

from __future__ import annotations

from dataclasses import dataclass

from .normalize import head_literals
from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Exists,
                     Forall, Formula, Iff, Not, Or, Program, ProgramRule,
                     RuleKind, Signature, TheoryError, Top, Variable,
                     literal_complement, predicates_in, program_rule)


class TranslateError(TheoryError):
    pass


@dataclass(frozen=True)
class HatMap:
    pairs: tuple[tuple[str, str], ...]  # (explainable predicate, shadow)

    def hat(self, pred: str) -> str:
        for base, hat in self.pairs:
            if base == pred:
                return hat
        raise TranslateError(f"{pred} is not explainable")

    def hat_atom(self, a: Atom) -> Atom:
        return Atom(self.hat(a.pred), a.args)


def make_hat_map(sig: Signature) -> HatMap:
    declared = {p for p, _ in sig.predicates}
    pairs = []
    for p in sig.explainable:
        hat = f"{p}_hat"
        while hat in declared:
            hat += "_"
        declared.add(hat)
        pairs.append((p, hat))
    return HatMap(tuple(pairs))


def extend_signature(sig: Signature, h: HatMap) -> Signature:
    return sig.with_predicates((hat, sig.arity(base)) for base, hat in h.pairs)


def _split_literal(lit: Formula) -> tuple[Atom, bool]:
    """(atom, positive) of a head literal over a predicate."""
    if isinstance(lit, Not) and isinstance(lit.sub, Atom):
        return lit.sub, False
    if isinstance(lit, Atom):
        return lit, True
    raise TranslateError(f"head literal over a predicate expected: {lit!r}")


def tr_c(r: CausalRule) -> ProgramRule:
    """C-rule: bottom <= G  becomes  the universally closed constraint ~G."""
    if r.kind != RuleKind.C:
        raise TranslateError("tr_c expects a C-rule")
    return program_rule(Top(), Not(r.body))


def tr_l(r: CausalRule, h: HatMap) -> ProgramRule:
    """L-rule: p(t) <= G  becomes  ~~G -> p(t);
    ~p(t) <= G  becomes  ~~G -> p_hat(t)."""
    if r.kind != RuleKind.L:
        raise TranslateError("tr_l expects an L-rule")
    a, positive = _split_literal(r.head)
    head = a if positive else h.hat_atom(a)
    return program_rule(Not(Not(r.body)), head)


def tr_s(r: CausalRule, h: HatMap) -> list[ProgramRule]:
    """S-rule: four nondisjunctive rules, hat-swapped for mixed polarity."""
    if r.kind != RuleKind.S or not isinstance(r.head, Iff):
        raise TranslateError("tr_s expects an S-rule")
    (a1, pos1) = _split_literal(r.head.left)
    (a2, pos2) = _split_literal(r.head.right)
    g = Not(Not(r.body))
    h1, h2 = h.hat_atom(a1), h.hat_atom(a2)
    if pos1 == pos2:
        shape = [(a1, a2), (a2, a1), (h1, h2), (h2, h1)]
    else:
        shape = [(h1, a2), (a2, h1), (a1, h2), (h2, a1)]
    return [program_rule(And(g, pre), post) for pre, post in shape]


def tr_d(r: CausalRule, h: HatMap) -> ProgramRule:
    """D-rule (including C- and L-rules viewed as D-rules):

        A1 | ... | ~B1 | ... <= G
    becomes
        ~~G & (A1_hat | ~A1_hat) & ... & (B1 | ~B1) & ...
            -> A1 | ... | B1_hat | ...
    """
    if r.kind not in (RuleKind.C, RuleKind.L, RuleKind.D):
        raise TranslateError("tr_d expects a C-, L-, or D-rule")
    pos: list[Atom] = []
    neg: list[Atom] = []
    for lit in head_literals(r.head):
        a, positive = _split_literal(lit)
        bucket = pos if positive else neg
        if a not in bucket:
            bucket.append(a)
    antecedent: Formula = Not(Not(r.body))
    for a in pos:
        ha = h.hat_atom(a)
        antecedent = And(antecedent, Or(ha, Not(ha)))
    for a in neg:
        antecedent = And(antecedent, Or(a, Not(a)))
    consequent: Formula = Bottom()
    parts: list[Formula] = [*pos, *(h.hat_atom(a) for a in neg)]
    if parts:
        consequent = parts[0]
        for p in parts[1:]:
            consequent = Or(consequent, p)
    return program_rule(antecedent, consequent)


def translate_s_as_d(r: CausalRule, h: HatMap) -> list[ProgramRule]:
    """The S-rule L1 <-> L2 <= G as the pair of D-rules
    L1 | ~L2 <= G  and  ~L1 | L2 <= G, each through tr_d."""
    if r.kind != RuleKind.S or not isinstance(r.head, Iff):
        raise TranslateError("expected an S-rule")
    l1, l2 = r.head.left, r.head.right
    d1 = CausalRule(Or(l1, literal_complement(l2)), r.body, RuleKind.D)
    d2 = CausalRule(Or(literal_complement(l1), l2), r.body, RuleKind.D)
    return [tr_d(d1, h), tr_d(d2, h)]


def completeness_constraints(sig: Signature, h: HatMap) -> list[ProgramRule]:
    """Per explainable p:  ~(p(x) & p_hat(x))  and  ~(~p(x) & ~p_hat(x))."""
    out = []
    for base, hat in h.pairs:
        k = sig.arity(base)
        names = ("X",) if k == 1 else tuple(f"X{i+1}" for i in range(k))
        args = tuple(Variable(n) for n in names)
        p, ph = Atom(base, args), Atom(hat, args)
        out.append(ProgramRule(names, Top(), Not(And(p, ph))))
        out.append(ProgramRule(names, Top(), Not(And(Not(p), Not(ph)))))
    return out


def translate(t: CausalTheory, *, c_as_d: bool = False, l_as_d: bool = False,
              s_as_d: bool = False, include_cc: bool = True) -> Program:
    """Conjoin the per-kind translations of a normalized theory with the
    completeness constraints.  Intensional predicates are the explainable
    predicates plus their shadows; extensional predicates stay out.

    The *_as_d switches route the respective kinds through tr_d, for
    validating the per-kind translations against each other."""
    h = make_hat_map(t.signature)
    rules: list[ProgramRule] = []
    for r in t.rules:
        if r.kind == RuleKind.C:
            rules.append(tr_d(r, h) if c_as_d else tr_c(r))
        elif r.kind == RuleKind.L:
            rules.append(tr_d(r, h) if l_as_d else tr_l(r, h))
        elif r.kind == RuleKind.S:
            rules.extend(translate_s_as_d(r, h) if s_as_d else tr_s(r, h))
        elif r.kind == RuleKind.D:
            rules.append(tr_d(r, h))
        else:
            raise TranslateError("theory contains an unclassified rule")
    if include_cc:
        rules.extend(completeness_constraints(t.signature, h))
    hats = tuple(hat for _, hat in h.pairs)
    return Program(extend_signature(t.signature, h), tuple(rules),
                   t.signature.explainable + hats, h.pairs)


# ---------------------------------------------------------------------------
# Simplification

def simplify(p: Program) -> Program:
    """Stable-model-preserving cleanup of a translated program:

      * ~~~F          =>  ~F
      * ~~(F & G)     =>  ~~F & ~~G
      * ~~F           =>  F        if F has no intensional predicate
      * ~~q           =>  ~q_hat   (and symmetrically) via the completeness
                                   constraints, which the program carries
      * constant folding for true/false in &, |, ~ and at the rule level

    Rules reduced to `true` heads or `false` bodies are dropped.
    """
    intensional = set(p.intensional)
    partner: dict[str, str] = {}
    for base, hat in p.hats:
        partner[base] = hat
        partner[hat] = base

    def nonintensional(f: Formula) -> bool:
        return not any(q in intensional for q in predicates_in(f))

    def simp(f: Formula) -> Formula:
        if isinstance(f, Not):
            sub = simp(f.sub)
            if isinstance(sub, Top):
                return Bottom()
            if isinstance(sub, Bottom):
                return Top()
            if isinstance(sub, Not):
                inner = sub.sub  # f is ~~inner
                if isinstance(inner, Not):
                    return simp(inner)
                if nonintensional(inner):
                    return inner
                if isinstance(inner, And):
                    return simp(And(Not(Not(inner.left)),
                                    Not(Not(inner.right))))
                if isinstance(inner, Atom) and inner.pred in partner:
                    return Not(Atom(partner[inner.pred], inner.args))
            return Not(sub)
        if isinstance(f, And):
            a, b = simp(f.left), simp(f.right)
            if isinstance(a, Top):
                return b
            if isinstance(b, Top):
                return a
            if isinstance(a, Bottom) or isinstance(b, Bottom):
                return Bottom()
            return And(a, b)
        if isinstance(f, Or):
            a, b = simp(f.left), simp(f.right)
            if isinstance(a, Bottom):
                return b
            if isinstance(b, Bottom):
                return a
            if isinstance(a, Top) or isinstance(b, Top):
                return Top()
            return Or(a, b)
        if isinstance(f, (Forall, Exists)):
            return type(f)(f.var, simp(f.body))
        return f

    out: list[ProgramRule] = []
    for r in p.rules:
        body, head = simp(r.body), simp(r.head)
        if isinstance(head, Top) or isinstance(body, Bottom):
            continue
        out.append(program_rule(body, head))
    return Program(p.signature, tuple(out), p.intensional, p.hats)
