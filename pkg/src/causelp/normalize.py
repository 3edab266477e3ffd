"""Rule normalization: implication-free bodies, C/L/S/D classification,
and rewriting of heads whose literals use non-explainable predicates."""

from __future__ import annotations

from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Equal,
                     Exists, Forall, Formula, Iff, Implies, Not, Or, RuleKind,
                     Signature, TheoryError, Top, is_literal,
                     literal_complement)


class NormalizeError(TheoryError):
    pass


def eliminate_body_implications(r: CausalRule) -> CausalRule:
    """Rewrite F -> G into ~F | G, bottom-up, in the body only."""
    def elim(f: Formula) -> Formula:
        if isinstance(f, Implies):
            return Or(Not(elim(f.left)), elim(f.right))
        if isinstance(f, Not):
            return Not(elim(f.sub))
        if isinstance(f, (And, Or)):
            return type(f)(elim(f.left), elim(f.right))
        if isinstance(f, Iff):
            raise NormalizeError("<-> in a rule body")
        if isinstance(f, (Forall, Exists)):
            return type(f)(f.var, elim(f.body))
        return f
    return CausalRule(r.head, elim(r.body), r.kind)


def _disjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def head_literals(head: Formula) -> list[Formula]:
    """The literal list of a D-shaped head; Bottom is the empty disjunction."""
    if isinstance(head, Bottom):
        return []
    lits = _disjuncts(head)
    for lit in lits:
        if not is_literal(lit):
            raise NormalizeError(f"head disjunct is not a literal: {lit!r}")
    return lits


def classify(r: CausalRule, sig: Signature) -> RuleKind:
    """Classify by head shape alone; explainability is enforced afterwards
    by rewrite_nonexplainable_heads."""
    h = r.head
    if isinstance(h, Bottom):
        return RuleKind.C
    if is_literal(h):
        return RuleKind.L
    if isinstance(h, Iff):
        if is_literal(h.left) and is_literal(h.right):
            return RuleKind.S
        raise NormalizeError("synonymity head must relate two literals")
    if isinstance(h, Or):
        head_literals(h)
        return RuleKind.D
    raise NormalizeError(f"unsupported head shape: {h!r}")


def _literal_pred(lit: Formula) -> str | None:
    """Predicate of a literal; None for equality literals."""
    core = lit.sub if isinstance(lit, Not) else lit
    if isinstance(core, Equal):
        return None
    assert isinstance(core, Atom)
    return core.pred


def _explainable_literal(lit: Formula, sig: Signature) -> bool:
    p = _literal_pred(lit)
    return p is not None and p in sig.explainable


def rewrite_nonexplainable_heads(r: CausalRule, sig: Signature) -> list[CausalRule]:
    """Replace rules whose head literals use non-explainable predicates by
    equivalent rules over explainable heads.

    L <= G              becomes  false <= G & ~L
    L1 <-> L2 <= G      becomes  L2 <= G & L1  and  ~L2 <= G & ~L1
    L1 | ... | Ln <= G  becomes  L2 | ... | Ln <= G & ~L1   (leftmost first)
    """
    kind = r.kind if r.kind != RuleKind.UNCLASSIFIED else classify(r, sig)
    if kind == RuleKind.C:
        return [CausalRule(r.head, r.body, RuleKind.C)]
    if kind == RuleKind.L:
        if _explainable_literal(r.head, sig):
            return [CausalRule(r.head, r.body, RuleKind.L)]
        return [CausalRule(Bottom(),
                           And(r.body, literal_complement(r.head)),
                           RuleKind.C)]
    if kind == RuleKind.S:
        assert isinstance(r.head, Iff)
        l1, l2 = r.head.left, r.head.right
        if _explainable_literal(l1, sig) and _explainable_literal(l2, sig):
            return [CausalRule(r.head, r.body, RuleKind.S)]
        if _explainable_literal(l1, sig):
            # only l2 is non-explainable: the head is symmetric, swap roles
            l1, l2 = l2, l1
        pair = [CausalRule(l2, And(r.body, l1), RuleKind.UNCLASSIFIED),
                CausalRule(literal_complement(l2),
                           And(r.body, literal_complement(l1)),
                           RuleKind.UNCLASSIFIED)]
        out: list[CausalRule] = []
        for sub in pair:
            out.extend(rewrite_nonexplainable_heads(
                CausalRule(sub.head, sub.body, RuleKind.L), sig))
        return out
    # D-rule: strip leftmost non-explainable literals one at a time
    lits = head_literals(r.head)
    body = r.body
    while True:
        bad = next((i for i, lit in enumerate(lits)
                    if not _explainable_literal(lit, sig)), None)
        if bad is None:
            break
        body = And(body, literal_complement(lits[bad]))
        lits = lits[:bad] + lits[bad + 1:]
    if not lits:
        return [CausalRule(Bottom(), body, RuleKind.C)]
    head: Formula = lits[0]
    for lit in lits[1:]:
        head = Or(head, lit)
    # a head reduced to a single literal is handled by the cheaper tr_l
    kind = RuleKind.L if len(lits) == 1 else RuleKind.D
    return [CausalRule(head, body, kind)]


def normalize_rule(r: CausalRule, sig: Signature) -> list[CausalRule]:
    r = eliminate_body_implications(r)
    if isinstance(r.head, Top):
        return []  # vacuous: the rule contributes the conjunct G -> true
    kind = classify(r, sig)
    return rewrite_nonexplainable_heads(
        CausalRule(r.head, r.body, kind), sig)


def normalize_theory(t: CausalTheory) -> CausalTheory:
    """Full pipeline: implication-free bodies, classification, explainable
    heads only.  Every output rule has kind C, L, S, or D."""
    out: list[CausalRule] = []
    for r in t.rules:
        out.extend(normalize_rule(r, t.signature))
    return CausalTheory(t.signature, tuple(out))
