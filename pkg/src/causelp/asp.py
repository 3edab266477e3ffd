"""Rendering of programs in answer-set-solver text syntax, plus a thin
driver for external solvers.

Two dialects are supported.  The default targets modern grounders: the
domain predicate is emitted as one fact per universe constant and conjoined
into every rule body for safety, and `not not` is legal.  Legacy mode
reproduces the classic lparse layout instead: a pooled `u(a;b;...)` fact,
one `#domain u(X).` declaration per variable, pooled extensional facts, and
no double negation (simplify the program first).

Shadow ("hat") predicates render as strong negation: `p_hat(t)` prints as
`-p(t)`.
"""

from __future__ import annotations

import itertools
import re
import shlex
import subprocess
from typing import Iterable, Mapping, Sequence

from .ground import ground_formula
from .syntax import (And, Atom, Bottom, Equal, Formula, GroundAtom, Not, Or,
                     Program, ProgramRule, Signature, Term, TheoryError, Top,
                     Variable, contains_quantifier)


class EmitError(TheoryError):
    pass


def _domain_pred(sig: Signature) -> str:
    name = "u"
    while sig.has_predicate(name):
        name += "_"
    return name


def _needs_grounding(f: Formula) -> bool:
    from .syntax import subformulas
    return contains_quantifier(f) \
        or any(isinstance(g, Equal) for g in subformulas(f))


def _term_text(t: Term) -> str:
    return t.name


def _atom_text(a: Atom, base_for: Mapping[str, str]) -> str:
    name = f"-{base_for[a.pred]}" if a.pred in base_for else a.pred
    if not a.args:
        return name
    return f"{name}({','.join(_term_text(t) for t in a.args)})"


def _literal_text(f: Formula, base_for: Mapping[str, str],
                  legacy: bool) -> str:
    if isinstance(f, Atom):
        return _atom_text(f, base_for)
    if isinstance(f, Not) and isinstance(f.sub, Atom):
        return f"not {_atom_text(f.sub, base_for)}"
    if isinstance(f, Not) and isinstance(f.sub, Not) \
            and isinstance(f.sub.sub, Atom):
        if legacy:
            raise EmitError(
                "double negation is not representable in legacy lparse "
                "syntax; simplify the program first")
        return f"not not {_atom_text(f.sub.sub, base_for)}"
    raise EmitError(f"not a body literal: {f!r}")


def _push(f: Formula) -> Formula:
    """Normalize a body formula towards literals.  Rewrites under negation
    are classical (hence stable-model-preserving): De Morgan, constant
    folding, triple-negation collapse, and distribution of double negation
    over binary connectives."""
    if isinstance(f, (Top, Bottom, Atom)):
        return f
    if isinstance(f, (And, Or)):
        return type(f)(_push(f.left), _push(f.right))
    if isinstance(f, Not):
        g = f.sub
        if isinstance(g, Top):
            return Bottom()
        if isinstance(g, Bottom):
            return Top()
        if isinstance(g, Atom):
            return f
        if isinstance(g, And):
            return _push(Or(Not(g.left), Not(g.right)))
        if isinstance(g, Or):
            return _push(And(Not(g.left), Not(g.right)))
        if isinstance(g, Not):
            h = g.sub
            if isinstance(h, (Top, Bottom)):
                return h
            if isinstance(h, Atom):
                return f
            if isinstance(h, Not):
                return _push(h)
            if isinstance(h, (And, Or)):
                return _push(type(h)(Not(Not(h.left)), Not(Not(h.right))))
    raise EmitError(f"cannot render {f!r}")


def _conjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, And):
        return _conjuncts(f.left) + _conjuncts(f.right)
    return [f]


def _disjuncts(f: Formula) -> list[Formula]:
    if isinstance(f, Or):
        return _disjuncts(f.left) + _disjuncts(f.right)
    return [f]


def _body_branches(body: Formula) -> list[list[Formula]]:
    """Flatten a body into alternative conjunctions of literals.  An Or
    conjunct splits the rule, since (P | Q) -> R is strongly equivalent to
    (P -> R) & (Q -> R)."""
    alternatives: list[list[list[Formula]]] = []
    for c in _conjuncts(_push(body)):
        if isinstance(c, Top):
            continue
        if isinstance(c, Bottom):
            return []
        if isinstance(c, Or):
            branches = []
            for d in _disjuncts(c):
                if isinstance(d, Bottom):
                    continue
                if isinstance(d, Top):
                    branches.append([])
                else:
                    branches.append(_conjuncts(d))
            alternatives.append(branches)
        else:
            alternatives.append([[c]])
    out = []
    for combo in itertools.product(*alternatives):
        out.append([lit for part in combo for lit in part])
    return out


def _head_text(head: Formula, base_for: Mapping[str, str]) -> str | None:
    """Rendered head, or None for a constraint."""
    if isinstance(head, Bottom):
        return None
    if isinstance(head, Atom):
        return _atom_text(head, base_for)
    if isinstance(head, Or):
        lits = _disjuncts(head)
        if len(lits) == 2:
            a, b = lits
            if isinstance(b, Not) and a == b.sub and isinstance(a, Atom):
                return f"{{{_atom_text(a, base_for)}}}"
            if isinstance(a, Not) and b == a.sub and isinstance(b, Atom):
                return f"{{{_atom_text(b, base_for)}}}"
        if all(isinstance(l, Atom) for l in lits):
            return " | ".join(_atom_text(l, base_for) for l in lits)
    raise EmitError(f"head outside the emittable fragment: {head!r}")


def _rule_lines(r: ProgramRule, sig: Signature, base_for: Mapping[str, str],
                dom: str, legacy: bool) -> list[str]:
    if _needs_grounding(r.body) or _needs_grounding(r.head):
        lines = []
        for combo in itertools.product(sig.universe, repeat=len(r.universals)):
            b = dict(zip(r.universals, combo))
            gr = ProgramRule((), ground_formula(r.body, sig, b),
                             ground_formula(r.head, sig, b))
            lines.extend(_rule_lines(gr, sig, base_for, dom, legacy))
        return lines
    body, head = r.body, r.head
    if isinstance(head, Top):
        return []
    if isinstance(head, Not):
        # B -> ~G is the constraint with body B & G
        body = head.sub if isinstance(body, Top) else And(body, head.sub)
        head = Bottom()
    head_text = _head_text(head, base_for)
    lines = []
    for conjs in _body_branches(body):
        parts = [_literal_text(c, base_for, legacy) for c in conjs]
        if not legacy:
            parts.extend(f"{dom}({v})" for v in r.universals)
        if head_text is None and not parts:
            # an unconditional constraint needs a true body atom
            parts = [f"{dom}({sig.universe[0]})"]
        if head_text is None:
            lines.append(f":- {', '.join(parts)}.")
        elif parts:
            lines.append(f"{head_text} :- {', '.join(parts)}.")
        else:
            lines.append(f"{head_text}.")
    return lines


def _fact_lines(sig: Signature, facts: Sequence[GroundAtom],
                legacy: bool) -> list[str]:
    if not legacy:
        return [f"{ga}." for ga in facts]
    lines = []
    order: list[str] = []
    for ga in facts:
        if ga.pred not in order:
            order.append(ga.pred)
    for p in order:
        mine = [ga for ga in facts if ga.pred == p]
        if not mine[0].args:
            lines.append(f"{p}.")
        else:
            pooled = ";".join(",".join(ga.args) for ga in mine)
            lines.append(f"{p}({pooled}).")
    return lines


def emit_asp(p: Program, facts: Sequence[GroundAtom] = (), *,
             legacy: bool = False) -> str:
    """Solver-ready text for p with the given extensional facts."""
    sig = p.signature
    dom = _domain_pred(sig)
    base_for = p.base_for
    rule_lines: list[str] = []
    for r in p.rules:
        rule_lines.extend(_rule_lines(r, sig, base_for, dom, legacy))
    header = [f"{dom}({';'.join(sig.universe)})."] if legacy \
        else [f"{dom}({c})." for c in sig.universe]
    if legacy:
        var_names: list[str] = []
        for r in p.rules:
            for v in r.universals:
                if v not in var_names:
                    var_names.append(v)
        header.extend(f"#domain {dom}({v})." for v in var_names)
    blocks = [header, rule_lines, _fact_lines(sig, facts, legacy)]
    return "\n\n".join("\n".join(b) for b in blocks if b) + "\n"


# ---------------------------------------------------------------------------
# External solver driver

_ATOM_RE = re.compile(r"(-?)([a-z_][A-Za-z0-9_]*)(?:\(([^)]*)\))?$")


class SolverError(TheoryError):
    pass


def _parse_atom(token: str, hat_for: Mapping[str, str]) -> GroundAtom:
    m = _ATOM_RE.match(token)
    if not m:
        raise SolverError(f"unparseable atom in solver output: {token!r}")
    strong, name, args = m.groups()
    if strong:
        if name not in hat_for:
            raise SolverError(f"solver printed -{name}, but {name} has no "
                              f"shadow predicate")
        name = hat_for[name]
    arg_tuple = tuple(a.strip() for a in args.split(",")) if args else ()
    return GroundAtom(name, arg_tuple)


def parse_solver_output(text: str, hat_for: Mapping[str, str] = (),
                        drop: Iterable[str] = ("u",)
                        ) -> tuple[frozenset[GroundAtom], ...]:
    """Models from smodels-style (`Stable Model: ...`) or clingo-style
    (`Answer: N` followed by an atom line) output, domain atoms dropped."""
    hat_for = dict(hat_for)
    dropset = set(drop)
    lines = text.splitlines()
    models = []
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        tokens: list[str] | None = None
        if line.startswith("Stable Model:"):
            tokens = line[len("Stable Model:"):].split()
            # smodels output may be wrapped over several lines
            while i + 1 < len(lines):
                cont = lines[i + 1].strip()
                if not cont or ":" in cont or not _ATOM_RE.match(cont.split()[0]):
                    break
                tokens.extend(cont.split())
                i += 1
        elif line.startswith("Answer:"):
            # clingo prints the atoms on the next line; smodels follows with
            # its own "Stable Model:" line, handled by the branch above
            if i + 1 < len(lines) \
                    and not lines[i + 1].strip().startswith("Stable Model:"):
                i += 1
                tokens = lines[i].split()
        if tokens is not None:
            models.append(frozenset(
                ga for ga in (_parse_atom(t, hat_for) for t in tokens)
                if ga.pred not in dropset))
        i += 1
    return tuple(sorted(models, key=lambda m: sorted(map(str, m))))


def run_solver(asp_text: str, command: str | Sequence[str],
               hat_for: Mapping[str, str] = (),
               drop: Iterable[str] = ("u",)
               ) -> tuple[frozenset[GroundAtom], ...]:
    """Feed asp_text to an external solver and parse the models it prints.
    A nonzero exit status is tolerated as long as output was produced."""
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    try:
        proc = subprocess.run(argv, input=asp_text, capture_output=True,
                              text=True, timeout=300)
    except OSError as exc:
        raise SolverError(f"cannot run solver {argv[0]!r}: {exc}") from exc
    if proc.returncode != 0 and "Answer" not in proc.stdout \
            and "Stable Model" not in proc.stdout \
            and "UNSATISFIABLE" not in proc.stdout:
        raise SolverError(
            f"solver failed with status {proc.returncode}: "
            f"{proc.stderr.strip() or proc.stdout.strip()}")
    return parse_solver_output(proc.stdout, hat_for, drop)
