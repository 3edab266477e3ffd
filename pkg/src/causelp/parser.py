"""Reader for the `.ct` theory file format.

A document is a sequence of `.`-terminated statements:

    universe a, b, c.
    explainable p/1, q/0.
    extensional r/1.
    fact r(a).
    p(X) <= r(X) & ~q.

    % program documents instead use:
    intensional q/1.
    rule forall X: ~r(X) -> (q(X) | ~q(X)).

Variables are uppercase-initial, object constants lowercase-initial.
Connectives: `~`/`not`, `&`, `|`, `->`, `<->` (synonymity heads only),
`true`, `false`, `forall X:`, `exists X:`, `=`.  `%` starts a comment.
Predicates may be declared with an explicit arity (`p/2`) or implicitly on
first use.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .syntax import (And, Atom, Bottom, CausalRule, CausalTheory, Equal,
                     Exists, Forall, Formula, GroundAtom, Iff, Implies, Not,
                     ObjectConstant, Or, Program, ProgramRule, RuleKind,
                     Signature, Term, Top, Variable, check_formula,
                     contains_quantifier, program_rule, subformulas)


class ParseError(Exception):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.message = message
        self.line = line
        self.col = col


@dataclass(frozen=True)
class TheoryDocument:
    signature: Signature
    rules: tuple[CausalRule, ...]
    facts: tuple[GroundAtom, ...]
    program_rules: tuple[ProgramRule, ...] = ()
    intensional: tuple[str, ...] = ()

    @property
    def is_program(self) -> bool:
        return bool(self.program_rules) or bool(self.intensional)

    def theory(self) -> CausalTheory:
        return CausalTheory(self.signature, self.rules)

    def program(self) -> Program:
        return Program(self.signature, self.program_rules, self.intensional)


_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>%[^\n]*)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<int>\d+)
  | (?P<op><->|<=|->|[(),.~&|=/:])
""", re.VERBOSE)

_KEYWORDS = {"universe", "explainable", "extensional", "intensional",
             "fact", "rule", "forall", "exists", "not", "true", "false"}


@dataclass(frozen=True)
class _Tok:
    kind: str  # "name", "int", or the operator text
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    line, col, pos = 1, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        lexeme = m.group(0)
        if m.lastgroup == "name":
            toks.append(_Tok("name", lexeme, line, col))
        elif m.lastgroup == "int":
            toks.append(_Tok("int", lexeme, line, col))
        elif m.lastgroup == "op":
            toks.append(_Tok(lexeme, lexeme, line, col))
        nl = lexeme.count("\n")
        if nl:
            line += nl
            col = len(lexeme) - lexeme.rfind("\n")
        else:
            col += len(lexeme)
        pos = m.end()
    toks.append(_Tok("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        # collected declarations
        self.universe: list[str] = []
        self.decl_order: list[str] = []          # predicate first-mention order
        self.arities: dict[str, int] = {}
        self.arity_spans: dict[str, tuple[int, int]] = {}
        self.explainable: list[str] = []
        self.extensional: list[str] = []
        self.intensional: list[str] = []
        self.constants: list[str] = []
        self.facts: list[tuple[GroundAtom, tuple[int, int]]] = []
        self.rules: list[CausalRule] = []
        self.program_formulas: list[Formula] = []

    # -- token helpers ----------------------------------------------------
    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind: str) -> _Tok:
        t = self.peek()
        if t.kind != kind:
            raise ParseError(f"expected {kind!r}, found {t.text or 'end of input'!r}",
                             t.line, t.col)
        return self.next()

    def fail(self, msg: str, tok: _Tok | None = None):
        t = tok or self.peek()
        raise ParseError(msg, t.line, t.col)

    # -- declarations -----------------------------------------------------
    def note_predicate(self, name: str, arity: int, tok: _Tok) -> None:
        if name not in self.decl_order:
            self.decl_order.append(name)
        if name in self.arities:
            if self.arities[name] != arity:
                self.fail(f"arity mismatch: {name} used with {arity} "
                          f"arguments, previously /{self.arities[name]}", tok)
        else:
            self.arities[name] = arity
            self.arity_spans[name] = (tok.line, tok.col)

    def note_constant(self, name: str) -> None:
        if name not in self.constants:
            self.constants.append(name)

    # -- statements -------------------------------------------------------
    def parse_document(self) -> TheoryDocument:
        while self.peek().kind != "eof":
            self.statement()
        return self.build_document()

    def statement(self) -> None:
        t = self.peek()
        if t.kind == "name" and t.text == "universe":
            self.next()
            self.universe.extend(self.name_list(lower=True))
        elif t.kind == "name" and t.text in ("explainable", "extensional",
                                             "intensional"):
            self.next()
            target = {"explainable": self.explainable,
                      "extensional": self.extensional,
                      "intensional": self.intensional}[t.text]
            for name, arity, tok in self.pred_list():
                if arity is not None:
                    self.note_predicate(name, arity, tok)
                elif name not in self.decl_order:
                    self.decl_order.append(name)
                if name not in target:
                    target.append(name)
        elif t.kind == "name" and t.text == "fact":
            self.next()
            self.fact_statement()
        elif t.kind == "name" and t.text == "rule":
            self.next()
            f = self.formula()
            self.expect(".")
            self.program_formulas.append(f)
        else:
            self.causal_rule()

    def name_list(self, lower: bool) -> list[str]:
        out = []
        while True:
            t = self.expect("name")
            if lower and t.text[0].isupper():
                self.fail("object constants must be lowercase-initial", t)
            out.append(t.text)
            for c in out:
                self.note_constant(c)
            if self.peek().kind == ",":
                self.next()
                continue
            self.expect(".")
            return out

    def pred_list(self) -> list[tuple[str, int | None, _Tok]]:
        out = []
        while True:
            t = self.expect("name")
            arity = None
            if self.peek().kind == "/":
                self.next()
                arity = int(self.expect("int").text)
            out.append((t.text, arity, t))
            if self.peek().kind == ",":
                self.next()
                continue
            self.expect(".")
            return out

    def fact_statement(self) -> None:
        t = self.expect("name")
        if t.text[0].isupper():
            self.fail("facts must be ground", t)
        args: list[str] = []
        if self.peek().kind == "(":
            self.next()
            while True:
                a = self.expect("name")
                if a.text[0].isupper():
                    self.fail("facts must be ground", a)
                args.append(a.text)
                self.note_constant(a.text)
                if self.peek().kind == ",":
                    self.next()
                    continue
                self.expect(")")
                break
        self.expect(".")
        self.note_predicate(t.text, len(args), t)
        self.facts.append((GroundAtom(t.text, tuple(args)), (t.line, t.col)))

    def causal_rule(self) -> None:
        start = self.peek()
        head = self.rule_head()
        if contains_quantifier(head):
            self.fail("quantifiers are not supported in causal-rule heads",
                      start)
        self.expect("<=")
        body = self.formula()
        self.expect(".")
        self.rules.append(CausalRule(head, body, RuleKind.UNCLASSIFIED))

    def rule_head(self) -> Formula:
        # <-> is accepted only here, as the top connective of the head
        left = self.implication()
        if self.peek().kind == "<->":
            self.next()
            right = self.implication()
            return Iff(left, right)
        return left

    # -- formulas ---------------------------------------------------------
    def formula(self) -> Formula:
        f = self.implication()
        if self.peek().kind == "<->":
            self.fail("<-> is only allowed as a synonymity-rule head")
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek().kind == "->":
            self.next()
            return Implies(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek().kind == "|":
            self.next()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek().kind == "&":
            self.next()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        t = self.peek()
        if t.kind == "~" or (t.kind == "name" and t.text == "not"):
            self.next()
            return Not(self.unary())
        if t.kind == "name" and t.text in ("forall", "exists"):
            self.next()
            v = self.expect("name")
            if not v.text[0].isupper():
                self.fail("quantified variables must be uppercase-initial", v)
            self.expect(":")
            body = self.implication()
            return (Forall if t.text == "forall" else Exists)(v.text, body)
        return self.atomic()

    def atomic(self) -> Formula:
        t = self.peek()
        if t.kind == "(":
            self.next()
            f = self.implication()
            if self.peek().kind == "<->":
                self.fail("<-> is only allowed as a synonymity-rule head")
            self.expect(")")
            return f
        if t.kind == "name" and t.text == "true":
            self.next()
            return Top()
        if t.kind == "name" and t.text == "false":
            self.next()
            return Bottom()
        if t.kind != "name":
            self.fail(f"expected a formula, found {t.text or 'end of input'!r}")
        if t.text in _KEYWORDS:
            self.fail(f"unexpected keyword {t.text!r}")
        self.next()
        if self.peek().kind == "(":
            self.next()
            args: list[Term] = []
            while True:
                args.append(self.term())
                if self.peek().kind == ",":
                    self.next()
                    continue
                self.expect(")")
                break
            self.note_predicate(t.text, len(args), t)
            return Atom(t.text, tuple(args))
        if self.peek().kind == "=":
            self.next()
            left = self.term_from(t)
            right = self.term()
            return Equal(left, right)
        if t.text[0].isupper():
            self.fail("a bare variable is not a formula", t)
        self.note_predicate(t.text, 0, t)
        return Atom(t.text)

    def term(self) -> Term:
        t = self.expect("name")
        if t.text in _KEYWORDS:
            self.fail(f"unexpected keyword {t.text!r}", t)
        return self.term_from(t)

    def term_from(self, t: _Tok) -> Term:
        if t.text[0].isupper():
            return Variable(t.text)
        self.note_constant(t.text)
        return ObjectConstant(t.text)

    # -- signature assembly -----------------------------------------------
    def build_document(self) -> TheoryDocument:
        if not self.universe:
            self.fail("missing universe declaration (universe must be nonempty)")
        for name in self.decl_order:
            if name not in self.arities:
                self.fail(f"cannot infer arity of {name}: declared but never used")
        predicates = tuple((p, self.arities[p]) for p in self.decl_order)
        consts = list(self.universe)
        for c in self.constants:
            if c not in consts:
                consts.append(c)
        try:
            sig = Signature(tuple(consts), predicates,
                            tuple(self.explainable), tuple(self.extensional),
                            tuple(self.universe))
        except Exception as exc:
            self.fail(str(exc))
        for ga, span in self.facts:
            if ga.pred not in self.extensional:
                raise ParseError(f"fact predicate {ga.pred} is not extensional",
                                 *span)
            for a in ga.args:
                if a not in self.universe:
                    raise ParseError(f"fact constant {a} is outside the universe",
                                     *span)
        for r in self.rules:
            try:
                check_formula(r.head, sig, allow_iff=True)
                check_formula(r.body, sig)
            except Exception as exc:
                self.fail(str(exc), self.toks[0])
        prules = tuple(self._close(f) for f in self.program_formulas)
        if prules and self.rules:
            self.fail("a document may not mix causal rules and program rules")
        return TheoryDocument(sig, tuple(self.rules),
                              tuple(ga for ga, _ in self.facts),
                              prules, tuple(self.intensional))

    @staticmethod
    def _close(f: Formula) -> ProgramRule:
        # strip an outer quantifier prefix, then split on the top implication
        prefix: list[str] = []
        while isinstance(f, Forall):
            prefix.append(f.var)
            f = f.body
        if isinstance(f, Implies):
            body, head = f.left, f.right
        else:
            body, head = Top(), f
        r = program_rule(body, head)
        return r


def parse_theory(text: str) -> TheoryDocument:
    """Parse a theory document; raises ParseError with a source position."""
    return _Parser(text).parse_document()


def parse_formula(text: str, sig: Signature) -> Formula:
    """Parse a standalone formula and validate it against a signature."""
    p = _Parser(text)
    f = p.formula()
    tail = p.peek()
    if tail.kind != "eof":
        raise ParseError(f"trailing input {tail.text!r}", tail.line, tail.col)
    try:
        check_formula(f, sig)
    except Exception as exc:
        raise ParseError(str(exc), 1, 1) from exc
    return f
