"""Command-line front door: parse -> normalize -> translate -> (simplify)
-> ground -> enumerate / emit / verify.

Exit codes: 0 success or PASS, 1 usage or input error, 2 verification
FAIL, 3 desk-scale guardrail exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import asp, fuzz, semantics
from .ground import ground_program, ground_theory
from .normalize import normalize_theory
from .parser import ParseError, TheoryDocument, parse_theory
from .semantics import EnumerationLimitError
from .syntax import GroundAtom, Interpretation, Program, TheoryError
from .translate import simplify, translate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAIL = 2
EXIT_LIMIT = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # exit 1 on usage errors, not argparse's 2
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="causelp",
                  description="Compiler and model enumerator for "
                              "first-order nonmonotonic causal theories.")
    sub = top.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, with_file: bool = True):
        if with_file:
            p.add_argument("file", help="input .ct theory file")
        p.add_argument("--config", metavar="FILE",
                       help="key=value defaults; command line wins")
        p.add_argument("--force", action="store_true",
                       help="override the desk-scale enumeration guardrail")

    def translation_flags(p: argparse.ArgumentParser):
        p.add_argument("--simplify", action="store_true",
                       help="apply stable-model-preserving cleanup")
        p.add_argument("--force-trd", action="store_true",
                       help="route L- and S-rules through the D-rule "
                            "translation")
        p.add_argument("--no-cc", action="store_true",
                       help=argparse.SUPPRESS)  # test hook: drop CC

    p = sub.add_parser("translate", help="print the translated program")
    common(p)
    translation_flags(p)
    p.add_argument("--format", choices=("formula", "asp"), default="formula")
    p.add_argument("--legacy-lparse", action="store_true",
                   help="classic lparse layout for --format asp")

    p = sub.add_parser("models", help="enumerate models")
    common(p)
    translation_flags(p)
    p.add_argument("--semantics", choices=("causal", "stable", "completion"),
                   default="causal")
    p.add_argument("--project", action="store_true",
                   help="drop shadow atoms from stable models")

    p = sub.add_parser("verify", help="machine-check the soundness theorem")
    common(p, with_file=False)
    p.add_argument("file", nargs="?", help="input .ct theory file")
    p.add_argument("--fuzz", type=int, metavar="N",
                   help="verify N random ground theories instead of a file")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-trd", action="store_true")
    p.add_argument("--corrupt", action="store_true",
                   help=argparse.SUPPRESS)  # test hook: break the translation

    p = sub.add_parser("emit", help="print solver-ready program text")
    common(p)
    translation_flags(p)
    p.add_argument("--legacy-lparse", action="store_true")

    p = sub.add_parser("solve", help="run a solver on the emitted program")
    common(p)
    translation_flags(p)
    p.add_argument("--legacy-lparse", action="store_true")
    p.add_argument("--command", dest="solver_command", metavar="CMD",
                   help="external solver command; omit to use the "
                        "built-in enumerator")
    return top


def _apply_config(args: argparse.Namespace, argv: Sequence[str]) -> None:
    if not getattr(args, "config", None):
        return
    given = {a.split("=", 1)[0] for a in argv if a.startswith("--")}
    with open(args.config, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise TheoryError(
                    f"{args.config}:{lineno}: expected key=value")
            key, value = (part.strip() for part in line.split("=", 1))
            dest = {"command": "solver_command"}.get(key,
                                                     key.replace("-", "_"))
            if not hasattr(args, dest):
                continue  # keys for other subcommands are ignored
            if f"--{key}" in given:
                continue
            current = getattr(args, dest)
            if isinstance(current, bool):
                setattr(args, dest, value.lower() in
                        ("1", "true", "yes", "on"))
            elif isinstance(current, int):
                setattr(args, dest, int(value))
            else:
                setattr(args, dest, value)


def _load(path: str) -> TheoryDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_theory(fh.read())


def _program_of(doc: TheoryDocument, args: argparse.Namespace) -> Program:
    if doc.is_program:
        return doc.program()
    prog = translate(normalize_theory(doc.theory()),
                     l_as_d=args.force_trd, s_as_d=args.force_trd,
                     include_cc=not getattr(args, "no_cc", False))
    if args.simplify:
        prog = simplify(prog)
    return prog


def _render_model(m: frozenset[GroundAtom], atoms, base_for,
                  project: bool) -> str:
    parts = []
    for ga in atoms:
        if ga not in m:
            continue
        if ga.pred in base_for:
            if project:
                continue
            parts.append(f"-{GroundAtom(base_for[ga.pred], ga.args)}")
        else:
            parts.append(str(ga))
    return " ".join(parts)


def _print_models(lines: list[str]) -> None:
    if not lines:
        print("0 models")
    else:
        for line in lines:
            print(line)


def _fixed_for(doc: TheoryDocument, sig) -> dict | None:
    if not doc.facts:
        return None
    return semantics.facts_to_fixed(sig, doc.facts)


def cmd_translate(args) -> int:
    doc = _load(args.file)
    prog = _program_of(doc, args)
    if args.format == "asp":
        sys.stdout.write(asp.emit_asp(prog, doc.facts,
                                      legacy=args.legacy_lparse))
    else:
        from .syntax import rule_text
        for r in prog.rules:
            print(rule_text(r))
    return EXIT_OK


def cmd_models(args) -> int:
    doc = _load(args.file)
    if args.semantics == "causal":
        if doc.is_program:
            raise TheoryError("causal semantics needs a causal theory, "
                              "not a program document")
        t = ground_theory(normalize_theory(doc.theory()))
        ms = semantics.causal_models(
            t, fixed=_fixed_for(doc, t.signature), force=args.force)
        base_for = {}
    elif args.semantics == "completion":
        if doc.is_program:
            raise TheoryError("completion needs a definite causal theory")
        t = ground_theory(normalize_theory(doc.theory()))
        ms = semantics.completion_models(
            t, fixed=_fixed_for(doc, t.signature), force=args.force)
        base_for = {}
    else:
        prog = _program_of(doc, args)
        gp = ground_program(prog)
        ms = semantics.stable_models(
            gp, fixed=_fixed_for(doc, prog.signature), force=args.force)
        base_for = prog.base_for
    lines = [_render_model(i.true_atoms, ms.atoms, base_for, args.project
                           if hasattr(args, "project") else False)
             for i in ms.models]
    _print_models(lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.fuzz is not None:
        failures = 0
        for i in range(args.fuzz):
            t = fuzz.random_theory(args.seed + i)
            report = semantics.check_soundness(t, force=args.force)
            if not report.ok:
                failures += 1
                print(f"seed {args.seed + i}: FAIL")
                for problem in report.problems:
                    print(f"  {problem}")
        verdict = "FAIL" if failures else "PASS"
        print(f"{verdict} {args.fuzz - failures}/{args.fuzz} instances")
        return EXIT_FAIL if failures else EXIT_OK
    if not args.file:
        raise TheoryError("verify needs a file or --fuzz N")
    doc = _load(args.file)
    if doc.is_program:
        raise TheoryError("verify needs a causal theory document")
    program = None
    if args.corrupt:
        program = translate(normalize_theory(doc.theory()), include_cc=False)
    report = semantics.check_soundness(doc.theory(), doc.facts,
                                       program=program, force=args.force)
    print(report.detail)
    for problem in report.problems:
        print(problem)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_emit(args) -> int:
    doc = _load(args.file)
    prog = _program_of(doc, args)
    sys.stdout.write(asp.emit_asp(prog, doc.facts, legacy=args.legacy_lparse))
    return EXIT_OK


def cmd_solve(args) -> int:
    doc = _load(args.file)
    prog = _program_of(doc, args)
    if args.solver_command:
        text = asp.emit_asp(prog, doc.facts, legacy=args.legacy_lparse)
        models = asp.run_solver(text, args.solver_command, prog.hat_for)
        atoms = prog.signature.ground_atoms()
    else:
        gp = ground_program(prog)
        ms = semantics.stable_models(
            gp, fixed=_fixed_for(doc, prog.signature), force=args.force)
        models = [i.true_atoms for i in ms.models]
        atoms = ms.atoms
    for n, m in enumerate(models, 1):
        print(f"Answer: {n}")
        line = _render_model(m, atoms, prog.base_for, project=False)
        print(f"Stable Model: {line}")
    if not models:
        print("0 models")
    return EXIT_OK


_COMMANDS = {"translate": cmd_translate, "models": cmd_models,
             "verify": cmd_verify, "emit": cmd_emit, "solve": cmd_solve}


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _apply_config(args, argv)
        return _COMMANDS[args.command](args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    except EnumerationLimitError as exc:
        print(f"causelp: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ParseError, TheoryError, OSError) as exc:
        print(f"causelp: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
