"""Command-line interface.

Exit codes: 0 success, 1 parse or validation error, 2 term cap exceeded,
3 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import transforms as tr
from .automata import AutomatonError, FuzzyABA, FuzzyNBA, LassoWord, validate
from .decision import Relation, compare, e_val, imp_val, u_val
from .evaluation import eval_aba_lasso, eval_nba_lasso
from .formula import FormulaSyntaxError, TermCapExceeded, term_cap
from .lattice import LatticeError
from .reproduce import EXAMPLES
from .textformat import AutomatonParseError, load_automaton, render_automaton

EXIT_OK, EXIT_INPUT, EXIT_CAP, EXIT_USAGE = 0, 1, 2, 3

TRANSFORMS = {
    "nba-to-aba": (1, tr.nba_to_aba),
    "crisp-initial": (1, tr.crisp_initial),
    "crisp-final": (1, tr.crisp_final),
    "to-nba": (1, tr.aba_to_nba),
    "dualize": (1, tr.dualize),
    "union": (2, tr.union),
    "meet": (2, tr.meet),
    "cobuchi-to-weak": (1, tr.cobuchi_to_weak),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_globals(p, suppress: bool):
    default = argparse.SUPPRESS if suppress else None
    p.add_argument("--term-cap", type=int, metavar="N", default=default,
                   help="maximum number of DNF terms per formula (default 100000)")
    p.add_argument("-o", "--output", metavar="PATH", default=default,
                   help="write the result to PATH instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fuzzyaba", description="Fuzzy alternating Büchi automata toolkit")
    _add_globals(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help_text):
        p = sub.add_parser(name, help=help_text)
        _add_globals(p, suppress=True)
        return p

    p = command("validate", "check an automaton file")
    p.add_argument("file")

    p = command("eval", "value of a lasso word")
    p.add_argument("file")
    p.add_argument("--prefix", default="", help="whitespace separated symbols of u")
    p.add_argument("--period", required=True, help="whitespace separated symbols of v")
    p.add_argument("--method", choices=("auto", "pipeline", "game", "dual"), default="auto")

    p = command("transform", "apply a construction")
    p.add_argument("name", choices=sorted(TRANSFORMS))
    p.add_argument("files", nargs="+")

    p = command("decide", "emptiness, universality or implication value")
    p.add_argument("kind", choices=("e-val", "u-val", "imp-val"))
    p.add_argument("files", nargs="+")
    p.add_argument("--rel", choices=[r.value for r in Relation])
    p.add_argument("--threshold")

    p = command("reproduce", "recompute a bundled worked example")
    p.add_argument("example", choices=sorted(EXAMPLES))
    return parser


def _emit(text: str, output: str | None):
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _need(files, count, what):
    if len(files) != count:
        raise UsageError(f"{what} expects {count} file(s), got {len(files)}")


def _load_aba(path) -> FuzzyABA:
    a = load_automaton(path)
    if not isinstance(a, FuzzyABA):
        raise AutomatonError(f"{path}: expected an alternating automaton")
    return a


def _cmd_validate(args):
    a = load_automaton(args.file)
    problems = validate(a)
    text = "".join(f"{args.file}: {p}\n" for p in problems) or "ok\n"
    _emit(text, args.output)
    return EXIT_INPUT if problems else EXIT_OK


def _cmd_eval(args):
    a = load_automaton(args.file)
    w = LassoWord.parse(args.prefix, args.period)
    if isinstance(a, FuzzyNBA):
        value = eval_nba_lasso(a, w)
    else:
        value = eval_aba_lasso(a, w, args.method)
    _emit(a.lattice.describe(value) + "\n", args.output)
    return EXIT_OK


def _cmd_transform(args):
    arity, fn = TRANSFORMS[args.name]
    _need(args.files, arity, args.name)
    autos = [load_automaton(f) for f in args.files]
    want = FuzzyNBA if args.name == "nba-to-aba" else FuzzyABA
    for path, a in zip(args.files, autos):
        if not isinstance(a, want):
            kind = "nondeterministic" if want is FuzzyNBA else "alternating"
            raise AutomatonError(f"{path}: {args.name} expects a {kind} automaton")
    _emit(render_automaton(fn(*autos)), args.output)
    return EXIT_OK


def _cmd_decide(args):
    if args.kind == "imp-val":
        _need(args.files, 2, args.kind)
        a1, a2 = (_load_aba(f) for f in args.files)
        verdict, lat = imp_val(a1, a2), a1.lattice
    else:
        _need(args.files, 1, args.kind)
        a = _load_aba(args.files[0])
        verdict, lat = (e_val(a) if args.kind == "e-val" else u_val(a)), a.lattice
    lines = [lat.describe(verdict.value),
             f"witness: {verdict.witness if verdict.witness is not None else 'none'}"]
    if (args.rel is None) != (args.threshold is None):
        raise UsageError("--rel and --threshold must be given together")
    if args.rel is not None:
        bound = lat.parse_value(args.threshold)
        lines.append("true" if compare(verdict.value, Relation(args.rel), bound, lat) else "false")
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_reproduce(args):
    checks = EXAMPLES[args.example]()
    _emit("".join(c.line() + "\n" for c in checks), args.output)
    return EXIT_OK if all(c.ok for c in checks) else EXIT_INPUT


COMMANDS = {"validate": _cmd_validate, "eval": _cmd_eval, "transform": _cmd_transform,
            "decide": _cmd_decide, "reproduce": _cmd_reproduce}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        cap = args.term_cap
        if cap is not None and cap <= 0:
            raise UsageError("--term-cap must be positive")
        with term_cap(cap or 100_000):
            return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except TermCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (AutomatonParseError, FormulaSyntaxError, LatticeError, AutomatonError,
            ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
