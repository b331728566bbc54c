"""Lattice-weighted positive Boolean formulas.

A formula is built from ``true``, ``false``, lattice constants and state
variables with n-ary conjunction and disjunction.  The normal form used
throughout the package is a set of terms ``(coefficient, variables)``
read as ``coefficient & x1 & ... & xk``; see :func:`standard_form` and
:func:`simplest_final_expansion`.
"""

from __future__ import annotations

import contextlib
import contextvars
import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, NamedTuple, Union

from .lattice import Lattice, LatticeError, Value

DEFAULT_TERM_CAP = 100_000

_term_cap = contextvars.ContextVar("term_cap", default=DEFAULT_TERM_CAP)


class TermCapExceeded(RuntimeError):
    def __init__(self, cap: int):
        super().__init__(f"expansion cap exceeded ({cap} terms)")
        self.cap = cap


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos
        self.text = text


@contextlib.contextmanager
def term_cap(limit: int):
    """Temporarily change the DNF term cap for the current context."""
    if limit <= 0:
        raise ValueError("term cap must be positive")
    token = _term_cap.set(limit)
    try:
        yield
    finally:
        _term_cap.reset(token)


def current_term_cap() -> int:
    return _term_cap.get()


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class BoolConst:
    value: bool


@dataclass(frozen=True)
class Const:
    value: Value


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class And:
    args: tuple


@dataclass(frozen=True)
class Or:
    args: tuple


Formula = Union[BoolConst, Const, Var, And, Or]

TRUE = BoolConst(True)
FALSE = BoolConst(False)


def conj(*parts: Formula) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TRUE
    return parts[0] if len(parts) == 1 else And(parts)


def disj(*parts: Formula) -> Formula:
    parts = tuple(parts)
    if not parts:
        return FALSE
    return parts[0] if len(parts) == 1 else Or(parts)


def variables(f: Formula) -> frozenset:
    if isinstance(f, Var):
        return frozenset([f.name])
    if isinstance(f, (And, Or)):
        return frozenset().union(*(variables(a) for a in f.args))
    return frozenset()


def constants(f: Formula) -> list:
    if isinstance(f, Const):
        return [f.value]
    if isinstance(f, (And, Or)):
        return [c for a in f.args for c in constants(a)]
    return []


def substitute(f: Formula, repl: Callable[[str], Formula]) -> Formula:
    """Replace every variable ``x`` by ``repl(x)``."""
    if isinstance(f, Var):
        return repl(f.name)
    if isinstance(f, And):
        return And(tuple(substitute(a, repl) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute(a, repl) for a in f.args))
    return f


def rename(f: Formula, mapping: Callable[[str], str]) -> Formula:
    return substitute(f, lambda x: Var(mapping(x)))


# --- parsing ---------------------------------------------------------------

IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'@]*")
_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:\.\d+)?(?:\s*/\s*\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_'@]*)
  | (?P<quoted>"[^"]*")
  | (?P<op>[()&|,])
""", re.VERBOSE)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), m.start()))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, lattice: Lattice):
        self.text = text
        self.lattice = lattice
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise FormulaSyntaxError(msg, self.text, tok[2])

    def expect(self, value):
        tok = self.take()
        if tok[1] != value:
            self.fail(f"expected {value!r}", tok)

    def parse(self):
        f = self.disjunction()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return f

    def disjunction(self):
        parts = [self.conjunction()]
        while self.peek()[1] == "|":
            self.take()
            parts.append(self.conjunction())
        return disj(*parts)

    def conjunction(self):
        parts = [self.atom()]
        while self.peek()[1] == "&":
            self.take()
            parts.append(self.atom())
        return conj(*parts)

    def literal(self, text, tok):
        try:
            return Const(self.lattice.parse_value(text))
        except LatticeError as exc:
            self.fail(str(exc), tok)

    def atom(self):
        tok = self.peek()
        kind, value, _ = tok
        if kind == "ident":
            self.take()
            if value == "true":
                return TRUE
            if value == "false":
                return FALSE
            return Var(value)
        if kind == "quoted":
            self.take()
            return Var(value[1:-1])
        if kind == "num":
            self.take()
            return self.literal(value, tok)
        if value == "(":
            if self.peek(1)[0] == "num" and self.peek(2)[1] == ",":
                return self.tuple_literal()
            self.take()
            f = self.disjunction()
            self.expect(")")
            return f
        self.fail("expected an operand" if kind != "end" else "unexpected end of formula")

    def tuple_literal(self):
        start = self.take()
        parts = [self.take()[1]]
        while self.peek()[1] == ",":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.fail("expected a number", tok)
            parts.append(tok[1])
        self.expect(")")
        return self.literal("(" + ",".join(parts) + ")", start)


def parse(text: str, lattice: Lattice) -> Formula:
    """Parse formula text; constants are read in ``lattice``."""
    return _Parser(text, lattice).parse()


# --- rendering -------------------------------------------------------------

_RANK = {BoolConst: 0, Const: 1, Var: 2, And: 3, Or: 4}


def _flatten(f: Formula) -> Formula:
    if isinstance(f, (And, Or)):
        kind = type(f)
        args = []
        for a in f.args:
            a = _flatten(a)
            if isinstance(a, kind):
                args.extend(a.args)
            else:
                args.append(a)
        return args[0] if len(args) == 1 else kind(tuple(args))
    return f


def _render_var(name: str) -> str:
    if IDENT.fullmatch(name) and name not in ("true", "false"):
        return name
    return f'"{name}"'


def _canon(f: Formula, lattice: Lattice):
    """Return (canonical AST, rendered text)."""
    if isinstance(f, BoolConst):
        return f, "true" if f.value else "false"
    if isinstance(f, Const):
        return f, lattice.format_value(f.value)
    if isinstance(f, Var):
        return f, _render_var(f.name)
    parts = sorted((_canon(a, lattice) for a in f.args),
                   key=lambda p: (_RANK[type(p[0])], p[1]))
    sep = " & " if isinstance(f, And) else " | "
    text = sep.join(f"({t})" if isinstance(a, (And, Or)) else t for a, t in parts)
    return type(f)(tuple(a for a, _ in parts)), text


def canonical(f: Formula, lattice: Lattice) -> Formula:
    """Flatten nested same-kind nodes and sort operands."""
    return _canon(_flatten(f), lattice)[0]


def render(f: Formula, lattice: Lattice) -> str:
    return _canon(_flatten(f), lattice)[1]


# --- semantics -------------------------------------------------------------

def evaluate(f: Formula, true_vars: Iterable[str], lattice: Lattice) -> Value:
    """Value of ``f`` when the variables in ``true_vars`` are top and the rest bot."""
    ys = true_vars if isinstance(true_vars, (set, frozenset)) else set(true_vars)
    return _eval(f, ys, lattice)


def _eval(f, ys, lat):
    if isinstance(f, BoolConst):
        return lat.top if f.value else lat.bot
    if isinstance(f, Const):
        return f.value
    if isinstance(f, Var):
        return lat.top if f.name in ys else lat.bot
    if isinstance(f, And):
        return lat.meet_all(_eval(a, ys, lat) for a in f.args)
    return lat.join_all(_eval(a, ys, lat) for a in f.args)


class Term(NamedTuple):
    coefficient: Value
    variables: frozenset


@dataclass(frozen=True)
class StandardForm:
    """A disjunction of terms, kept in canonical order."""

    terms: tuple

    @classmethod
    def from_map(cls, table: dict, lattice: Lattice) -> "StandardForm":
        terms = [Term(c, s) for s, c in table.items()]
        terms.sort(key=lambda t: (tuple(sorted(t.variables)), lattice.sort_key(t.coefficient)))
        return cls(tuple(terms))

    def __iter__(self):
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def as_set(self) -> frozenset:
        return frozenset(self.terms)

    def to_formula(self, lattice: Lattice) -> Formula:
        parts = []
        for coef, vs in self.terms:
            names = [Var(v) for v in sorted(vs)]
            if coef == lattice.top:
                parts.append(conj(*names) if names else TRUE)
            else:
                parts.append(conj(Const(coef), *names))
        if len(parts) == 1 and parts[0] is TRUE:
            return TRUE
        return disj(*parts)


def _product(left: dict, right: dict, lat: Lattice, cap: int) -> dict:
    out: dict = {}
    bot = lat.bot
    for s1, c1 in left.items():
        for s2, c2 in right.items():
            c = lat.meet(c1, c2)
            if c == bot:
                continue
            s = s1 | s2
            prev = out.get(s)
            out[s] = c if prev is None else lat.join(prev, c)
        if len(out) > cap:
            raise TermCapExceeded(cap)
    return out


def _union(parts: Iterable[dict], lat: Lattice, cap: int) -> dict:
    out: dict = {}
    for part in parts:
        for s, c in part.items():
            prev = out.get(s)
            out[s] = c if prev is None else lat.join(prev, c)
    if len(out) > cap:
        raise TermCapExceeded(cap)
    return out


def _expand(f: Formula, lat: Lattice, cap: int, absorb: bool) -> dict:
    if isinstance(f, BoolConst):
        return {frozenset(): lat.top} if f.value else {}
    if isinstance(f, Const):
        return {} if f.value == lat.bot else {frozenset(): f.value}
    if isinstance(f, Var):
        return {frozenset([f.name]): lat.top}
    children = [_expand(a, lat, cap, absorb) for a in f.args]
    if isinstance(f, Or):
        out = _union(children, lat, cap)
    else:
        out = {frozenset(): lat.top}
        for child in sorted(children, key=len):
            out = _product(out, child, lat, cap)
            if absorb:
                out = _absorb(out, lat)
            if not out:
                break
    return _absorb(out, lat) if absorb else out


def _absorb(table: dict, lat: Lattice) -> dict:
    """Drop every term dominated by a term over a strictly smaller varset."""
    if len(table) < 2:
        return dict(table)
    items = sorted(table.items(), key=lambda kv: len(kv[0]))
    kept: list = []
    for s, c in items:
        if not any(len(k) < len(s) and lat.leq(c, kc) and k <= s for k, kc in kept):
            kept.append((s, c))
    return dict(kept)


def standard_form(f: Formula, lattice: Lattice, cap: int | None = None) -> StandardForm:
    """Full DNF with merged coefficients and bot terms dropped."""
    cap = cap or current_term_cap()
    return StandardForm.from_map(_expand(f, lattice, cap, absorb=False), lattice)


def absorb(sf: StandardForm, lattice: Lattice) -> StandardForm:
    return StandardForm.from_map(_absorb({t.variables: t.coefficient for t in sf}, lattice),
                                 lattice)


@lru_cache(maxsize=65536)
def _sfe_cached(f: Formula, lattice: Lattice, cap: int) -> StandardForm:
    return StandardForm.from_map(_expand(f, lattice, cap, absorb=True), lattice)


def simplest_final_expansion(f: Formula, lattice: Lattice, cap: int | None = None) -> StandardForm:
    """Standard form reduced by absorption.

    Absorption is applied after every partial product, which yields the same
    term set as absorbing once at the end but keeps intermediate sizes small.
    """
    return _sfe_cached(f, lattice, cap or current_term_cap())


def minimal_satisfaction_sets(f: Formula, lattice: Lattice) -> list:
    """``(varset, weight)`` pairs of the simplest final expansion."""
    return [(t.variables, t.coefficient) for t in simplest_final_expansion(f, lattice)]


def normalize(f: Formula, lattice: Lattice) -> Formula:
    """The simplest final expansion as a formula."""
    return simplest_final_expansion(f, lattice).to_formula(lattice)


def equivalent(f1: Formula, f2: Formula, lattice: Lattice) -> bool:
    """Do the two formulas take the same value under every assignment?

    On chains the simplest final expansion is canonical, so comparing term
    sets decides equivalence.  On product lattices two different irredundant
    expansions may denote the same function, so a mismatch there is settled
    by enumerating assignments.
    """
    s1 = simplest_final_expansion(f1, lattice)
    s2 = simplest_final_expansion(f2, lattice)
    if s1 == s2:
        return True
    if lattice.is_chain:
        return False
    return equivalent_by_enumeration(f1, f2, lattice)


def equivalent_by_enumeration(f1: Formula, f2: Formula, lattice: Lattice) -> bool:
    xs = sorted(variables(f1) | variables(f2))
    for k in range(len(xs) + 1):
        for ys in combinations(xs, k):
            ys = frozenset(ys)
            if evaluate(f1, ys, lattice) != evaluate(f2, ys, lattice):
                return False
    return True


def dual(f: Formula, lattice: Lattice) -> Formula:
    """Swap conjunction and disjunction, negate constants, keep variables."""
    if isinstance(f, BoolConst):
        return BoolConst(not f.value)
    if isinstance(f, Const):
        return Const(lattice.negate(f.value))
    if isinstance(f, Var):
        return f
    kind = Or if isinstance(f, And) else And
    return kind(tuple(dual(a, lattice) for a in f.args))


def release(f: Formula, rank: int, name: Callable[[str, int], str]) -> Formula:
    """Replace each variable ``q`` by the disjunction of ``name(q, i)`` for ``i <= rank``."""
    return substitute(f, lambda q: disj(*(Var(name(q, i)) for i in range(1, rank + 1))))
