"""Recompute the bundled worked examples and compare with their known values."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr
from importlib.resources import files

from . import formula as fm
from . import transforms as tr
from .automata import LassoWord, is_weak
from .evaluation import brute_force_eval_aba, eval_aba_lasso, eval_nba_lasso
from .textformat import parse_automaton


def bundled(name: str):
    """Load one of the automata shipped in ``fuzzyaba/data``."""
    text = files("fuzzyaba").joinpath("data", name).read_text(encoding="utf-8")
    return parse_automaton(text, name)


@dataclass(frozen=True)
class Check:
    label: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual

    def line(self) -> str:
        status = "ok  " if self.ok else "FAIL"
        return f"{status} {self.label}: expected {_show(self.expected)}, got {_show(self.actual)}"


def _show(x):
    if isinstance(x, Fr):
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, (set, frozenset)):
        return "{" + ", ".join(sorted(_show(v) for v in x)) + "}"
    if isinstance(x, (list, tuple)):
        return "[" + ", ".join(_show(v) for v in x) + "]"
    return str(x)


def _w(prefix, period):
    return LassoWord.parse(prefix, period)


def ex3_5():
    a = bundled("ex3_5.aut")
    w = _w("a", "a b")
    runs: list = []
    best = brute_force_eval_aba(a, w, record=runs)
    return [
        Check("L(a(ab)^w) via pair construction", Fr(3, 10), eval_aba_lasso(a, w, "pipeline")),
        Check("L(a(ab)^w) via acceptance games", Fr(3, 10), eval_aba_lasso(a, w, "game")),
        Check("L(a(ab)^w) by run enumeration", Fr(3, 10), best),
        Check("run weights", {Fr(1, 5), Fr(3, 10)}, set(runs)),
    ]


EX6_1_WORDS = [("a a", "b", Fr(3, 5)), ("a", "b", Fr(3, 5)), ("", "b", Fr(1, 2)),
               ("b", "a", Fr(3, 10))]


def ex6_1():
    a = bundled("ex6_1.aut")
    lat = a.lattice
    checks = []
    for prefix, period, want in EX6_1_WORDS:
        w = _w(prefix, period)
        checks.append(Check(f"L({w}) direct", want, eval_aba_lasso(a, w, "game")))
        checks.append(Check(f"L({w}) pipeline", want, eval_aba_lasso(a, w, "pipeline")))
    a1 = tr.crisp_initial(a)
    q0 = a1.initial_state()
    checks.append(Check("crisp-initial delta(q0', a)", "0.6 & q1",
                        fm.render(a1.transition(q0, "a"), lat)))
    a2 = tr.crisp_final(a1)
    checks.append(Check("crisp-final state count", 16, len(a2.states)))
    checks.append(Check("crisp-final initial weights",
                        [Fr(1), Fr(2, 5), Fr(4, 5), Fr(2, 5)],
                        [a2.init(tr.copy_name(q0, k)) for k in range(1, 5)]))
    checks.append(Check("crisp-final final states", {"q1@2", "q2@3", "q1@4", "q2@4"},
                        set(a2.final)))
    n = tr.aba_to_nba(a2)
    first = set()
    for k in (3, 4):
        start = tr.pair_name([tr.copy_name(q0, k)], [])
        for s in a.alphabet:
            first.update(n.edges(start, s).values())
    checks.append(Check("first-edge weights from copies 3 and 4", {Fr(3, 5), Fr(1, 2), Fr(3, 10)},
                        first))
    for prefix, period, want in EX6_1_WORDS:
        w = _w(prefix, period)
        checks.append(Check(f"NBA L({w})", want, eval_nba_lasso(n, w)))
    return checks


def ex6_2():
    a = tr.crisp_initial(bundled("ex6_1.aut"))
    lat = a.lattice
    d = tr.dualize(a)
    q0 = a.initial_state()
    checks = [
        Check("dual final weights", [Fr(1), Fr(1), Fr(3, 5), Fr(1, 5)],
              [d.fin(q) for q in (q0, "q0", "q1", "q2")]),
        Check("dual delta(q0', a)", "0.4 | q1", fm.render(d.transition(q0, "a"), lat)),
        Check("dual delta(q0', b) (0.7, not 0.3)",
              True, fm.equivalent(d.transition(q0, "b"), fm.parse("(0.5 | q2) & 0.7", lat), lat)),
    ]
    for prefix, period, want in [("a a", "b", Fr(2, 5)), ("a", "b", Fr(2, 5)), ("", "b", Fr(1, 2)),
                                 ("b", "a", Fr(7, 10)), ("a b a", "a", Fr(1))]:
        w = _w(prefix, period)
        checks.append(Check(f"dual L({w})", want, eval_aba_lasso(d, w, "game")))
    return checks


def ex6_3():
    a = bundled("ex6_3.aut")
    b = tr.normalize_cobuchi(a)
    weak = tr.cobuchi_to_weak(a)
    lat = a.lattice
    q0 = b.initial_state()
    top = 2 * len(b.states)
    consts = [c for vs, c in fm.minimal_satisfaction_sets(
        weak.transition(tr.rank_name(q0, top), "b"), lat) if not vs]
    checks = [
        Check("normalized state count", 9, len(b.states)),
        Check("weak state count", 162, len(weak.states)),
        Check("weak automaton is weak", True, is_weak(weak)),
        Check("constant term of delta((q0', 18), b)", [Fr(3, 10)], consts),
    ]
    for prefix, period, want in [("", "a", Fr(2, 5)), ("b", "a", Fr(2, 5)), ("b b", "a", Fr(3, 10))]:
        w = _w(prefix, period)
        checks.append(Check(f"co-Büchi L({w})", want, eval_aba_lasso(a, w, "game")))
        checks.append(Check(f"weak L({w})", want, eval_aba_lasso(weak, w, "game")))
    return checks


EXAMPLES = {"ex3.5": ex3_5, "ex6.1": ex6_1, "ex6.2": ex6_2, "ex6.3": ex6_3}
