"""Independent Boolean oracles and shared fixtures for the test suite.

Nothing here reuses the package's evaluators: the classical routines work
directly on formula trees with plain set fixpoints.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import chain, combinations

from fuzzyaba import formula as fm
from fuzzyaba.automata import Acceptance, LassoWord
from fuzzyaba.sampling import all_lassos

WORDS = all_lassos(("a", "b"), 3, 3)


def subsets(items):
    items = sorted(items)
    return [frozenset(c) for c in chain.from_iterable(combinations(items, k)
                                                      for k in range(len(items) + 1))]


def bool_value(f, true_vars) -> bool:
    if isinstance(f, fm.BoolConst):
        return f.value
    if isinstance(f, fm.Const):
        return f.value != 0
    if isinstance(f, fm.Var):
        return f.name in true_vars
    if isinstance(f, fm.And):
        return all(bool_value(g, true_vars) for g in f.args)
    return any(bool_value(g, true_vars) for g in f.args)


def bool_dual(f):
    if isinstance(f, fm.BoolConst):
        return fm.FALSE if f.value else fm.TRUE
    if isinstance(f, fm.Const):
        return fm.Const(1 - f.value)
    if isinstance(f, fm.Var):
        return f
    args = tuple(bool_dual(g) for g in f.args)
    return fm.Or(args) if isinstance(f, fm.And) else fm.And(args)


def models(f, states):
    """Every satisfying subset of ``states`` (not only the minimal ones)."""
    return [y for y in subsets(states) if bool_value(f, y)]


def classical_accepts(delta, states, initial, final, w: LassoWord, condition: str) -> bool:
    """Boolean alternating acceptance of a lasso by a two-player game.

    ``condition`` is ``"buchi"`` (visit ``final`` infinitely often),
    ``"cobuchi"`` (eventually stay in ``final``) or ``"finitely"``
    (visit ``final`` only finitely often).
    """
    positions = range(len(w))
    nodes = [(q, p) for q in states for p in positions]
    moves = {}
    for q, p in nodes:
        f = delta.get((q, w.symbol(p)), fm.FALSE)
        nxt = w.successor(p)
        moves[q, p] = [frozenset((t, nxt) for t in m) for m in models(f, states)]

    def cpre(target):
        return {n for n in nodes if any(m <= target for m in moves[n])}

    if condition == "finitely":
        good = {n for n in nodes if n[0] not in final}
        condition = "cobuchi"
    else:
        good = {n for n in nodes if n[0] in final}

    if condition == "buchi":
        z = set(nodes)
        while True:
            y = set()
            while True:
                y2 = (good & cpre(z)) | cpre(y)
                if y2 == y:
                    break
                y = y2
            if y == z:
                break
            z = y
        win = z
    else:
        y = set()
        while True:
            z = set(nodes)
            while True:
                z2 = (good & cpre(z)) | cpre(y)
                if z2 == z:
                    break
                z = z2
            if z == y:
                break
            y = z
        win = y
    return any((q, 0) in win for q in initial)


def mh_accepts(delta, states, initial, final, w: LassoWord) -> bool:
    """Miyano-Hayashi breakpoint construction, explored on the lasso directly."""
    def step(u, v, symbol):
        out = set()
        per_state = [models(delta.get((q, symbol), fm.FALSE), states) for q in sorted(u)]
        order = sorted(u)

        def go(i, uu, vv):
            if i == len(order):
                out.add((frozenset(uu), frozenset((vv if v else uu) - set(final))))
                return
            for m in per_state[i]:
                go(i + 1, uu | m, vv | m if order[i] in v else vv)

        go(0, frozenset(), frozenset())
        return out

    roots = {((frozenset([q]), frozenset()), 0) for q in initial}
    edges = {}
    stack = list(roots)
    seen = set(roots)
    while stack:
        node = stack.pop()
        (u, v), p = node
        succ = [(s, w.successor(p)) for s in step(u, v, w.symbol(p))]
        edges[node] = succ
        for s in succ:
            if s not in seen:
                seen.add(s)
                stack.append(s)

    def reaches(src, dst):
        todo, met = list(edges[src]), set()
        while todo:
            n = todo.pop()
            if n == dst:
                return True
            if n not in met:
                met.add(n)
                todo.extend(edges[n])
        return False

    return any(not node[0][1] and reaches(node, node) for node in seen)


def quarters():
    return [Fraction(k, 4) for k in range(5)]


def opposite(acceptance: Acceptance) -> Acceptance:
    return acceptance.flipped()
