"""Exact evaluation of fuzzy automata on lasso words.

Every value is computed through threshold cuts.  The weights of an
automaton generate a finite distributive sublattice; for a
join-irreducible ``j`` of that sublattice, ``L(w) >= j`` holds exactly
when the Boolean automaton that keeps only the items of weight at least
``j`` accepts ``w``.  The value is the join of the accepting thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from . import transforms as tr
from .automata import Acceptance, FuzzyABA, FuzzyNBA, LassoWord
from .graphs import has_accepting_cycle
from .lattice import Lattice

# crisp-final copies beyond this many states are evaluated with the game solver
PIPELINE_MAX_STATES = 64


class BoundsExceeded(ValueError):
    pass


def thresholds(lattice: Lattice, weights) -> list:
    """Join-irreducibles of the sublattice generated by ``weights``."""
    return lattice.join_irreducibles(lattice.closure(weights))


def automaton_thresholds(a) -> list:
    """Thresholds of an automaton, memoized on the automaton object."""
    cache = a._memo
    if "thresholds" not in cache:
        cache["thresholds"] = thresholds(a.lattice, a.weights())
    return cache["thresholds"]


def _check_word(a, w: LassoWord):
    extra = w.symbols() - set(a.alphabet)
    if extra:
        raise ValueError(f"symbols outside the alphabet: {sorted(extra)}")


def _join_over(lattice, cuts, accepts) -> object:
    """Join of the accepting cuts; on chains only the top accepting cut matters."""
    if lattice.is_chain:
        for j in sorted(cuts, reverse=True):
            if accepts(j):
                return j
        return lattice.bot
    return lattice.join_all(j for j in cuts if accepts(j))


# --- NBA ----------------------------------------------------------------------

@dataclass(frozen=True)
class CutNBA:
    """Boolean projection of a fuzzy NBA at threshold ``j``."""

    threshold: object
    initial: frozenset
    final: frozenset
    succ: dict

    @classmethod
    def of(cls, n: FuzzyNBA, j) -> "CutNBA":
        leq = n.lattice.leq
        succ = {}
        for key, row in n.delta.items():
            kept = tuple(t for t, w in row.items() if leq(j, w))
            if kept:
                succ[key] = kept
        return cls(j, frozenset(q for q, v in n.initial.items() if leq(j, v)),
                   frozenset(q for q, v in n.final.items() if leq(j, v)), succ)

    def accepts(self, w: LassoWord) -> bool:
        roots = [(q, 0) for q in sorted(self.initial)]

        def successors(node):
            q, p = node
            nxt = w.successor(p)
            return [(None, (t, nxt)) for t in self.succ.get((q, w.symbol(p)), ())]

        return has_accepting_cycle(roots, successors, lambda n: n[0] in self.final)


def eval_nba_lasso(n: FuzzyNBA, w: LassoWord):
    _check_word(n, w)
    cuts = automaton_thresholds(n)
    return _join_over(n.lattice, cuts, lambda j: CutNBA.of(n, j).accepts(w))


# --- ABA: construction pipeline --------------------------------------------------

@lru_cache(maxsize=256)
def pipeline_nba(a: FuzzyABA) -> FuzzyNBA:
    """The NBA obtained by crisp-initial, crisp-final and pair constructions."""
    if a.acceptance is Acceptance.COBUCHI:
        a = tr.cobuchi_to_weak(a)
    if not a.has_crisp_initial():
        a = tr.crisp_initial(a)
    return tr.aba_to_nba(tr.crisp_final(a))


def _pipeline_size(a: FuzzyABA) -> int:
    lat = a.lattice
    k = sum(1 for v in a.final.values() if v != lat.top)
    return (len(a.states) + (0 if a.has_crisp_initial() else 1)) * 2 ** k


# --- ABA: acceptance games on the lasso arena ---------------------------------------

def _arena(a: FuzzyABA, w: LassoWord):
    """Nodes ``(q, p)`` reachable from position 0, each with its weighted terms."""
    lat = a.lattice
    roots = [(q, 0) for q in a.states if a.init(q) != lat.bot]
    moves = {}
    stack = list(roots)
    seen = set(roots)
    while stack:
        node = stack.pop()
        q, p = node
        nxt = w.successor(p)
        opts = []
        for targets, weight in a.terms(q, w.symbol(p)):
            succ = tuple((t, nxt) for t in sorted(targets))
            opts.append((succ, weight))
            for s in succ:
                if s not in seen:
                    seen.add(s)
                    stack.append(s)
        moves[node] = opts
    return moves


class _CutGame:
    """Boolean acceptance game at one threshold.

    Each node ``(state, position)`` owns the options whose coefficient
    reaches the threshold; an option is a tuple of successor nodes that
    must all be winning.  Fixpoints are computed with successor counters.
    """

    def __init__(self, opts: dict, good: set):
        self.nodes = list(opts)
        self.opts = opts
        self.good = good
        self.preds: dict = {n: [] for n in self.nodes}
        for n, opts in self.opts.items():
            for k, succ in enumerate(opts):
                for s in succ:
                    self.preds[s].append((n, k))

    def cpre(self, target) -> set:
        return {n for n, opts in self.opts.items()
                if any(all(s in target for s in o) for o in opts)}

    def attractor(self, seed) -> set:
        """Least superset of ``seed`` closed under having an option inside it."""
        inside = set(seed)
        missing = {}
        queue = list(inside)
        for n, opts in self.opts.items():
            for k, succ in enumerate(opts):
                missing[n, k] = len(succ)
                if not succ and n not in inside:
                    inside.add(n)
                    queue.append(n)
        while queue:
            s = queue.pop()
            for key in self.preds[s]:
                missing[key] -= 1
                n = key[0]
                if missing[key] == 0 and n not in inside:
                    inside.add(n)
                    queue.append(n)
        return inside

    def safe(self, escape) -> set:
        """Greatest set of nodes that are in ``escape`` or good with an option inside the set."""
        region = set(escape) | self.good
        outside = {}
        alive = {}
        for n, opts in self.opts.items():
            count = 0
            for k, succ in enumerate(opts):
                c = sum(1 for s in succ if s not in region)
                outside[n, k] = c
                count += c == 0
            alive[n] = count
        queue = [n for n in region if n not in escape and alive[n] == 0]
        for n in queue:
            region.discard(n)
        while queue:
            s = queue.pop()
            for key in self.preds[s]:
                outside[key] += 1
                if outside[key] == 1:
                    n = key[0]
                    alive[n] -= 1
                    if alive[n] == 0 and n in region and n not in escape:
                        region.discard(n)
                        queue.append(n)
        return region

    def solve(self, buchi: bool) -> set:
        if buchi:
            z = set(self.nodes)
            while True:
                y = self.attractor(self.cpre(z) & self.good)
                if y == z:
                    return z
                z = y
        y: set = set()
        while True:
            z = self.safe(self.cpre(y))
            if z == y:
                return y
            y = z


def eval_aba_game(a: FuzzyABA, w: LassoWord):
    """Evaluate by solving a Büchi or co-Büchi game per threshold."""
    _check_word(a, w)
    lat = a.lattice
    moves = _arena(a, w)
    cuts = automaton_thresholds(a)
    # intern weights so that each cut is a set of small integers
    ids: dict = {}
    arena = {n: [(succ, ids.setdefault(wt, len(ids))) for succ, wt in opts]
             for n, opts in moves.items()}
    fin = {n: ids.setdefault(a.fin(n[0]), len(ids)) for n in moves}
    buchi = a.acceptance is Acceptance.BUCHI

    def accepts(j):
        roots = [(q, 0) for q in a.states if lat.leq(j, a.init(q))]
        if not roots:
            return False
        above = {i for v, i in ids.items() if lat.leq(j, v)}
        opts = {n: [succ for succ, i in o if i in above] for n, o in arena.items()}
        good = {n for n, i in fin.items() if i in above}
        win = _CutGame(opts, good).solve(buchi)
        return any(r in win for r in roots)

    return _join_over(lat, cuts, accepts)


def eval_aba_lasso(a: FuzzyABA, w: LassoWord, method: str = "auto"):
    """Value of the word ``w`` in the fuzzy language of ``a``.

    ``method`` is ``"pipeline"`` (pair construction, then NBA evaluation),
    ``"game"`` (per-threshold acceptance games on the lasso arena),
    ``"dual"`` (negate the value of the dual automaton) or ``"auto"``,
    which uses the pipeline for small Büchi automata and the game otherwise.
    """
    _check_word(a, w)
    if method == "auto":
        small = a.acceptance is Acceptance.BUCHI and _pipeline_size(a) <= PIPELINE_MAX_STATES
        method = "pipeline" if small else "game"
    if method == "pipeline":
        return eval_nba_lasso(pipeline_nba(a), w)
    if method == "game":
        return eval_aba_game(a, w)
    if method == "dual":
        lat = a.lattice
        return lat.negate(eval_aba_game(tr.dualize(a), w))
    raise ValueError(f"unknown evaluation method {method!r}")


# --- brute-force oracle ------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    max_states: int = 4
    max_positions: int = 8
    max_nodes: int = 32


def brute_force_eval_aba(a: FuzzyABA, w: LassoWord, bounds: Bounds = Bounds(),
                         record: list | None = None):
    """Join, over position-uniform choice functions, of the induced run weights.

    A choice function fixes one minimal satisfying term at each node
    ``(state, position)``.  The weight of the induced run is the initial
    weight, the chosen coefficients, and a cycle term for every cycle
    reachable in the induced graph.  If ``record`` is a list, pruning is
    switched off and the nonzero weight of every choice function is appended.
    """
    _check_word(a, w)
    if len(a.states) > bounds.max_states:
        raise BoundsExceeded(f"{len(a.states)} states exceeds {bounds.max_states}")
    if len(w) > bounds.max_positions:
        raise BoundsExceeded(f"word of {len(w)} positions exceeds {bounds.max_positions}")
    lat = a.lattice
    buchi = a.acceptance is Acceptance.BUCHI
    best = lat.bot

    def options(node):
        q, p = node
        nxt = w.successor(p)
        opts = [(tuple((t, nxt) for t in sorted(ts)), wt) for ts, wt in a.terms(q, w.symbol(p))]
        # strongest coefficients first so good runs are found early
        return sorted(opts, key=lambda o: lat.sort_key(o[1]), reverse=True)

    def cycle_value(choice):
        g = nx.DiGraph()
        g.add_nodes_from(choice)
        g.add_edges_from((n, s) for n, succ in choice.items() for s in succ)
        value = lat.top
        if buchi:
            for cyc in nx.simple_cycles(g):
                value = lat.meet(value, lat.join_all(a.fin(q) for q, _ in cyc))
        else:
            for comp in nx.strongly_connected_components(g):
                n0 = next(iter(comp))
                if len(comp) > 1 or g.has_edge(n0, n0):
                    value = lat.meet(value, lat.meet_all(a.fin(q) for q, _ in comp))
        return value

    def search(order, idx, choice, value):
        nonlocal best
        if value == lat.bot or (record is None and lat.leq(value, best)):
            return
        if idx == len(order):
            total = lat.meet(value, cycle_value(choice))
            best = lat.join(best, total)
            if record is not None and total != lat.bot:
                record.append(total)
            return
        node = order[idx]
        for succ, wt in options(node):
            fresh = []
            for s in succ:
                if s not in choice and s not in fresh and s not in order:
                    fresh.append(s)
            if len(order) + len(fresh) > bounds.max_nodes:
                raise BoundsExceeded("run graph exceeds the node bound")
            order.extend(fresh)
            choice[node] = succ
            search(order, idx + 1, choice, lat.meet(value, wt))
            del choice[node]
            del order[len(order) - len(fresh):]

    for q in a.states:
        if a.init(q) != lat.bot:
            search([(q, 0)], 0, {}, a.init(q))
    return best
