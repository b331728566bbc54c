"""Language-preserving constructions on fuzzy automata."""

from __future__ import annotations

from collections import deque
from itertools import combinations

from . import formula as fm
from .automata import Acceptance, AutomatonError, FuzzyABA, FuzzyNBA, WeakPartition
from .lattice import NegationUnavailable
from .textformat import natural_key

FRESH_PREFIX = "_"


def fresh_name(base: str, taken) -> str:
    """A name in the reserved ``_`` namespace that is not in ``taken``."""
    taken = set(taken)
    name = FRESH_PREFIX + base
    k = 1
    while name in taken:
        name = f"{FRESH_PREFIX}{base}{k}"
        k += 1
    return name


def copy_name(q: str, k: int) -> str:
    return f"{q}@{k}"


def pair_name(u, v) -> str:
    def show(s):
        return ",".join(sorted(s, key=natural_key))
    return f"pair{{U=[{show(u)}],V=[{show(v)}]}}"


def rank_name(q: str, i: int) -> str:
    return f"rank({q},{i})"


def _store(f: fm.Formula, lattice) -> fm.Formula:
    return fm.normalize(f, lattice)


def rename_states(a: FuzzyABA, name) -> FuzzyABA:
    """Apply ``name`` to every state; weak block names are renamed the same way."""
    delta = {(name(q), s): fm.rename(f, name) for (q, s), f in a.delta.items()}
    weak = None
    if a.weak is not None:
        weak = WeakPartition(
            {name(b): frozenset(name(q) for q in qs) for b, qs in a.weak.blocks.items()},
            frozenset((name(lo), name(hi)) for lo, hi in a.weak.order))
    return FuzzyABA(a.lattice, tuple(name(q) for q in a.states), a.alphabet, delta,
                    {name(q): v for q, v in a.initial.items()},
                    {name(q): v for q, v in a.final.items()}, a.acceptance, weak)


def _check_compatible(a1, a2):
    if a1.lattice != a2.lattice:
        raise AutomatonError("automata use different lattices")
    if set(a1.alphabet) != set(a2.alphabet):
        raise AutomatonError("automata use different alphabets")
    if a1.acceptance is not a2.acceptance:
        raise AutomatonError("automata use different acceptance conditions")


def _merge(parts, lattice, alphabet, acceptance) -> FuzzyABA:
    states, delta, initial, final = [], {}, {}, {}
    blocks, order = {}, set()
    weak_ok = all(p.weak is not None for p in parts)
    for p in parts:
        states.extend(p.states)
        delta.update(p.delta)
        initial.update(p.initial)
        final.update(p.final)
        if weak_ok:
            blocks.update(p.weak.blocks)
            order |= p.weak.order
    weak = WeakPartition(blocks, frozenset(order)) if weak_ok else None
    return FuzzyABA(lattice, tuple(states), alphabet, delta, initial, final, acceptance, weak)


def _with_top_block(weak: WeakPartition | None, block: str, state: str) -> WeakPartition | None:
    """Add ``state`` as a singleton block above every existing block."""
    if weak is None:
        return None
    blocks = dict(weak.blocks)
    blocks[block] = frozenset([state])
    order = set(weak.order) | {(b, block) for b in weak.blocks}
    return WeakPartition(blocks, frozenset(order))


# --- constructions -------------------------------------------------------------

def nba_to_aba(n: FuzzyNBA) -> FuzzyABA:
    lat = n.lattice
    delta = {}
    for (q, s), row in n.delta.items():
        parts = [fm.Var(t) if w == lat.top else fm.And((fm.Const(w), fm.Var(t)))
                 for t, w in row.items()]
        delta[q, s] = _store(fm.disj(*parts), lat)
    return FuzzyABA(lat, n.states, n.alphabet, delta, n.initial, n.final, Acceptance.BUCHI)


def crisp_initial(a: FuzzyABA) -> FuzzyABA:
    """Add a fresh state carrying the whole initial distribution."""
    lat = a.lattice
    q0 = fresh_name("init", a.states)
    delta = dict(a.delta)
    for s in a.alphabet:
        parts = []
        for q in a.states:
            w = a.init(q)
            if w == lat.bot:
                continue
            f = a.transition(q, s)
            parts.append(f if w == lat.top else fm.And((fm.Const(w), f)))
        delta[q0, s] = _store(fm.disj(*parts), lat)
    block = fresh_name("init", a.weak.blocks) if a.weak is not None else None
    return FuzzyABA(lat, (q0,) + a.states, a.alphabet, delta, {q0: lat.top}, a.final,
                    a.acceptance, _with_top_block(a.weak, block, q0))


def crisp_final(a: FuzzyABA) -> FuzzyABA:
    """Split a Büchi automaton with fuzzy final weights into crisp-final copies.

    Copy ``k`` corresponds to a set ``P = ker(F) + T`` with ``T`` a subset of
    the states whose final weight lies strictly between bot and top.  Its
    final set is ``P`` and each initial weight is scaled by the meet of ``F``
    over ``T``.  Copies are numbered by subset size, then by state order.
    """
    if a.acceptance is not Acceptance.BUCHI:
        raise AutomatonError("crisp-final construction needs Büchi acceptance")
    lat = a.lattice
    if a.has_crisp_final():
        return a
    ker = [q for q in a.states if a.fin(q) == lat.top]
    middle = [q for q in a.states if a.fin(q) not in (lat.bot, lat.top)]
    copies = []
    index = 0
    for size in range(len(middle) + 1):
        for chosen in combinations(middle, size):
            index += 1
            weight = lat.meet_all(a.fin(q) for q in chosen)
            keep = set(ker) | set(chosen)
            part = rename_states(a, lambda q, k=index: copy_name(q, k))
            initial = {copy_name(q, index): lat.meet(v, weight) for q, v in a.initial.items()}
            final = {copy_name(q, index): lat.top for q in a.states if q in keep}
            copies.append(part.replace(initial=initial, final=final))
    return _merge(copies, lat, a.alphabet, Acceptance.BUCHI)


def union(a1: FuzzyABA, a2: FuzzyABA) -> FuzzyABA:
    _check_compatible(a1, a2)
    parts = [rename_states(a1, lambda q: copy_name(q, 1)),
             rename_states(a2, lambda q: copy_name(q, 2))]
    return _merge(parts, a1.lattice, a1.alphabet, a1.acceptance)


def meet(a1: FuzzyABA, a2: FuzzyABA) -> FuzzyABA:
    _check_compatible(a1, a2)
    lat = a1.lattice
    if not a1.has_crisp_initial():
        a1 = crisp_initial(a1)
    if not a2.has_crisp_initial():
        a2 = crisp_initial(a2)
    p1 = rename_states(a1, lambda q: copy_name(q, 1))
    p2 = rename_states(a2, lambda q: copy_name(q, 2))
    merged = _merge([p1, p2], lat, a1.alphabet, a1.acceptance)
    r1, r2 = p1.initial_state(), p2.initial_state()
    q0 = fresh_name("meet", merged.states)
    delta = dict(merged.delta)
    for s in a1.alphabet:
        delta[q0, s] = _store(fm.And((p1.transition(r1, s), p2.transition(r2, s))), lat)
    weak = merged.weak
    if weak is not None:
        weak = _with_top_block(weak, fresh_name("meet", weak.blocks), q0)
    return FuzzyABA(lat, (q0,) + merged.states, a1.alphabet, delta, {q0: lat.top},
                    merged.final, a1.acceptance, weak)


def dualize(a: FuzzyABA) -> FuzzyABA:
    """Dual automaton: dual formulas, negated final weights, flipped acceptance.

    A fuzzy initial distribution is first folded into a fresh crisp initial
    state, since the dual of a disjunction over initial states is not a
    disjunction.
    """
    lat = a.lattice
    if not lat.has_negation:
        raise NegationUnavailable(lat)
    if not a.has_crisp_initial():
        a = crisp_initial(a)
    delta = {(q, s): _store(fm.dual(a.transition(q, s), lat), lat)
             for q in a.states for s in a.alphabet}
    final = {q: lat.negate(a.fin(q)) for q in a.states}
    return FuzzyABA(lat, a.states, a.alphabet, delta, a.initial, final,
                    a.acceptance.flipped(), a.weak)


def pair_successors(a: FuzzyABA, u, v, symbol) -> dict:
    """Weighted successors of the pair state ``(u, v)`` on ``symbol``.

    Every state of ``u`` independently picks one term of its own simplest
    final expansion; the weight of a successor is the join, over all choice
    families producing it, of the meet of the chosen coefficients.
    """
    lat = a.lattice
    finals = {q for q in a.states if a.fin(q) == lat.top}
    table = {(frozenset(), frozenset()): lat.top}
    for t in sorted(u, key=natural_key):
        options = a.terms(t, symbol)
        owes = t in v
        nxt: dict = {}
        for (uu, vv), acc in table.items():
            for targets, w in options:
                c = lat.meet(acc, w)
                if c == lat.bot:
                    continue
                key = (uu | targets, vv | targets if owes else vv)
                prev = nxt.get(key)
                nxt[key] = c if prev is None else lat.join(prev, c)
        table = nxt
        if not table:
            return {}
    out: dict = {}
    for (uu, vv), w in table.items():
        key = (uu, (vv if v else uu) - finals)
        prev = out.get(key)
        out[key] = w if prev is None else lat.join(prev, w)
    return out


def aba_to_nba(a: FuzzyABA) -> FuzzyNBA:
    """Pair construction for Büchi automata with crisp final states."""
    if a.acceptance is not Acceptance.BUCHI:
        raise AutomatonError("pair construction needs Büchi acceptance")
    if not a.has_crisp_final():
        raise AutomatonError("pair construction needs crisp final states")
    lat = a.lattice
    start = {(frozenset([q]), frozenset()): w for q, w in a.initial.items()}
    seen = set(start)
    queue = deque(sorted(start, key=lambda p: pair_name(*p)))
    edges = {}
    while queue:
        u, v = queue.popleft()
        src = pair_name(u, v)
        for s in a.alphabet:
            row = {}
            for (u2, v2), w in sorted(pair_successors(a, u, v, s).items(),
                                      key=lambda kv: pair_name(*kv[0])):
                row[pair_name(u2, v2)] = w
                if (u2, v2) not in seen:
                    seen.add((u2, v2))
                    queue.append((u2, v2))
            if row:
                edges[src, s] = row
    states = tuple(sorted((pair_name(*p) for p in seen), key=natural_key))
    initial = {pair_name(*p): w for p, w in start.items()}
    final = {pair_name(u, v): lat.top for u, v in seen if not v}
    return FuzzyNBA(lat, states, a.alphabet, edges, initial, final)


def normalize_cobuchi(a: FuzzyABA) -> FuzzyABA:
    """Equivalent co-Büchi automaton with crisp initial and crisp final states."""
    if a.acceptance is not Acceptance.COBUCHI:
        raise AutomatonError("expected a co-Büchi automaton")
    if a.has_crisp_initial() and a.has_crisp_final():
        return a
    if not a.lattice.has_negation:
        raise NegationUnavailable(a.lattice)
    b = crisp_final(dualize(a))
    if not b.has_crisp_initial():
        b = crisp_initial(b)
    return dualize(b)


def _released(sf: fm.StandardForm, rank: int, lattice, cap: int) -> fm.Formula:
    """Simplest final expansion of ``release(theta, rank)`` built term by term.

    Distinct rank choices for the same term have equal-size varsets, and the
    input is already irredundant, so no absorption or merging can happen.
    """
    count = sum(rank ** len(t.variables) for t in sf)
    if count > cap:
        raise fm.TermCapExceeded(cap)
    table = {}
    for coef, vs in sf:
        names = sorted(vs)
        partial = [frozenset()]
        for q in names:
            partial = [p | {rank_name(q, i)} for p in partial for i in range(1, rank + 1)]
        for p in partial:
            table[p] = coef
    return fm.StandardForm.from_map(table, lattice).to_formula(lattice)


def cobuchi_to_weak(a: FuzzyABA) -> FuzzyABA:
    """Rank construction: co-Büchi automaton to an equivalent weak Büchi automaton."""
    b = normalize_cobuchi(a)
    lat = b.lattice
    n = len(b.states)
    top_rank = 2 * n
    cap = fm.current_term_cap()
    states, delta, final, blocks = [], {}, {}, {}
    for i in range(1, top_rank + 1):
        blocks[f"rank{i}"] = frozenset(rank_name(q, i) for q in b.states)
        for q in b.states:
            name = rank_name(q, i)
            states.append(name)
            if i % 2 == 1:
                final[name] = lat.top
            if b.fin(q) == lat.top or i % 2 == 0:
                for s in b.alphabet:
                    sf = fm.simplest_final_expansion(b.transition(q, s), lat)
                    if len(sf):
                        delta[name, s] = _released(sf, i, lat, cap)
    order = frozenset((f"rank{i}", f"rank{i + 1}") for i in range(1, top_rank))
    q0 = b.initial_state()
    return FuzzyABA(lat, tuple(states), b.alphabet, delta, {rank_name(q0, top_rank): lat.top},
                    final, Acceptance.BUCHI, WeakPartition(blocks, order))
