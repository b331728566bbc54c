"""Emptiness, universality and implication values.

The supremum of a fuzzy language is computed threshold by threshold.  For
each join-irreducible ``j`` of the weight sublattice the Boolean ``j``-cut
of the alternating automaton is turned into a nondeterministic Büchi
automaton on the fly (pair construction for Büchi cuts, level rankings for
co-Büchi cuts) and tested for nonemptiness.  Several automata are combined
by a synchronous product with one acceptance set per factor, which decides
whether some word reaches ``j`` in all of them at once.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product

from . import transforms as tr
from .automata import Acceptance, AutomatonError, FuzzyABA, LassoWord
from .evaluation import eval_aba_lasso, thresholds
from .graphs import accepting_lasso
from .lattice import Lattice, NegationUnavailable


class Relation(str, Enum):
    LT = "<"
    LE = "<="
    EQ = "="
    GE = ">="
    GT = ">"

    def flipped(self) -> "Relation":
        return _FLIP[self]

    @classmethod
    def parse(cls, text: str) -> "Relation":
        aliases = {"lt": "<", "le": "<=", "eq": "=", "==": "=", "ge": ">=", "gt": ">",
                   "≤": "<=", "≥": ">="}
        return cls(aliases.get(text, text))


_FLIP = {Relation.LT: Relation.GT, Relation.LE: Relation.GE, Relation.EQ: Relation.EQ,
         Relation.GE: Relation.LE, Relation.GT: Relation.LT}


def compare(x, rel: Relation, l, lattice: Lattice) -> bool:
    rel = Relation(rel)
    if rel is Relation.EQ:
        return x == l
    if rel is Relation.LE:
        return lattice.leq(x, l)
    if rel is Relation.GE:
        return lattice.leq(l, x)
    if rel is Relation.LT:
        return x != l and lattice.leq(x, l)
    return x != l and lattice.leq(l, x)


@dataclass(frozen=True)
class Verdict:
    """A value together with a lasso attaining it.

    ``witness`` is ``None`` when no single lasso attains the value.  On
    chains this happens only for a bottom supremum (a top infimum); on
    product lattices the extremum may combine values of different words.
    """

    value: object
    witness: LassoWord | None


# --- Boolean cuts ---------------------------------------------------------------

@dataclass
class _Cut:
    states: tuple
    initial: tuple
    good: frozenset
    terms: dict
    buchi: bool

    @classmethod
    def of(cls, a: FuzzyABA, j) -> "_Cut":
        leq = a.lattice.leq
        terms = {}
        for q in a.states:
            for s in a.alphabet:
                kept = [frozenset(ts) for ts, w in a.terms(q, s) if leq(j, w)]
                if kept:
                    terms[q, s] = kept
        return cls(a.states, tuple(q for q in a.states if leq(j, a.init(q))),
                   frozenset(q for q in a.states if leq(j, a.fin(q))), terms,
                   a.acceptance is Acceptance.BUCHI)


class _PairNBA:
    """Breakpoint construction for a Boolean Büchi cut; accepting when ``V`` is empty."""

    def __init__(self, cut: _Cut):
        self.cut = cut

    def initial(self):
        return [(frozenset([q]), frozenset()) for q in self.cut.initial]

    def step(self, state, symbol):
        u, v = state
        table = {(frozenset(), frozenset())}
        for t in u:
            opts = self.cut.terms.get((t, symbol))
            if not opts:
                return []
            owes = t in v
            table = {(uu | ts, vv | ts if owes else vv) for uu, vv in table for ts in opts}
        good = self.cut.good
        return sorted({(uu, (vv if v else uu) - good) for uu, vv in table},
                      key=lambda p: (sorted(p[0]), sorted(p[1])))

    def accepting(self, state) -> bool:
        return not state[1]


class _RankNBA:
    """Level-ranking construction for a Boolean co-Büchi cut.

    A state is a ranking of the current level (odd ranks only on good
    states) plus the set of even-ranked states still owing a descent.
    """

    def __init__(self, cut: _Cut):
        self.cut = cut
        self.max_rank = 2 * len(cut.states)

    def initial(self):
        return [(((q, self.max_rank),), frozenset()) for q in self.cut.initial]

    def step(self, state, symbol):
        ranking, owing = state
        families = []
        for t, _ in ranking:
            opts = self.cut.terms.get((t, symbol))
            if not opts:
                return []
            families.append(opts)
        out = set()
        good = self.cut.good
        for choice in product(*families):
            bound: dict = {}
            from_owing: set = set()
            for (t, r), ts in zip(ranking, choice):
                for x in ts:
                    bound[x] = min(bound.get(x, r), r)
                    if t in owing:
                        from_owing.add(x)
            targets = sorted(bound)
            ranges = [[r for r in range(bound[x] + 1) if r % 2 == 0 or x in good]
                      for x in targets]
            for ranks in product(*ranges):
                new = tuple(zip(targets, ranks))
                even = {x for x, r in new if r % 2 == 0}
                nxt_owing = frozenset(even & from_owing) if owing else frozenset(even)
                out.add((new, nxt_owing))
        return sorted(out, key=lambda s: (s[0], sorted(s[1])))

    def accepting(self, state) -> bool:
        return not state[1]


def _nba_for(cut: _Cut):
    return _PairNBA(cut) if cut.buchi else _RankNBA(cut)


def _product_lasso(machines, alphabet):
    """Lasso accepted by all ``machines`` simultaneously, or ``None``."""
    roots = list(product(*(m.initial() for m in machines)))

    def successors(node):
        out = []
        for s in alphabet:
            for combo in product(*(m.step(part, s) for m, part in zip(machines, node))):
                out.append((s, combo))
        return out

    def marks(node):
        return tuple(m.accepting(part) for m, part in zip(machines, node))

    found = accepting_lasso(roots, successors, marks)
    if found is None:
        return None
    stem, cycle = found
    return LassoWord(tuple(stem), tuple(cycle)).normalized()


def _conjunction_value(automata) -> Verdict:
    """Supremum over words of the meet of the languages of ``automata``."""
    first = automata[0]
    lat = first.lattice
    for other in automata[1:]:
        if other.lattice != lat or set(other.alphabet) != set(first.alphabet):
            raise AutomatonError("automata use different lattices or alphabets")
    alphabet = sorted(first.alphabet)
    weights = set()
    for a in automata:
        weights |= a.weights()
    cuts = thresholds(lat, weights)
    if lat.is_chain:
        cuts = sorted(cuts, reverse=True)
    value = lat.bot
    witnesses = []
    for j in cuts:
        if lat.leq(j, value):
            continue
        machines = [_nba_for(_Cut.of(a, j)) for a in automata]
        lasso = _product_lasso(machines, alphabet)
        if lasso is not None:
            value = lat.join(value, j)
            witnesses.append(lasso)
            if lat.is_chain:
                break
    for lasso in witnesses:
        if _attains(automata, lasso, value):
            return Verdict(value, lasso)
    if len(witnesses) < 2:
        return Verdict(value, None)
    # on non-chains the join may need one word passing every maximal cut at once
    accepted = [j for j in cuts if lat.leq(j, value)]
    top_cuts = [j for j in accepted if not any(k != j and lat.leq(j, k) for k in accepted)]
    machines = [_nba_for(_Cut.of(a, j)) for j in top_cuts for a in automata]
    lasso = _product_lasso(machines, alphabet)
    if lasso is not None and _attains(automata, lasso, value):
        return Verdict(value, lasso)
    return Verdict(value, None)


def _attains(automata, lasso, value) -> bool:
    lat = automata[0].lattice
    return lat.meet_all(eval_aba_lasso(a, lasso, "game") for a in automata) == value


def e_val(a: FuzzyABA) -> Verdict:
    """Supremum of the fuzzy language over all words, with a witness lasso."""
    return _conjunction_value([a])


def u_val(a: FuzzyABA) -> Verdict:
    """Infimum of the fuzzy language over all words, with a witness lasso."""
    lat = a.lattice
    if not lat.has_negation:
        raise NegationUnavailable(lat)
    v = e_val(tr.dualize(a))
    return Verdict(lat.negate(v.value), v.witness)


def imp_val(a1: FuzzyABA, a2: FuzzyABA) -> Verdict:
    """Infimum over words of ``c(L1(w)) | L2(w)``, with a witness lasso."""
    lat = a1.lattice
    if a2.lattice != lat or set(a1.alphabet) != set(a2.alphabet):
        raise AutomatonError("automata use different lattices or alphabets")
    if not lat.has_negation:
        raise NegationUnavailable(lat)
    v = _conjunction_value([a1, tr.dualize(a2)])
    return Verdict(lat.negate(v.value), v.witness)
