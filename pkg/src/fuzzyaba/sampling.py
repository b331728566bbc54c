"""Random small automata and exhaustive lasso enumeration, for testing."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

from . import formula as fm
from .automata import Acceptance, FuzzyABA, FuzzyNBA, LassoWord
from .lattice import Chain, Lattice

FIVE_CHAIN = Chain(5, True)
QUARTERS = [Fraction(k, 4) for k in range(5)]


def all_lassos(alphabet, max_prefix: int = 3, max_period: int = 3, distinct: bool = True):
    """Every ``(u, v)`` with ``|u| <= max_prefix`` and ``1 <= |v| <= max_period``.

    With ``distinct`` only one representative per infinite word is kept.
    """
    seen = set()
    out = []
    for lu in range(max_prefix + 1):
        for u in product(alphabet, repeat=lu):
            for lv in range(1, max_period + 1):
                for v in product(alphabet, repeat=lv):
                    w = LassoWord(u, v)
                    if distinct:
                        key = w.normalized()
                        if key in seen:
                            continue
                        seen.add(key)
                    out.append(w)
    return out


def random_formula(rng: random.Random, states, lattice: Lattice, depth: int = 2,
                   values=None) -> fm.Formula:
    values = values or lattice.sample_values()
    nonzero = [v for v in values if v != lattice.bot]
    if depth == 0 or rng.random() < 0.3:
        roll = rng.random()
        if roll < 0.6:
            return fm.Var(rng.choice(states))
        if roll < 0.95:
            return fm.Const(rng.choice(nonzero))
        return fm.TRUE
    kind = fm.And if rng.random() < 0.5 else fm.Or
    width = rng.choice((2, 2, 3))
    return kind(tuple(random_formula(rng, states, lattice, depth - 1, values)
                      for _ in range(width)))


def random_aba(rng: random.Random, n_states: int = 3, alphabet=("a", "b"),
               lattice: Lattice = FIVE_CHAIN, acceptance=Acceptance.BUCHI,
               crisp_initial: bool = False, crisp_final: bool = False,
               p_false: float = 0.1, depth: int = 2) -> FuzzyABA:
    values = lattice.sample_values()
    nonzero = [v for v in values if v != lattice.bot]
    states = tuple(f"q{i}" for i in range(n_states))
    delta = {}
    for q in states:
        for s in alphabet:
            if rng.random() >= p_false:
                delta[q, s] = random_formula(rng, states, lattice, depth, values)
    if crisp_initial:
        initial = {states[0]: lattice.top}
    else:
        initial = {q: rng.choice(values) for q in states}
        if all(v == lattice.bot for v in initial.values()):
            initial[states[0]] = rng.choice(nonzero)
    if crisp_final:
        final = {q: rng.choice((lattice.bot, lattice.top)) for q in states}
    else:
        final = {q: rng.choice(values) for q in states}
    return FuzzyABA(lattice, states, alphabet, delta, initial, final, acceptance)


def random_nba(rng: random.Random, n_states: int = 3, alphabet=("a", "b"),
               lattice: Lattice = FIVE_CHAIN, density: float = 0.5) -> FuzzyNBA:
    values = lattice.sample_values()
    states = tuple(f"q{i}" for i in range(n_states))
    delta = {}
    for q in states:
        for s in alphabet:
            row = {t: rng.choice(values) for t in states if rng.random() < density}
            if row:
                delta[q, s] = row
    initial = {q: rng.choice(values) for q in states}
    final = {q: rng.choice(values) for q in states}
    return FuzzyNBA(lattice, states, alphabet, delta, initial, final)
