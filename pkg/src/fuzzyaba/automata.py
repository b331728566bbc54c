"""Fuzzy alternating and nondeterministic omega-automata, lasso words, branches."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from functools import cached_property
from typing import Mapping

from . import formula as fm
from .lattice import Lattice, Value


class Acceptance(str, Enum):
    BUCHI = "buchi"
    COBUCHI = "cobuchi"

    def flipped(self) -> "Acceptance":
        return Acceptance.COBUCHI if self is Acceptance.BUCHI else Acceptance.BUCHI


class AutomatonError(ValueError):
    pass


@dataclass(frozen=True)
class WeakPartition:
    """Blocks of states plus a partial order on block names.

    ``order`` holds declared pairs ``(lower, upper)``.  Transitions may stay
    in a block or move to a block that is lower in the order; they never
    climb.
    """

    blocks: Mapping[str, frozenset]
    order: frozenset = frozenset()

    @cached_property
    def _below(self) -> dict:
        below = {b: {b} for b in self.blocks}
        changed = True
        while changed:
            changed = False
            for lo, hi in self.order:
                if hi in below and lo in below:
                    new = below[lo] - below[hi]
                    if new:
                        below[hi] |= new
                        changed = True
        return below

    def block_of(self, state: str) -> str | None:
        for name, members in self.blocks.items():
            if state in members:
                return name
        return None

    def leq(self, lower: str, upper: str) -> bool:
        return lower in self._below.get(upper, ())

    def is_acyclic(self) -> bool:
        return not any(self.leq(hi, lo) for lo, hi in self.order if lo != hi)


@dataclass(frozen=True, eq=False)
class FuzzyABA:
    """Alternating automaton with lattice-valued initial and final weights.

    ``delta`` maps ``(state, symbol)`` to a formula over the states; missing
    entries mean ``false``.  ``initial`` and ``final`` omit bot entries.
    """

    lattice: Lattice
    states: tuple
    alphabet: tuple
    delta: Mapping = field(default_factory=dict)
    initial: Mapping = field(default_factory=dict)
    final: Mapping = field(default_factory=dict)
    acceptance: Acceptance = Acceptance.BUCHI
    weak: WeakPartition | None = None

    def __post_init__(self):
        bot = self.lattice.bot
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "acceptance", Acceptance(self.acceptance))
        object.__setattr__(self, "delta", {k: v for k, v in dict(self.delta).items()
                                           if v != fm.FALSE})
        object.__setattr__(self, "initial", {q: v for q, v in dict(self.initial).items()
                                             if v != bot})
        object.__setattr__(self, "final", {q: v for q, v in dict(self.final).items()
                                           if v != bot})

    def transition(self, q: str, a: str) -> fm.Formula:
        return self.delta.get((q, a), fm.FALSE)

    def init(self, q: str) -> Value:
        return self.initial.get(q, self.lattice.bot)

    def fin(self, q: str) -> Value:
        return self.final.get(q, self.lattice.bot)

    def terms(self, q: str, a: str) -> tuple:
        """Minimal satisfaction sets of ``delta(q, a)``, cached per automaton."""
        table = self._terms
        key = (q, a)
        if key not in table:
            table[key] = tuple(fm.minimal_satisfaction_sets(self.transition(q, a), self.lattice))
        return table[key]

    @cached_property
    def _terms(self) -> dict:
        return {}

    @cached_property
    def _memo(self) -> dict:
        """Scratch space for derived data computed by other modules."""
        return {}

    @property
    def is_buchi(self) -> bool:
        return self.acceptance is Acceptance.BUCHI

    def has_crisp_initial(self) -> bool:
        return len(self.initial) == 1 and next(iter(self.initial.values())) == self.lattice.top

    def initial_state(self) -> str:
        if not self.has_crisp_initial():
            raise AutomatonError("automaton has no crisp initial state")
        return next(iter(self.initial))

    def has_crisp_final(self) -> bool:
        return all(v == self.lattice.top for v in self.final.values())

    def weights(self) -> set:
        """Every lattice value that can enter a run weight."""
        out = set(self.initial.values()) | set(self.final.values())
        for (q, a) in self.delta:
            out.update(c for _, c in self.terms(q, a))
        return out

    def replace(self, **changes) -> "FuzzyABA":
        return replace(self, **changes)

    @cached_property
    def _key(self):
        lat = self.lattice
        return (lat, frozenset(self.states), frozenset(self.alphabet),
                frozenset((k, fm.canonical(f, lat)) for k, f in self.delta.items()),
                frozenset(self.initial.items()),
                frozenset(self.final.items()), self.acceptance, _weak_key(self.weak))

    def __eq__(self, other):
        return isinstance(other, FuzzyABA) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"FuzzyABA({len(self.states)} states, alphabet={list(self.alphabet)}, "
                f"{self.acceptance.value})")


def _weak_key(weak):
    if weak is None:
        return None
    return (frozenset((k, frozenset(v)) for k, v in weak.blocks.items()), frozenset(weak.order))


@dataclass(frozen=True, eq=False)
class FuzzyNBA:
    """Nondeterministic Büchi automaton; ``delta[(q, a)]`` maps targets to weights."""

    lattice: Lattice
    states: tuple
    alphabet: tuple
    delta: Mapping = field(default_factory=dict)
    initial: Mapping = field(default_factory=dict)
    final: Mapping = field(default_factory=dict)

    def __post_init__(self):
        bot = self.lattice.bot
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        clean = {}
        for key, row in dict(self.delta).items():
            row = {t: w for t, w in dict(row).items() if w != bot}
            if row:
                clean[key] = row
        object.__setattr__(self, "delta", clean)
        object.__setattr__(self, "initial", {q: v for q, v in dict(self.initial).items()
                                             if v != bot})
        object.__setattr__(self, "final", {q: v for q, v in dict(self.final).items()
                                           if v != bot})

    def edges(self, q: str, a: str) -> Mapping:
        return self.delta.get((q, a), {})

    def edge(self, q: str, a: str, target: str) -> Value:
        return self.edges(q, a).get(target, self.lattice.bot)

    def init(self, q):
        return self.initial.get(q, self.lattice.bot)

    def fin(self, q):
        return self.final.get(q, self.lattice.bot)

    @cached_property
    def _memo(self) -> dict:
        return {}

    def weights(self) -> set:
        out = set(self.initial.values()) | set(self.final.values())
        for row in self.delta.values():
            out.update(row.values())
        return out

    @cached_property
    def _key(self):
        return (self.lattice, frozenset(self.states), frozenset(self.alphabet),
                frozenset((k, frozenset(v.items())) for k, v in self.delta.items()),
                frozenset(self.initial.items()), frozenset(self.final.items()))

    def __eq__(self, other):
        return isinstance(other, FuzzyNBA) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"FuzzyNBA({len(self.states)} states, alphabet={list(self.alphabet)})"


@dataclass(frozen=True)
class LassoWord:
    """The ultimately periodic word ``prefix . period^omega``."""

    prefix: tuple
    period: tuple

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("lasso period must be nonempty")

    @classmethod
    def parse(cls, prefix: str, period: str) -> "LassoWord":
        return cls(tuple(prefix.split()), tuple(period.split()))

    def __len__(self):
        return len(self.prefix) + len(self.period)

    def symbol(self, pos: int) -> str:
        n = len(self.prefix)
        return self.prefix[pos] if pos < n else self.period[(pos - n) % len(self.period)]

    def successor(self, pos: int) -> int:
        nxt = pos + 1
        return nxt if nxt < len(self) else len(self.prefix)

    def symbols(self) -> set:
        return set(self.prefix) | set(self.period)

    def normalized(self) -> "LassoWord":
        """Canonical representative of the same infinite word."""
        v = self.period
        for k in range(1, len(v) + 1):
            if len(v) % k == 0 and v[:k] * (len(v) // k) == v:
                v = v[:k]
                break
        u = self.prefix
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        return LassoWord(u, v)

    def __str__(self):
        head = " ".join(self.prefix)
        tail = f"({' '.join(self.period)})^w"
        return f"{head} {tail}" if head else tail


@dataclass(frozen=True)
class Branch:
    """A run branch: either a finite path ending in a leaf value, or a lasso of states."""

    stem: tuple = ()
    cycle: tuple = ()
    leaf: Value | None = None

    def __post_init__(self):
        object.__setattr__(self, "stem", tuple(self.stem))
        object.__setattr__(self, "cycle", tuple(self.cycle))
        if self.leaf is None and not self.cycle:
            raise ValueError("an infinite branch needs a nonempty cycle")
        if self.leaf is not None and self.cycle:
            raise ValueError("a finite branch has no cycle")


def branch_weight(b: Branch, final: Mapping, acceptance: Acceptance, lattice: Lattice) -> Value:
    if b.leaf is not None:
        return b.leaf
    vals = [final.get(q, lattice.bot) for q in set(b.cycle)]
    if Acceptance(acceptance) is Acceptance.BUCHI:
        return lattice.join_all(vals)
    return lattice.meet_all(vals)


# --- validation --------------------------------------------------------------

def validate(a: FuzzyABA | FuzzyNBA) -> list:
    """Diagnostics describing every broken invariant; empty when well-formed."""
    out = []
    lat = a.lattice
    states = set(a.states)
    sigma = set(a.alphabet)
    if not a.states:
        out.append("automaton has no states")
    if not a.alphabet:
        out.append("automaton has an empty alphabet")
    if len(states) != len(a.states):
        out.append("duplicate state names")
    if len(sigma) != len(a.alphabet):
        out.append("duplicate alphabet symbols")
    for label, table in (("initial", a.initial), ("final", a.final)):
        for q, v in table.items():
            if q not in states:
                out.append(f"{label} weight for unknown state {q!r}")
            if not lat.contains(v):
                out.append(f"{label} weight {v!r} of {q!r} is outside the lattice")
    if isinstance(a, FuzzyNBA):
        for (q, s), row in a.delta.items():
            if q not in states:
                out.append(f"transition from unknown state {q!r}")
            if s not in sigma:
                out.append(f"transition on unknown symbol {s!r} from {q!r}")
            for t, w in row.items():
                if t not in states:
                    out.append(f"transition {q!r} --{s}--> unknown state {t!r}")
                if not lat.contains(w):
                    out.append(f"weight {w!r} on {q!r} --{s}--> {t!r} is outside the lattice")
        return out
    for (q, s), f in a.delta.items():
        where = f"delta({q}, {s})"
        if q not in states:
            out.append(f"{where}: unknown state {q!r}")
        if s not in sigma:
            out.append(f"{where}: unknown symbol {s!r}")
        for x in sorted(fm.variables(f) - states):
            out.append(f"{where}: formula mentions unknown state {x!r}")
        for c in fm.constants(f):
            if not lat.contains(c):
                out.append(f"{where}: constant {c!r} is outside the lattice")
    if a.weak is not None:
        out.extend(_weak_diagnostics(a))
    return out


def _weak_diagnostics(a: FuzzyABA) -> list:
    out = []
    weak = a.weak
    seen: dict = {}
    for name, members in weak.blocks.items():
        for q in members:
            if q not in a.states:
                out.append(f"weak block {name!r} lists unknown state {q!r}")
            if q in seen:
                out.append(f"state {q!r} is in blocks {seen[q]!r} and {name!r}")
            seen[q] = name
    for q in a.states:
        if q not in seen:
            out.append(f"state {q!r} is in no weak block")
    for lo, hi in weak.order:
        for b in (lo, hi):
            if b not in weak.blocks:
                out.append(f"weak order mentions unknown block {b!r}")
    if not weak.is_acyclic():
        out.append("weak block order has a cycle")
    for (q, s), f in a.delta.items():
        src = seen.get(q)
        for t in sorted(fm.variables(f)):
            dst = seen.get(t)
            if src is None or dst is None:
                continue
            if not weak.leq(dst, src):
                out.append(f"delta({q}, {s}): {t!r} in block {dst!r} is not below block {src!r}")
    return out


def is_weak(a: FuzzyABA) -> bool:
    if a.weak is None:
        raise AutomatonError("automaton carries no weak partition")
    return not _weak_diagnostics(a)
