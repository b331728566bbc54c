"""Line-oriented text format for automata.

Example::

    lattice rational-unit negation:standard
    acceptance buchi
    alphabet a b
    states q0 q1
    init q0 1
    final q1 0.4
    trans q0 a : 0.7 & q1
    trans q1 b : q1

Nondeterministic automata use ``ntrans q a q' weight`` lines instead of
``trans``; a ``kind nba`` line marks an NBA that has no edges at all.
"""

from __future__ import annotations

import re
from pathlib import Path

from . import formula as fm
from .automata import Acceptance, FuzzyABA, FuzzyNBA, WeakPartition
from .lattice import LatticeError, parse_lattice


class AutomatonParseError(ValueError):
    def __init__(self, message: str, source: str = "<string>", line: int | None = None):
        where = f"{source}:{line}" if line is not None else source
        super().__init__(f"{where}: {message}")
        self.source = source
        self.line = line


def natural_key(name: str):
    return [(0, int(p), "") if p.isdigit() else (1, 0, p) for p in re.split(r"(\d+)", name) if p]


def parse_automaton(text: str, source: str = "<string>"):
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((number, line))

    def fail(msg, number=None):
        raise AutomatonParseError(msg, source, number)

    lattice = None
    for number, line in lines:
        head, _, rest = line.partition(" ")
        if head == "lattice":
            if lattice is not None:
                fail("duplicate lattice declaration", number)
            try:
                lattice = parse_lattice(rest)
            except LatticeError as exc:
                fail(str(exc), number)
    if lattice is None:
        fail("missing 'lattice' declaration")

    def value(text, number):
        try:
            return lattice.parse_value(text)
        except LatticeError as exc:
            fail(str(exc), number)

    alphabet = states = None
    acceptance = Acceptance.BUCHI
    kind = None
    initial, final, delta, ndelta = {}, {}, {}, {}
    blocks, order = {}, set()
    for number, line in lines:
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        if head == "lattice":
            continue
        if head == "alphabet":
            alphabet = tuple(rest.split())
        elif head == "states":
            states = tuple(rest.split())
        elif head == "acceptance":
            try:
                acceptance = Acceptance(rest)
            except ValueError:
                fail(f"unknown acceptance {rest!r}", number)
        elif head == "kind":
            if rest not in ("aba", "nba"):
                fail(f"unknown kind {rest!r}", number)
            kind = rest
        elif head in ("init", "final"):
            parts = rest.split(None, 1)
            if len(parts) != 2:
                fail(f"expected '{head} <state> <value>'", number)
            table = initial if head == "init" else final
            if parts[0] in table:
                fail(f"duplicate {head} weight for {parts[0]!r}", number)
            table[parts[0]] = value(parts[1], number)
        elif head == "trans":
            lhs, colon, body = rest.partition(":")
            key = tuple(lhs.split())
            if not colon or len(key) != 2:
                fail("expected 'trans <state> <symbol> : <formula>'", number)
            if key in delta:
                fail(f"duplicate transition for {key}", number)
            try:
                delta[key] = fm.parse(body, lattice)
            except fm.FormulaSyntaxError as exc:
                fail(str(exc), number)
        elif head == "ntrans":
            parts = rest.split(None, 3)
            if len(parts) != 4:
                fail("expected 'ntrans <state> <symbol> <state> <value>'", number)
            q, a, t, w = parts
            row = ndelta.setdefault((q, a), {})
            if t in row:
                fail(f"duplicate edge {q} {a} {t}", number)
            row[t] = value(w, number)
        elif head == "weakblock":
            name, colon, members = rest.partition(":")
            name = name.strip()
            if not colon or not name:
                fail("expected 'weakblock <name> : <states>'", number)
            blocks[name] = frozenset(members.split())
        elif head == "weakorder":
            m = re.fullmatch(r"(\S+)\s*<=\s*(\S+)", rest)
            if not m:
                fail("expected 'weakorder <block> <= <block>'", number)
            order.add((m.group(1), m.group(2)))
        else:
            fail(f"unknown declaration {head!r}", number)

    if states is None:
        fail("missing 'states' declaration")
    if alphabet is None:
        fail("missing 'alphabet' declaration")
    if delta and ndelta:
        fail("file mixes 'trans' and 'ntrans' lines")
    is_nba = bool(ndelta) or kind == "nba"
    if kind == "aba" and ndelta:
        fail("'ntrans' lines in an alternating automaton")
    if is_nba:
        if delta:
            fail("'trans' lines in a nondeterministic automaton")
        if acceptance is not Acceptance.BUCHI:
            fail("nondeterministic automata use Büchi acceptance")
        return FuzzyNBA(lattice, states, alphabet, ndelta, initial, final)
    weak = WeakPartition(blocks, frozenset(order)) if blocks else None
    if order and not blocks:
        fail("'weakorder' without 'weakblock'")
    return FuzzyABA(lattice, states, alphabet, delta, initial, final, acceptance, weak)


def render_automaton(a) -> str:
    lat = a.lattice
    states = sorted(a.states, key=natural_key)
    out = [f"lattice {lat.spec()}"]
    if isinstance(a, FuzzyNBA):
        out.append("kind nba")
        out.append("acceptance buchi")
    else:
        out.append(f"acceptance {a.acceptance.value}")
    out.append("alphabet " + " ".join(sorted(a.alphabet, key=natural_key)))
    out.append("states " + " ".join(states))
    for q in states:
        if q in a.initial:
            out.append(f"init {q} {lat.format_value(a.initial[q])}")
    for q in states:
        if q in a.final:
            out.append(f"final {q} {lat.format_value(a.final[q])}")
    symbols = sorted(a.alphabet, key=natural_key)
    if isinstance(a, FuzzyNBA):
        for q in states:
            for s in symbols:
                row = a.edges(q, s)
                for t in sorted(row, key=natural_key):
                    out.append(f"ntrans {q} {s} {t} {lat.format_value(row[t])}")
    else:
        for q in states:
            for s in symbols:
                if (q, s) in a.delta:
                    out.append(f"trans {q} {s} : {fm.render(a.delta[q, s], lat)}")
        if a.weak is not None:
            for name in sorted(a.weak.blocks, key=natural_key):
                members = sorted(a.weak.blocks[name], key=natural_key)
                out.append(f"weakblock {name} : " + " ".join(members))
            for lo, hi in sorted(a.weak.order, key=lambda p: (natural_key(p[0]), natural_key(p[1]))):
                out.append(f"weakorder {lo} <= {hi}")
    return "\n".join(out) + "\n"


def load_automaton(path):
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise AutomatonParseError(f"cannot read file: {exc.strerror}", str(path)) from exc
    return parse_automaton(text, str(path))


def save_automaton(a, path) -> None:
    Path(path).write_text(render_automaton(a), encoding="utf-8")
