"""Bounded distributive lattices with exact arithmetic.

Four carriers are supported: the rational unit interval, finite chains,
the two-element Boolean lattice and finite products of chains.  Chain
elements are :class:`fractions.Fraction` instances in ``[0, 1]``; product
elements are tuples of such fractions.  The optional negation is the
standard involution ``x -> 1 - x`` (componentwise on products).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import product as cartesian
from typing import Iterable, Union

Value = Union[Fraction, tuple]


class LatticeError(ValueError):
    """Raised for malformed lattice specs, values or closure inputs."""


class NegationUnavailable(LatticeError):
    def __init__(self, lattice=None):
        where = f" on lattice '{lattice.spec()}'" if lattice is not None else ""
        super().__init__(f"negation unavailable{where}")


_NUMBER = re.compile(r"^\s*(\d+(?:\.\d+)?|\.\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_number(text: str) -> Fraction:
    """Parse ``0.3``, ``3/10`` or ``1`` as an exact fraction."""
    m = _NUMBER.match(text)
    if not m:
        raise LatticeError(f"not a number: {text!r}")
    num = Fraction(m.group(1))
    if m.group(2) is not None:
        den = int(m.group(2))
        if den == 0:
            raise LatticeError(f"zero denominator in {text!r}")
        num = num / den
    return num


def format_number(x: Fraction) -> str:
    """Shortest exact text: integers, terminating decimals, else ``p/q``."""
    if x.denominator == 1:
        return str(x.numerator)
    decimal = decimal_text(x)
    return decimal if decimal is not None else f"{x.numerator}/{x.denominator}"


def decimal_text(x: Fraction) -> str | None:
    """Decimal rendering of ``x`` when it terminates, else ``None``."""
    den = x.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    places = max(twos, fives)
    scaled = x * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


class Lattice:
    """Common interface; concrete carriers override the primitive operations."""

    has_negation: bool = False
    is_chain: bool = True

    # primitives -------------------------------------------------------
    @property
    def bot(self) -> Value:
        raise NotImplementedError

    @property
    def top(self) -> Value:
        raise NotImplementedError

    def join(self, x: Value, y: Value) -> Value:
        raise NotImplementedError

    def meet(self, x: Value, y: Value) -> Value:
        raise NotImplementedError

    def leq(self, x: Value, y: Value) -> bool:
        raise NotImplementedError

    def _negate(self, x: Value) -> Value:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def parse_value(self, text: str) -> Value:
        raise NotImplementedError

    def format_value(self, x: Value) -> str:
        raise NotImplementedError

    def spec(self) -> str:
        raise NotImplementedError

    def sample_values(self) -> list:
        """A small finite set of carrier elements for property checks."""
        raise NotImplementedError

    # derived ----------------------------------------------------------
    def negate(self, x: Value) -> Value:
        if not self.has_negation:
            raise NegationUnavailable(self)
        return self._negate(x)

    def lt(self, x: Value, y: Value) -> bool:
        return x != y and self.leq(x, y)

    def join_all(self, values: Iterable[Value]) -> Value:
        return reduce(self.join, values, self.bot)

    def meet_all(self, values: Iterable[Value]) -> Value:
        return reduce(self.meet, values, self.top)

    def is_bot(self, x: Value) -> bool:
        return x == self.bot

    def sort_key(self, x: Value):
        return x

    def check(self, x) -> Value:
        if not self.contains(x):
            raise LatticeError(f"value {x!r} is not in lattice '{self.spec()}'")
        return x

    def describe(self, x: Value) -> str:
        """Exact rendering with a decimal echo, e.g. ``3/10 (0.3)``."""
        return self.format_value(x)

    def closure(self, values: Iterable[Value]) -> frozenset:
        return finite_sublattice_closure(self, values)

    def join_irreducibles(self, closed: Iterable[Value]) -> list:
        return join_irreducibles(self, closed)


@dataclass(frozen=True)
class Chain(Lattice):
    """A chain inside ``[0, 1]``.

    ``size`` is ``None`` for the dense rational chain; otherwise the carrier
    is ``{k / (size - 1)}``.  The Boolean lattice is the chain of size 2.
    """

    size: int | None = None
    has_negation: bool = False
    boolean: bool = False

    def __post_init__(self):
        if self.size is not None and self.size < 2:
            raise LatticeError("a finite chain needs at least two elements")

    @property
    def bot(self):
        return Fraction(0)

    @property
    def top(self):
        return Fraction(1)

    def join(self, x, y):
        return x if x >= y else y

    def meet(self, x, y):
        return x if x <= y else y

    def leq(self, x, y):
        return x <= y

    def _negate(self, x):
        return 1 - x

    def contains(self, x):
        if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
            return False
        if not 0 <= x <= 1:
            return False
        return self.size is None or (Fraction(x) * (self.size - 1)).denominator == 1

    def parse_value(self, text):
        return self.check(parse_number(text))

    def format_value(self, x):
        return format_number(x)

    def describe(self, x):
        if x.denominator == 1:
            return str(x.numerator)
        text = f"{x.numerator}/{x.denominator}"
        dec = decimal_text(x)
        return f"{text} ({dec})" if dec is not None else text

    def kind(self) -> str:
        if self.boolean:
            return "boolean"
        return "rational-unit" if self.size is None else f"chain:{self.size}"

    def spec(self):
        return self.kind() + (" negation:standard" if self.has_negation else "")

    def elements(self):
        if self.size is None:
            return None
        return [Fraction(k, self.size - 1) for k in range(self.size)]

    def sample_values(self):
        if self.size is not None:
            return self.elements()
        return [Fraction(k, 4) for k in range(5)]


@dataclass(frozen=True)
class Product(Lattice):
    """Componentwise product of chains; the order is partial."""

    factors: tuple = ()
    has_negation: bool = False
    is_chain = False

    def __post_init__(self):
        if len(self.factors) < 2:
            raise LatticeError("a product needs at least two factors")
        if not all(isinstance(f, Chain) for f in self.factors):
            raise LatticeError("product factors must be chains")

    @property
    def bot(self):
        return tuple(f.bot for f in self.factors)

    @property
    def top(self):
        return tuple(f.top for f in self.factors)

    def join(self, x, y):
        return tuple(max(a, b) for a, b in zip(x, y))

    def meet(self, x, y):
        return tuple(min(a, b) for a, b in zip(x, y))

    def leq(self, x, y):
        return all(a <= b for a, b in zip(x, y))

    def _negate(self, x):
        return tuple(1 - a for a in x)

    def contains(self, x):
        return (isinstance(x, tuple) and len(x) == len(self.factors)
                and all(f.contains(a) for f, a in zip(self.factors, x)))

    def parse_value(self, text):
        inner = text.strip()
        if not (inner.startswith("(") and inner.endswith(")")):
            raise LatticeError(f"product value must look like (x,y): {text!r}")
        parts = inner[1:-1].split(",")
        if len(parts) != len(self.factors):
            raise LatticeError(f"expected {len(self.factors)} components in {text!r}")
        return self.check(tuple(parse_number(p) for p in parts))

    def format_value(self, x):
        return "(" + ",".join(format_number(a) for a in x) + ")"

    def describe(self, x):
        exact = "(" + ",".join(f"{a.numerator}/{a.denominator}" if a.denominator != 1
                               else str(a.numerator) for a in x) + ")"
        pretty = self.format_value(x)
        return exact if exact == pretty else f"{exact} {pretty}"

    def spec(self):
        names = "*".join(f.kind() for f in self.factors)
        return "product:" + names + (" negation:standard" if self.has_negation else "")

    def sample_values(self):
        per = [[Fraction(0), Fraction(1, 2), Fraction(1)] if f.size is None
               else f.elements()[:3] + f.elements()[-1:] for f in self.factors]
        return sorted(set(cartesian(*per)))


def _parse_base(token: str, negation: bool) -> Chain:
    if token == "rational-unit":
        return Chain(None, negation)
    if token == "boolean":
        return Chain(2, negation, boolean=True)
    m = re.fullmatch(r"chain:(\d+)", token)
    if m:
        return Chain(int(m.group(1)), negation)
    raise LatticeError(f"unknown lattice kind {token!r}")


def parse_lattice(text: str) -> Lattice:
    """Parse a description such as ``product:rational-unit*chain:3 negation:standard``."""
    tokens = text.split()
    if not tokens:
        raise LatticeError("empty lattice description")
    negation = False
    for extra in tokens[1:]:
        if extra == "negation:standard":
            negation = True
        else:
            raise LatticeError(f"unknown lattice option {extra!r}")
    head = tokens[0]
    if head.startswith("product:"):
        factors = tuple(_parse_base(t, negation) for t in head[len("product:"):].split("*"))
        return Product(factors, negation)
    return _parse_base(head, negation)


RATIONAL_UNIT = Chain(None, True)
BOOLEAN = Chain(2, True, boolean=True)


def finite_sublattice_closure(lattice: Lattice, values: Iterable[Value]) -> frozenset:
    """Close ``values`` plus bot and top under join and meet."""
    closed = {lattice.bot, lattice.top, *values}
    if lattice.is_chain:
        return frozenset(closed)
    frontier = list(closed)
    while frontier:
        fresh = []
        for x in frontier:
            for y in list(closed):
                for z in (lattice.join(x, y), lattice.meet(x, y)):
                    if z not in closed:
                        closed.add(z)
                        fresh.append(z)
        frontier = fresh
    return frozenset(closed)


def join_irreducibles(lattice: Lattice, closed: Iterable[Value]) -> list:
    """Nonzero elements that are not the join of the elements strictly below."""
    elems = set(closed)
    if lattice.bot not in elems or lattice.top not in elems:
        raise LatticeError("closed set must contain bot and top")
    for x in elems:
        for y in elems:
            if lattice.join(x, y) not in elems or lattice.meet(x, y) not in elems:
                raise LatticeError("set is not closed under join and meet")
    result = []
    for x in elems:
        if x == lattice.bot:
            continue
        below = lattice.join_all(y for y in elems if y != x and lattice.leq(y, x))
        if below != x:
            result.append(x)
    return sorted(result, key=lattice.sort_key)
