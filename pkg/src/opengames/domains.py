"""Finite wire types and their inhabitants.

Values are plain Python objects; the type that owns them is carried by the
interface of whatever game produces or consumes them:

    Unit          ()
    Labels        str
    IntRange      int
    Grid, NumSet  fractions.Fraction (exact)
    Product       tuple
    BoundedList   tuple of element values
    Real          float (payoff strands only, not enumerable)
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Any, Iterator, Sequence

from .errors import DomainError


def exact(x) -> Fraction:
    """Convert an int, decimal string, float or Fraction to an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise DomainError(f"not a number: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError:
            raise DomainError(f"not a number: {x!r}") from None
    raise DomainError(f"not a number: {x!r}")


def _fmt_num(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    d = q.denominator
    while d % 2 == 0:
        d //= 2
    while d % 5 == 0:
        d //= 5
    if d == 1:
        return repr(float(q))
    return f"{q.numerator}/{q.denominator}"


class FiniteType:
    """Base class. Subclasses are frozen dataclasses compared structurally."""

    finite = True

    def cardinality(self) -> int:
        raise NotImplementedError

    def _generate(self) -> Iterator[Any]:
        raise NotImplementedError

    @cached_property
    def _values(self) -> tuple:
        return tuple(self._generate())

    @cached_property
    def _index(self) -> dict:
        return {v: i for i, v in enumerate(self._values)}

    def values(self) -> tuple:
        """All inhabitants in canonical order."""
        return self._values

    def index(self, v) -> int:
        try:
            return self._index[v]
        except (KeyError, TypeError):
            raise DomainError(f"{self.describe(v)!s} is not a value of type {self}") from None

    def contains(self, v) -> bool:
        try:
            return v in self._index
        except TypeError:
            return False

    def key(self, v):
        """Sort key realising the canonical order."""
        return self.index(v)

    def render(self, v):
        """JSON-friendly form of a value."""
        raise NotImplementedError

    def parse(self, data):
        """Inverse of :meth:`render`; raises DomainError on non-members."""
        raise NotImplementedError

    def describe(self, v) -> str:
        return repr(v)

    def fmt(self, v) -> str:
        """Source-syntax form of a value (used by the printer and messages)."""
        return repr(v)


@dataclass(frozen=True)
class Unit(FiniteType):
    def cardinality(self):
        return 1

    def _generate(self):
        yield ()

    def render(self, v):
        return None

    def parse(self, data):
        if data is None or data == [] or data == ():
            return ()
        raise DomainError(f"expected unit, got {data!r}")

    def fmt(self, v):
        return "()"

    def __str__(self):
        return "unit"


UNIT = Unit()


@dataclass(frozen=True)
class Labels(FiniteType):
    names: tuple[str, ...]
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.names:
            raise DomainError("label set must be nonempty")
        if len(set(self.names)) != len(self.names):
            raise DomainError(f"duplicate labels in {{{', '.join(self.names)}}}")

    def cardinality(self):
        return len(self.names)

    def _generate(self):
        yield from self.names

    def render(self, v):
        return v

    def parse(self, data):
        if isinstance(data, str) and data in self.names:
            return data
        raise DomainError(f"{data!r} is not a label of {self}")

    def fmt(self, v):
        return v

    def __str__(self):
        return self.alias or "{" + ", ".join(self.names) + "}"


@dataclass(frozen=True)
class IntRange(FiniteType):
    lo: int
    hi: int
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.lo > self.hi:
            raise DomainError(f"empty integer range {self.lo}..{self.hi}")

    def cardinality(self):
        return self.hi - self.lo + 1

    def _generate(self):
        yield from range(self.lo, self.hi + 1)

    def index(self, v):
        if isinstance(v, Fraction) and v.denominator == 1:
            v = v.numerator
        if isinstance(v, int) and not isinstance(v, bool) and self.lo <= v <= self.hi:
            return v - self.lo
        raise DomainError(f"{v!r} is not a value of type {self}")

    def contains(self, v):
        try:
            self.index(v)
        except DomainError:
            return False
        return True

    def render(self, v):
        return int(v)

    def parse(self, data):
        v = exact(data) if not isinstance(data, int) else Fraction(data)
        if v.denominator != 1:
            raise DomainError(f"{data!r} is not an integer")
        self.index(v.numerator)
        return v.numerator

    def fmt(self, v):
        return str(v)

    def __str__(self):
        return self.alias or f"int {self.lo}..{self.hi}"


class _Numeric(FiniteType):
    def render(self, v):
        if v.denominator == 1:
            return v.numerator
        text = _fmt_num(v)
        return float(v) if "/" not in text else text

    def parse(self, data):
        v = exact(data)
        if not self.contains(v):
            raise DomainError(f"{data!r} is not a value of type {self}")
        return v

    def fmt(self, v):
        return _fmt_num(v)

    def describe(self, v):
        return _fmt_num(exact(v)) if isinstance(v, (int, Fraction)) else repr(v)


@dataclass(frozen=True)
class Grid(_Numeric):
    """Evenly spaced exact numbers lo, lo+step, ..., hi."""

    lo: Fraction
    hi: Fraction
    step: Fraction
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        for name in ("lo", "hi", "step"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.step <= 0:
            raise DomainError("grid step must be positive")
        if self.hi < self.lo:
            raise DomainError(f"empty grid {_fmt_num(self.lo)}..{_fmt_num(self.hi)}")
        n = (self.hi - self.lo) / self.step
        if n.denominator != 1:
            raise DomainError(
                f"grid bound {_fmt_num(self.hi)} is not a multiple of step {_fmt_num(self.step)} from {_fmt_num(self.lo)}"
            )

    def cardinality(self):
        return int((self.hi - self.lo) / self.step) + 1

    def _generate(self):
        for i in range(self.cardinality()):
            yield self.lo + i * self.step

    def index(self, v):
        try:
            q = exact(v)
        except DomainError:
            raise DomainError(f"{v!r} is not a value of type {self}") from None
        i = (q - self.lo) / self.step
        if i.denominator != 1 or not 0 <= i < self.cardinality():
            raise DomainError(f"{self.describe(v)} is not a value of type {self}")
        return int(i)

    def contains(self, v):
        try:
            self.index(v)
        except DomainError:
            return False
        return True

    def __str__(self):
        return self.alias or f"grid {_fmt_num(self.lo)}..{_fmt_num(self.hi)} step {_fmt_num(self.step)}"


@dataclass(frozen=True)
class NumSet(_Numeric):
    """An explicit finite set of exact numbers, kept in ascending order."""

    points: tuple[Fraction, ...]
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        pts = tuple(sorted(exact(p) for p in self.points))
        if not pts:
            raise DomainError("numeric set must be nonempty")
        if len(set(pts)) != len(pts):
            raise DomainError("duplicate points in numeric set")
        object.__setattr__(self, "points", pts)

    def cardinality(self):
        return len(self.points)

    def _generate(self):
        yield from self.points

    def index(self, v):
        try:
            return self._index[exact(v)]
        except (KeyError, DomainError):
            raise DomainError(f"{self.describe(v)} is not a value of type {self}") from None

    def contains(self, v):
        try:
            self.index(v)
        except DomainError:
            return False
        return True

    def __str__(self):
        return self.alias or "{" + ", ".join(_fmt_num(p) for p in self.points) + "}"


@dataclass(frozen=True)
class Product(FiniteType):
    items: tuple[FiniteType, ...]
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "items", tuple(self.items))
        if any(not t.finite for t in self.items):
            object.__setattr__(self, "finite", False)

    def cardinality(self):
        return math.prod(t.cardinality() for t in self.items)

    def _generate(self):
        yield from itertools.product(*(t.values() for t in self.items))

    def index(self, v):
        if not isinstance(v, tuple) or len(v) != len(self.items):
            raise DomainError(f"{v!r} is not a value of type {self}")
        i = 0
        for t, x in zip(self.items, v):
            i = i * t.cardinality() + t.index(x)
        return i

    def contains(self, v):
        if not isinstance(v, tuple) or len(v) != len(self.items):
            return False
        return all(t.contains(x) for t, x in zip(self.items, v))

    def key(self, v):
        return tuple(t.key(x) for t, x in zip(self.items, v))

    def render(self, v):
        return [t.render(x) for t, x in zip(self.items, v)]

    def parse(self, data):
        if not isinstance(data, (list, tuple)) or len(data) != len(self.items):
            raise DomainError(f"expected {len(self.items)}-tuple for {self}, got {data!r}")
        return tuple(t.parse(x) for t, x in zip(self.items, data))

    def fmt(self, v):
        return "(" + ", ".join(t.fmt(x) for t, x in zip(self.items, v)) + ")"

    def __str__(self):
        return self.alias or "(" + ", ".join(str(t) for t in self.items) + ")"


@dataclass(frozen=True)
class BoundedList(FiniteType):
    """Lists of at most ``max_len`` elements, most recent first for histories."""

    element: FiniteType
    max_len: int
    alias: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.max_len < 0:
            raise DomainError("list bound must be non-negative")

    def cardinality(self):
        n = self.element.cardinality()
        return sum(n**k for k in range(self.max_len + 1))

    def _generate(self):
        # lexicographic: a prefix precedes its extensions
        elems = self.element.values()

        def rec(room):
            yield ()
            if room == 0:
                return
            for e in elems:
                for rest in rec(room - 1):
                    yield (e,) + rest

        yield from rec(self.max_len)

    def contains(self, v):
        return (
            isinstance(v, tuple)
            and len(v) <= self.max_len
            and all(self.element.contains(x) for x in v)
        )

    def key(self, v):
        return tuple(self.element.key(x) for x in v)

    def render(self, v):
        return [self.element.render(x) for x in v]

    def parse(self, data):
        if not isinstance(data, (list, tuple)) or len(data) > self.max_len:
            raise DomainError(f"expected list of at most {self.max_len} for {self}, got {data!r}")
        return tuple(self.element.parse(x) for x in data)

    def fmt(self, v):
        return "[" + ", ".join(self.element.fmt(x) for x in v) + "]"

    def __str__(self):
        return self.alias or f"list[{self.element}; {self.max_len}]"


@dataclass(frozen=True)
class Real(FiniteType):
    """Payoff strand: 64-bit floats. Membership only; never enumerated."""

    finite = False

    def cardinality(self):
        raise DomainError("real has no finite cardinality")

    def _generate(self):
        raise DomainError("real cannot be enumerated")

    def values(self):
        raise DomainError("real cannot be enumerated")

    def index(self, v):
        raise DomainError("real values have no canonical index")

    def contains(self, v):
        return isinstance(v, (int, float, Fraction)) and not isinstance(v, bool) and math.isfinite(v)

    def key(self, v):
        return float(v)

    def render(self, v):
        return float(v)

    def parse(self, data):
        if isinstance(data, (int, float)) and not isinstance(data, bool):
            return float(data)
        raise DomainError(f"expected a real number, got {data!r}")

    def fmt(self, v):
        return repr(float(v))

    def __str__(self):
        return "real"


REAL = Real()


def product_of(strands: Sequence[FiniteType]) -> FiniteType:
    """Reduce a strand list to one type: none -> Unit, one -> itself, else Product."""
    strands = tuple(strands)
    if not strands:
        return UNIT
    if len(strands) == 1:
        return strands[0]
    return Product(strands)


def enumerate_values(t: FiniteType) -> Iterator:
    """Stream the inhabitants of ``t`` in canonical order."""
    if not t.finite:
        raise DomainError(f"type {t} is not finite")
    return iter(t.values())


def cardinality(t: FiniteType) -> int:
    return t.cardinality()
