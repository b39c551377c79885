"""Resolving type syntax to FiniteType objects and literals to values."""
from __future__ import annotations

from fractions import Fraction

from ..domains import REAL, UNIT, BoundedList, FiniteType, Grid, IntRange, Labels, NumSet, Product, Real, Unit
from ..errors import DomainError, TypeCheckError
from . import syntax as A


def resolve_type(t, types: dict, alias: str | None = None, path=None) -> FiniteType:
    """Turn type syntax into a FiniteType; ``types`` maps declared names."""
    if isinstance(t, A.TUnit):
        return UNIT
    if isinstance(t, A.TReal):
        return REAL
    if isinstance(t, A.TLabels):
        return Labels(t.names, alias)
    if isinstance(t, A.TNumSet):
        return NumSet(t.points, alias)
    if isinstance(t, A.TInt):
        return IntRange(t.lo, t.hi, alias)
    if isinstance(t, A.TGrid):
        return Grid(t.lo, t.hi, t.step, alias)
    if isinstance(t, A.TProduct):
        return Product(tuple(resolve_type(i, types, path=path) for i in t.items), alias)
    if isinstance(t, A.TList):
        return BoundedList(resolve_type(t.element, types, path=path), t.max_len, alias)
    if isinstance(t, A.TName):
        try:
            return types[t.name]
        except KeyError:
            line, col = t.pos or (None, None)
            raise TypeCheckError(f"undeclared type {t.name!r}", line, col, path) from None
    raise TypeError(f"not a type: {t!r}")


def coerce(lit, t: FiniteType):
    """The value of type ``t`` written as literal ``lit``; DomainError if none."""
    if isinstance(t, Unit):
        if isinstance(lit, A.LTuple) and not lit.items:
            return ()
    elif isinstance(t, Labels):
        if isinstance(lit, A.LName) and lit.name in t.names:
            return lit.name
    elif isinstance(t, IntRange):
        if isinstance(lit, A.LNum) and lit.value.denominator == 1 and t.contains(int(lit.value)):
            return int(lit.value)
    elif isinstance(t, (Grid, NumSet)):
        if isinstance(lit, A.LNum) and t.contains(lit.value):
            return lit.value
    elif isinstance(t, Real):
        if isinstance(lit, A.LNum):
            return float(lit.value)
    elif isinstance(t, Product):
        if isinstance(lit, A.LTuple) and len(lit.items) == len(t.items):
            return tuple(coerce(li, ti) for li, ti in zip(lit.items, t.items))
    elif isinstance(t, BoundedList):
        if isinstance(lit, A.LList) and len(lit.items) <= t.max_len:
            return tuple(coerce(li, t.element) for li in lit.items)
    raise DomainError(f"{show_literal(lit)} is not a value of type {t}")


def fmt_number(q: Fraction) -> str:
    """Exact decimal text for a number that came from source (finite decimal)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    q = abs(q)
    digits = 0
    while (q * 10**digits).denominator != 1:
        digits += 1
        if digits > 60:
            return f"{sign}{q.numerator}/{q.denominator}"
    n = int(q * 10**digits)
    whole, frac = divmod(n, 10**digits)
    return f"{sign}{whole}.{frac:0{digits}d}"


def show_literal(lit) -> str:
    if isinstance(lit, A.LNum):
        return fmt_number(lit.value)
    if isinstance(lit, A.LName):
        return lit.name
    if isinstance(lit, A.LTuple):
        return "(" + ", ".join(show_literal(i) for i in lit.items) + ")"
    if isinstance(lit, A.LList):
        return "[" + ", ".join(show_literal(i) for i in lit.items) + "]"
    return repr(lit)
