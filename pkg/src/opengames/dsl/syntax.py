"""Syntax tree for game files.  Positions are kept but ignored by equality."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def _pos():
    return field(default=None, compare=False, repr=False)


# -- types --------------------------------------------------------------------


@dataclass(frozen=True)
class TUnit:
    pos: tuple = _pos()


@dataclass(frozen=True)
class TReal:
    pos: tuple = _pos()


@dataclass(frozen=True)
class TLabels:
    names: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class TNumSet:
    points: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class TInt:
    lo: int
    hi: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class TGrid:
    lo: Fraction
    hi: Fraction
    step: Fraction
    pos: tuple = _pos()


@dataclass(frozen=True)
class TProduct:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class TList:
    element: object
    max_len: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class TName:
    name: str
    pos: tuple = _pos()


# -- literals ---------------------------------------------------------------


@dataclass(frozen=True)
class LNum:
    value: Fraction
    pos: tuple = _pos()


@dataclass(frozen=True)
class LName:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class LTuple:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class LList:
    items: tuple
    pos: tuple = _pos()


# -- function bodies ----------------------------------------------------------


@dataclass(frozen=True)
class FNum:
    value: Fraction
    pos: tuple = _pos()


@dataclass(frozen=True)
class FVar:
    name: str
    pos: tuple = _pos()


@dataclass(frozen=True)
class FBin:
    op: str
    left: object
    right: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FUn:
    op: str
    operand: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FIf:
    cond: object
    then: object
    other: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FCall:
    name: str
    args: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class FTuple:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class FList:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class FIndex:
    target: object
    index: int
    pos: tuple = _pos()


@dataclass(frozen=True)
class FTable:
    entries: tuple  # of (key literal, value literal)
    default: object = None
    pos: tuple = _pos()


# -- diagram expressions ------------------------------------------------------


@dataclass(frozen=True)
class Seq:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Par:
    items: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Dual:
    inner: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Copy:
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Delete:
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Id:
    types: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Counit:
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Cup:
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Braid:
    perm: tuple
    types: tuple
    pos: tuple = _pos()


@dataclass(frozen=True)
class Const:
    type: object  # None means real
    value: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Ref:
    name: str
    pos: tuple = _pos()


# -- declarations -------------------------------------------------------------


@dataclass(frozen=True)
class TypeDecl:
    name: str
    type: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class FunDecl:
    name: str
    params: tuple  # of (name, type)
    cod: tuple
    multi: bool  # codomain written as a strand list [T, ...]
    body: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Selector:
    kind: str  # argmax, fixpoint, match, prefer
    outcome: object = None
    ranking: tuple | None = None
    pos: tuple = _pos()


@dataclass(frozen=True)
class PlayerDecl:
    name: str
    obs: tuple
    choice: object
    sel: Selector
    pos: tuple = _pos()


@dataclass(frozen=True)
class LetDecl:
    name: str
    expr: object
    pos: tuple = _pos()


@dataclass(frozen=True)
class Program:
    decls: tuple
    diagram: object
    pos: tuple = _pos()


ATOMS = (Copy, Delete, Id, Counit, Cup, Braid, Const, Ref)
