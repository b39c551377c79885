"""Interface checking for parsed game files.

Every diagram node is annotated with its interface.  Sequential composition
demands that the upper part's bottom strands equal the lower part's top
strands exactly; strings bent upwards (units) are rejected before anything
else is checked.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from ..combinators import ARGMAX, FIXPOINT, MATCH, Permutation, Prefer
from ..core import Interface, reduce_interface
from ..domains import REAL, FiniteType, Labels, Product
from ..errors import CompositionError, DomainError, SelectionError, TypeCheckError, UnitBendError
from . import syntax as A
from .funs import compile_fun
from .values import coerce, resolve_type, show_literal

ENUMERATION_LIMIT = 10**6


@dataclass
class FunInfo:
    decl: A.FunDecl
    dom: tuple
    cod: tuple
    fn: object


@dataclass
class PlayerInfo:
    decl: A.PlayerDecl
    obs: tuple
    choice: FiniteType
    sel: object

    @property
    def outcome(self):
        return self.sel.outcome_strands(self.choice)


@dataclass
class TNode:
    expr: object
    iface: Interface
    children: tuple = ()
    kind: str = ""

    @property
    def normal(self):
        return reduce_interface(self.iface)


@dataclass
class TypedProgram:
    program: A.Program
    root: TNode
    types: dict = field(default_factory=dict)
    funs: dict = field(default_factory=dict)
    players: dict = field(default_factory=dict)
    lets: dict = field(default_factory=dict)
    path: str | None = None

    @property
    def iface(self):
        return self.root.iface

    @property
    def normal(self):
        return self.root.normal


def side(fwd, bwd) -> str:
    parts = [str(t) for t in fwd] + [f"{t}*" for t in bwd]
    return "(" + ", ".join(parts) + ")" if parts else "I"


class Checker:
    def __init__(self, prog: A.Program, path=None):
        self.prog = prog
        self.path = path
        self.types = {}
        self.funs = {}
        self.players = {}
        self.lets = {}
        self.labels = set()

    def err(self, msg, node, cls=TypeCheckError):
        line, col = getattr(node, "pos", None) or (None, None)
        return cls(msg, line, col, self.path)

    def type_(self, t, alias=None):
        try:
            ft = resolve_type(t, self.types, alias=alias, path=self.path)
        except DomainError as exc:
            raise self.err(str(exc), t) from None
        self._note_labels(ft)
        return ft

    def _note_labels(self, t):
        if isinstance(t, Labels):
            self.labels.update(t.names)
        elif isinstance(t, Product):
            for i in t.items:
                self._note_labels(i)
        elif hasattr(t, "element"):
            self._note_labels(t.element)

    # -- declarations --

    def run(self) -> TypedProgram:
        self.reject_bends(self.prog.diagram)
        for d in self.prog.decls:
            if isinstance(d, A.LetDecl):
                self.reject_bends(d.expr)
        for d in self.prog.decls:
            if isinstance(d, A.TypeDecl):
                self.types[d.name] = self.type_(d.type, alias=d.name)
            elif isinstance(d, A.FunDecl):
                self.fun(d)
            elif isinstance(d, A.PlayerDecl):
                self.player(d)
            elif isinstance(d, A.LetDecl):
                self.lets[d.name] = self.expr(d.expr)
        root = self.expr(self.prog.diagram)
        return TypedProgram(self.prog, root, self.types, self.funs, self.players, self.lets, self.path)

    def reject_bends(self, e):
        if isinstance(e, A.Cup) or (isinstance(e, A.Dual) and isinstance(e.inner, A.Counit)):
            raise self.err(
                "upward bend not permitted: a string bent upwards (a unit) is not a well-formed open game",
                e,
                UnitBendError,
            )
        for child in _children(e):
            self.reject_bends(child)

    def fun(self, d: A.FunDecl):
        dom = tuple(self.type_(t) for _, t in d.params)
        cod = tuple(self.type_(t) for t in d.cod)
        self._check_names(d.body, {n for n, _ in d.params}, d)
        try:
            fn = compile_fun(d, dom, cod, self.funs)
        except DomainError as exc:
            raise self.err(f"in {d.name}: {exc}", d) from None
        info = FunInfo(d, dom, cod, fn)
        self.funs[d.name] = info
        self._check_total(info)

    def _check_names(self, e, params, d):
        if isinstance(e, A.FVar):
            if e.name not in params and e.name not in self.labels:
                raise self.err(f"unknown name {e.name!r} in {d.name}", e)
        elif isinstance(e, A.FCall):
            if e.name not in ("max", "min", "cons", "take", "len") and e.name not in self.funs:
                raise self.err(f"call to undeclared function {e.name!r} in {d.name}", e)
            for a in e.args:
                self._check_names(a, params, d)
        elif isinstance(e, A.FTable):
            return
        else:
            for c in _fchildren(e):
                self._check_names(c, params, d)

    def _check_total(self, info: FunInfo):
        """Evaluate on every input when the domain is finite and small enough:
        catches partial tables and results outside the declared codomain."""
        if not all(t.finite for t in info.dom):
            return
        n = 1
        for t in info.dom:
            n *= t.cardinality()
        if n > ENUMERATION_LIMIT:
            return
        for args in itertools.product(*(t.values() for t in info.dom)):
            try:
                info.fn(*args)
            except DomainError as exc:
                shown = ", ".join(t.fmt(a) for t, a in zip(info.dom, args))
                d = info.decl
                if isinstance(d.body, A.FTable) and "no table entry" in str(exc):
                    raise self.err(f"table for {d.name} is not total: no entry for ({shown})", d) from None
                raise self.err(f"codomain escape: {d.name}({shown}): {exc}", d) from None

    def player(self, d: A.PlayerDecl):
        obs = tuple(self.type_(t) for t in d.obs)
        choice = self.type_(d.choice)
        for t in obs + (choice,):
            if not t.finite:
                raise self.err(f"player {d.name}: observations and choices must be finite types, not {t}", d)
        kind = d.sel.kind
        if kind == "argmax":
            sel = ARGMAX
        elif kind == "fixpoint":
            sel = FIXPOINT
        elif kind == "match":
            obs_t = obs[0] if len(obs) == 1 else Product(obs)
            if len(obs) == 0 or obs_t != choice:
                raise self.err(f"player {d.name}: match needs the observation type to equal the choice type {choice}", d)
            sel = MATCH
        else:
            outcome = self.type_(d.sel.outcome)
            ranking = None
            if d.sel.ranking is not None:
                try:
                    ranking = [coerce(r, outcome) for r in d.sel.ranking]
                except DomainError as exc:
                    raise self.err(str(exc), d.sel) from None
            try:
                sel = Prefer(outcome, ranking)
            except SelectionError as exc:
                raise self.err(f"player {d.name}: {exc}", d.sel) from None
        self.players[d.name] = PlayerInfo(d, obs, choice, sel)

    # -- diagram expressions --

    def expr(self, e) -> TNode:
        if isinstance(e, A.Seq):
            kids = [self.expr(i) for i in e.items]
            acc = kids[0].iface
            for k, item in zip(kids[1:], e.items[1:]):
                nxt = k.iface
                if acc.fwd_out != nxt.fwd_in or acc.bwd_in != nxt.bwd_out:
                    raise self.err(
                        "cannot compose: the part above ends in "
                        f"{side(acc.fwd_out, acc.bwd_in)} (interface {acc}) but the part below starts with "
                        f"{side(nxt.fwd_in, nxt.bwd_out)} (interface {nxt})",
                        item,
                    )
                acc = Interface(acc.fwd_in, acc.bwd_out, nxt.fwd_out, nxt.bwd_in)
            return TNode(e, acc, tuple(kids), "seq")
        if isinstance(e, A.Par):
            kids = [self.expr(i) for i in e.items]
            ifs = [k.iface for k in kids]
            iface = Interface(
                sum((i.fwd_in for i in ifs), ()),
                sum((i.bwd_out for i in ifs), ()),
                sum((i.fwd_out for i in ifs), ()),
                sum((i.bwd_in for i in ifs), ()),
            )
            return TNode(e, iface, tuple(kids), "par")
        if isinstance(e, A.Dual):
            inner = self.expr(e.inner)
            self._require_computation(inner, e)
            i = inner.iface
            return TNode(e, Interface(bwd_out=i.fwd_out, bwd_in=i.fwd_in), (inner,), "dual")
        if isinstance(e, A.Copy):
            t = self.type_(e.type)
            return TNode(e, Interface(fwd_in=(t,), fwd_out=(t, t)), kind="copy")
        if isinstance(e, A.Delete):
            t = self.type_(e.type)
            return TNode(e, Interface(fwd_in=(t,)), kind="delete")
        if isinstance(e, A.Id):
            ts = tuple(self.type_(t) for t in e.types)
            return TNode(e, Interface(fwd_in=ts, fwd_out=ts), kind="id")
        if isinstance(e, A.Counit):
            t = self.type_(e.type)
            return TNode(e, Interface(fwd_in=(t,), bwd_out=(t,)), kind="counit")
        if isinstance(e, A.Braid):
            ts = tuple(self.type_(t) for t in e.types)
            try:
                p = Permutation(e.perm, ts)
            except CompositionError as exc:
                raise self.err(str(exc), e) from None
            return TNode(e, Interface(fwd_in=ts, fwd_out=p.out_types), kind="braid")
        if isinstance(e, A.Const):
            t = REAL if e.type is None else self.type_(e.type)
            try:
                coerce(e.value, t)
            except DomainError:
                raise self.err(f"constant {show_literal(e.value)} is not a value of type {t}", e) from None
            return TNode(e, Interface(fwd_out=(t,)), kind="const")
        if isinstance(e, A.Ref):
            if e.name in self.funs:
                f = self.funs[e.name]
                return TNode(e, Interface(fwd_in=f.dom, fwd_out=f.cod), kind="fun")
            if e.name in self.players:
                p = self.players[e.name]
                return TNode(e, Interface(fwd_in=p.obs, fwd_out=(p.choice,), bwd_in=p.outcome), kind="player")
            if e.name in self.lets:
                return TNode(e, self.lets[e.name].iface, (self.lets[e.name],), "let")
            if e.name in self.types:
                raise self.err(f"{e.name!r} is a type, not a diagram", e)
            raise self.err(f"undeclared identifier {e.name!r}", e)
        raise self.err(f"unexpected syntax {type(e).__name__}", e)

    def _require_computation(self, node: TNode, at):
        i = node.iface
        if i.bwd_in or i.bwd_out:
            raise self.err(f"^* needs a covariant computation, but this part has interface {i}", at)
        bad = _first_strategic(node)
        if bad is not None:
            raise self.err(f"^* applies only to computations; {bad} is not one", at)


def _first_strategic(node: TNode):
    if node.kind == "player":
        return f"player {node.expr.name!r}"
    if node.kind == "let":
        return f"the boxed game {node.expr.name!r}"
    if node.kind == "counit":
        return "counit"
    for c in node.children:
        r = _first_strategic(c)
        if r is not None:
            return r
    return None


def _children(e):
    if isinstance(e, (A.Seq, A.Par)):
        return e.items
    if isinstance(e, A.Dual):
        return (e.inner,)
    return ()


def _fchildren(e):
    if isinstance(e, A.FBin):
        return (e.left, e.right)
    if isinstance(e, A.FUn):
        return (e.operand,)
    if isinstance(e, A.FIf):
        return (e.cond, e.then, e.other)
    if isinstance(e, (A.FTuple, A.FList)):
        return e.items
    if isinstance(e, A.FIndex):
        return (e.target,)
    return ()


def typecheck(prog: A.Program, path: str | None = None) -> TypedProgram:
    return Checker(prog, path).run()
