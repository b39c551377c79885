"""Turning a checked program into an open game with the combinators."""
from __future__ import annotations

from .. import combinators as C
from ..core import OpenGame
from ..domains import REAL
from . import syntax as A
from .typecheck import TNode, TypedProgram
from .values import coerce


class Elaborator:
    def __init__(self, tp: TypedProgram):
        self.tp = tp
        self.players = {}
        self.funs = {}
        self.lets = {}

    def player(self, name):
        if name not in self.players:
            p = self.tp.players[name]
            self.players[name] = C.lift_player(name, list(p.obs), p.choice, p.sel)
        return self.players[name]

    def fun(self, name):
        if name not in self.funs:
            f = self.tp.funs[name]
            self.funs[name] = C.lift_covariant(f.fn, f.dom, f.cod, name)
        return self.funs[name]

    def let(self, name):
        # the body is built once; each occurrence gets its own box
        if name not in self.lets:
            self.lets[name] = self.node(self.tp.lets[name])
        return C.box(name, self.lets[name])

    def node(self, n: TNode) -> OpenGame:
        e, k = n.expr, n.kind
        if k == "seq":
            return C.seq(*(self.node(c) for c in n.children))
        if k == "par":
            return C.par(*(self.node(c) for c in n.children))
        if k == "dual":
            inner = n.children[0]
            if inner.kind == "fun":
                f = self.tp.funs[inner.expr.name]
                return C.lift_contravariant(f.fn, f.dom, f.cod, inner.expr.name)
            return C.dual(self.node(inner))
        if k == "player":
            return self.player(e.name)
        if k == "fun":
            return self.fun(e.name)
        if k == "let":
            return self.let(e.name)
        i = n.iface
        if k == "copy":
            return C.copy(i.fwd_in[0])
        if k == "delete":
            return C.delete(i.fwd_in[0])
        if k == "id":
            return C.identity(list(i.fwd_in))
        if k == "counit":
            return C.counit(i.fwd_in[0])
        if k == "braid":
            return C.braid(C.Permutation(e.perm, i.fwd_in))
        if k == "const":
            t = i.fwd_out[0]
            return C.const(coerce(e.value, t), t)
        raise ValueError(f"cannot elaborate {k!r}")


def elaborate(tp: TypedProgram) -> OpenGame:
    return Elaborator(tp).node(tp.root)
