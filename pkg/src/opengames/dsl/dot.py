"""Graphviz export of a checked diagram.

Atoms become nodes, strings become edges.  Identities, braids and counits are
pure wiring and produce no node: a string bent by a counit shows up as one
edge from the producer of the value to whoever receives it back.  Backward
strings are dashed and carry ``class="contravariant"``.  Node shapes follow
the usual drawing convention: a triangle when nothing enters from above, an
inverted triangle when nothing leaves below, a dot for copy and delete, and a
circle otherwise.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .typecheck import TNode, TypedProgram

# pin roles; "src" roles produce a value, the others consume one
_SOURCES = {"fwd_out", "bwd_out", "top_in", "bottom_in"}


@dataclass
class _Ports:
    top_f: list = field(default_factory=list)
    top_b: list = field(default_factory=list)
    bot_f: list = field(default_factory=list)
    bot_b: list = field(default_factory=list)


def _quote(s: str) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


class _Builder:
    def __init__(self, tp: TypedProgram, collapse: bool):
        self.tp = tp
        self.collapse = collapse
        self.parent = []  # union-find
        self.pins = {}  # element -> (node index, role, position, type)
        self.nodes = []  # (name, label, shape, cluster id)
        self.clusters = []  # (id, label, parent cluster id)
        self.cluster = None

    def elem(self):
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def node(self, label, shape):
        idx = len(self.nodes)
        self.nodes.append((f"n{idx}", label, shape, self.cluster))
        return idx

    def pin(self, node, role, pos, t):
        e = self.elem()
        self.pins[e] = (node, role, pos, t)
        return e

    def atom(self, label, iface, kind=""):
        if kind in ("copy", "delete"):
            shape = "point"
        elif not iface.fwd_in and not iface.bwd_out:
            shape = "triangle"
        elif not iface.fwd_out and not iface.bwd_in:
            shape = "invtriangle"
        else:
            shape = "circle"
        n = self.node(label, shape)
        p = _Ports()
        p.top_f = [self.pin(n, "fwd_in", i, t) for i, t in enumerate(iface.fwd_in)]
        p.top_b = [self.pin(n, "bwd_out", i, t) for i, t in enumerate(iface.bwd_out)]
        p.bot_f = [self.pin(n, "fwd_out", i, t) for i, t in enumerate(iface.fwd_out)]
        p.bot_b = [self.pin(n, "bwd_in", i, t) for i, t in enumerate(iface.bwd_in)]
        return p

    def build(self, n: TNode) -> _Ports:
        e, k, i = n.expr, n.kind, n.iface
        if k == "seq":
            parts = [self.build(c) for c in n.children]
            for up, down in zip(parts, parts[1:]):
                for a, b in zip(up.bot_f, down.top_f):
                    self.union(a, b)
                for a, b in zip(up.bot_b, down.top_b):
                    self.union(a, b)
            return _Ports(parts[0].top_f, parts[0].top_b, parts[-1].bot_f, parts[-1].bot_b)
        if k == "par":
            out = _Ports()
            for c in n.children:
                p = self.build(c)
                out.top_f += p.top_f
                out.top_b += p.top_b
                out.bot_f += p.bot_f
                out.bot_b += p.bot_b
            return out
        if k == "id":
            ws = [self.elem() for _ in i.fwd_in]
            return _Ports(top_f=ws, bot_f=list(ws))
        if k == "braid":
            ws = [self.elem() for _ in i.fwd_in]
            return _Ports(top_f=ws, bot_f=[ws[j] for j in e.perm])
        if k == "counit":
            w = self.elem()
            return _Ports(top_f=[w], top_b=[w])
        if k == "dual":
            inner = n.children[0]
            if inner.kind == "id":
                ws = [self.elem() for _ in i.bwd_in]
                return _Ports(top_b=ws, bot_b=list(ws))
            if inner.kind == "braid":
                ws = [self.elem() for _ in i.bwd_in]
                return _Ports(top_b=[ws[j] for j in inner.expr.perm], bot_b=ws)
            return self.atom(_label(inner) + "*", i, inner.kind)
        if k == "let":
            if self.collapse:
                return self.atom(e.name, i)
            cid = len(self.clusters)
            self.clusters.append((cid, e.name, self.cluster))
            saved, self.cluster = self.cluster, cid
            try:
                return self.build(n.children[0])
            finally:
                self.cluster = saved
        return self.atom(_label(n), i, k)

    def boundary(self, ports: _Ports):
        def bnode(label, role, pos, t):
            idx = self.node(label, "plaintext")
            return self.pin(idx, role, pos, t)

        i = self.tp.root.iface
        for j, (e, t) in enumerate(zip(ports.top_f, i.fwd_in)):
            self.union(e, bnode(f"{t}", "top_in", j, t))
        for j, (e, t) in enumerate(zip(ports.top_b, i.bwd_out)):
            self.union(e, bnode(f"{t}*", "top_out", j, t))
        for j, (e, t) in enumerate(zip(ports.bot_f, i.fwd_out)):
            self.union(e, bnode(f"{t}", "bottom_out", j, t))
        for j, (e, t) in enumerate(zip(ports.bot_b, i.bwd_in)):
            self.union(e, bnode(f"{t}*", "bottom_in", j, t))

    def edges(self):
        groups = {}
        for e, info in self.pins.items():
            groups.setdefault(self.find(e), []).append(info)
        out = []
        for infos in groups.values():
            src = [p for p in infos if p[1] in _SOURCES]
            dst = [p for p in infos if p[1] not in _SOURCES]
            backward = any(p[1] in ("bwd_in", "bwd_out", "top_out", "bottom_in") for p in infos)
            for s in src:
                for d in dst:
                    out.append((s[0], s[2], d[0], d[2], str(s[3]), backward))
        out.sort()
        return out


def _label(n: TNode) -> str:
    e, k = n.expr, n.kind
    if k in ("player", "fun", "let"):
        return e.name
    if k == "const":
        from .values import show_literal

        return show_literal(e.value)
    return k


def export_dot(tp: TypedProgram, name: str = "game", collapse: bool = False) -> str:
    """Deterministic DOT text for a checked program.

    Let-bound boxes are drawn as labelled clusters, or as single nodes with
    ``collapse=True``.
    """
    b = _Builder(tp, collapse)
    ports = b.build(tp.root)
    b.boundary(ports)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=TB;", '  node [fontname="Helvetica"];']

    def emit_nodes(cluster, indent):
        for nm, label, shape, cl in b.nodes:
            if cl == cluster:
                lines.append(f"{indent}{nm} [label={_quote(label)}, shape={shape}];")
        for cid, label, parent in b.clusters:
            if parent == cluster:
                lines.append(f"{indent}subgraph cluster_{cid} {{")
                lines.append(f"{indent}  label={_quote(label)};")
                emit_nodes(cid, indent + "  ")
                lines.append(f"{indent}}}")

    emit_nodes(None, "  ")
    for s, _, d, _, t, backward in b.edges():
        attrs = f"label={_quote(t)}"
        if backward:
            attrs += ', style=dashed, class="contravariant"'
        lines.append(f"  {b.nodes[s][0]} -> {b.nodes[d][0]} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def census(dot_text: str) -> dict:
    """Counts of node shapes and edges in DOT produced by :func:`export_dot`."""
    import re

    shapes = {}
    for m in re.finditer(r"^\s*n\d+ \[label=.*shape=(\w+)\];$", dot_text, re.M):
        shapes[m.group(1)] = shapes.get(m.group(1), 0) + 1
    edges = len(re.findall(r"^\s*n\d+ -> n\d+", dot_text, re.M))
    dashed = len(re.findall(r"^\s*n\d+ -> n\d+ .*style=dashed", dot_text, re.M))
    return {"shapes": shapes, "edges": edges, "dashed": dashed}
