"""Pretty-printer: turns a syntax tree back into source that parses to it."""
from __future__ import annotations

from . import syntax as A
from .values import fmt_number, show_literal


def fmt_type(t) -> str:
    if isinstance(t, A.TUnit):
        return "unit"
    if isinstance(t, A.TReal):
        return "real"
    if isinstance(t, A.TLabels):
        return "{" + ", ".join(t.names) + "}"
    if isinstance(t, A.TNumSet):
        return "{" + ", ".join(fmt_number(p) for p in t.points) + "}"
    if isinstance(t, A.TInt):
        return f"int {t.lo}..{t.hi}"
    if isinstance(t, A.TGrid):
        return f"grid {fmt_number(t.lo)}..{fmt_number(t.hi)} step {fmt_number(t.step)}"
    if isinstance(t, A.TProduct):
        return "(" + ", ".join(fmt_type(i) for i in t.items) + ")"
    if isinstance(t, A.TList):
        return f"list[{fmt_type(t.element)}; {t.max_len}]"
    if isinstance(t, A.TName):
        return t.name
    raise TypeError(t)


def fmt_fexpr(e) -> str:
    if isinstance(e, A.FNum):
        s = fmt_number(e.value)
        return f"({s})" if s.startswith("-") else s
    if isinstance(e, A.FVar):
        return e.name
    if isinstance(e, A.FBin):
        return f"({fmt_fexpr(e.left)} {e.op} {fmt_fexpr(e.right)})"
    if isinstance(e, A.FUn):
        sep = " " if e.op == "not" else ""
        return f"({e.op}{sep}{fmt_fexpr(e.operand)})"
    if isinstance(e, A.FIf):
        return f"(if {fmt_fexpr(e.cond)} then {fmt_fexpr(e.then)} else {fmt_fexpr(e.other)})"
    if isinstance(e, A.FCall):
        return f"{e.name}(" + ", ".join(fmt_fexpr(a) for a in e.args) + ")"
    if isinstance(e, A.FTuple):
        return "(" + ", ".join(fmt_fexpr(a) for a in e.items) + ")"
    if isinstance(e, A.FList):
        return "[" + ", ".join(fmt_fexpr(a) for a in e.items) + "]"
    if isinstance(e, A.FIndex):
        return f"{fmt_fexpr(e.target)}[{e.index}]"
    if isinstance(e, A.FTable):
        lines = [f"    {show_literal(k)}: {show_literal(v)};" for k, v in e.entries]
        if e.default is not None:
            lines.append(f"    _: {show_literal(e.default)};")
        return "table {\n" + "\n".join(lines) + "\n  }"
    raise TypeError(e)


def fmt_expr(e, ctx="top") -> str:
    if isinstance(e, A.Seq):
        s = " >> ".join(fmt_expr(i, "seq") for i in e.items)
        return s if ctx == "top" else f"({s})"
    if isinstance(e, A.Par):
        s = " || ".join(fmt_expr(i, "par") for i in e.items)
        return s if ctx in ("top", "seq") else f"({s})"
    if isinstance(e, A.Dual):
        return fmt_expr(e.inner, "dual") + "^*"
    if isinstance(e, A.Copy):
        return f"copy[{fmt_type(e.type)}]"
    if isinstance(e, A.Delete):
        return f"delete[{fmt_type(e.type)}]"
    if isinstance(e, A.Counit):
        return f"counit[{fmt_type(e.type)}]"
    if isinstance(e, A.Cup):
        return f"cup[{fmt_type(e.type)}]"
    if isinstance(e, A.Id):
        return "id[" + ", ".join(fmt_type(t) for t in e.types) + "]"
    if isinstance(e, A.Braid):
        return (
            "braid["
            + ", ".join(str(i) for i in e.perm)
            + "; "
            + ", ".join(fmt_type(t) for t in e.types)
            + "]"
        )
    if isinstance(e, A.Const):
        ty = f"[{fmt_type(e.type)}]" if e.type is not None else ""
        return f"const{ty}({show_literal(e.value)})"
    if isinstance(e, A.Ref):
        return e.name
    raise TypeError(e)


def fmt_selector(s: A.Selector) -> str:
    if s.kind != "prefer":
        return s.kind
    rank = ""
    if s.ranking is not None:
        rank = "; " + ", ".join(show_literal(r) for r in s.ranking)
    return f"prefer[{fmt_type(s.outcome)}{rank}]"


def fmt_decl(d) -> str:
    if isinstance(d, A.TypeDecl):
        return f"type {d.name} = {fmt_type(d.type)}"
    if isinstance(d, A.FunDecl):
        params = ", ".join(f"{n}: {fmt_type(t)}" for n, t in d.params)
        if d.multi:
            cod = "[" + ", ".join(fmt_type(t) for t in d.cod) + "]"
        else:
            cod = fmt_type(d.cod[0])
        return f"fun {d.name}({params}) -> {cod} =\n  {fmt_fexpr(d.body)}"
    if isinstance(d, A.PlayerDecl):
        obs = "[" + ", ".join(fmt_type(t) for t in d.obs) + "]"
        return f"player {d.name} : {obs} -> {fmt_type(d.choice)} {fmt_selector(d.sel)}"
    if isinstance(d, A.LetDecl):
        return f"let {d.name} =\n  {fmt_expr(d.expr)}"
    raise TypeError(d)


def format_program(prog: A.Program) -> str:
    parts = [fmt_decl(d) for d in prog.decls]
    parts.append(f"diagram =\n  {fmt_expr(prog.diagram)}")
    return "\n\n".join(parts) + "\n"
