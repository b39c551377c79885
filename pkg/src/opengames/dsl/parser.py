"""Recursive-descent parser for game files.

    program := decl* "diagram" "=" expr
    expr    := term (">>" term)*        # top to bottom: G >> H is H after G
    term    := factor ("||" factor)*    # side by side
    factor  := atom ["^*"]

See docs/grammar.md for the full grammar.
"""
from __future__ import annotations

from fractions import Fraction

from ..domains import Grid, NumSet
from ..errors import DomainError, ParseError, TypeCheckError
from . import syntax as A
from .lexer import Token, tokenize
from .values import coerce, resolve_type, show_literal

KEYWORDS = frozenset(
    """type fun player let diagram unit real int grid step list table if then else and or not
    argmax fixpoint match prefer copy delete id counit cup braid const max min cons take len""".split()
)
BUILTINS = ("max", "min", "cons", "take", "len")
SELECTORS = ("argmax", "fixpoint", "match", "prefer")
COMPARE = ("==", "!=", "<", "<=", ">", ">=")


class Parser:
    def __init__(self, text: str, path: str | None = None):
        self.path = path
        self.toks = tokenize(text, path)
        self.i = 0

    # -- token helpers --

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col, self.path)

    def at(self, value, kind=None):
        t = self.tok
        return t.value == value and t.kind in ((kind,) if kind else ("op", "name"))

    def accept(self, value):
        if self.at(value):
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.at(value):
            raise self.error(f"expected {value!r} but found {self.tok}")
        t = self.tok
        self.i += 1
        return t

    def pos(self):
        return (self.tok.line, self.tok.col)

    def name(self, what="identifier"):
        t = self.tok
        if t.kind != "name":
            raise self.error(f"expected {what} but found {t}")
        if t.value in KEYWORDS:
            raise self.error(f"{t.value!r} is a reserved word and cannot be used as {what}")
        self.i += 1
        return t.value

    def integer(self):
        neg = self.accept("-")
        t = self.tok
        if t.kind != "number" or "." in t.value:
            raise self.error(f"expected an integer but found {t}")
        self.i += 1
        return -int(t.value) if neg else int(t.value)

    def number(self):
        neg = self.accept("-")
        t = self.tok
        if t.kind != "number":
            raise self.error(f"expected a number but found {t}")
        self.i += 1
        v = Fraction(t.value)
        return -v if neg else v

    # -- program --

    def program(self) -> A.Program:
        decls, seen = [], {}
        while not self.at("diagram"):
            if self.tok.kind == "eof":
                raise self.error("expected a 'diagram = ...' definition before end of input")
            d = self.decl()
            space = "type" if isinstance(d, A.TypeDecl) else "game"
            if (space, d.name) in seen:
                line, col = d.pos
                raise ParseError(
                    f"duplicate identifier {d.name!r} (first declared at line {seen[space, d.name][0]})",
                    line,
                    col,
                    self.path,
                )
            seen[space, d.name] = d.pos
            decls.append(d)
        p = self.pos()
        self.expect("diagram")
        self.expect("=")
        diagram = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok} after the diagram")
        return A.Program(tuple(decls), diagram, pos=p)

    def decl(self):
        p = self.pos()
        if self.accept("type"):
            name = self.name("a type name")
            self.expect("=")
            return A.TypeDecl(name, self.type_(), pos=p)
        if self.accept("fun"):
            return self.fun_decl(p)
        if self.accept("player"):
            name = self.name("a player name")
            self.expect(":")
            obs = self.strands()
            self.expect("->")
            choice = self.type_()
            return A.PlayerDecl(name, obs, choice, self.selector(), pos=p)
        if self.accept("let"):
            name = self.name("a name")
            self.expect("=")
            return A.LetDecl(name, self.expr(), pos=p)
        raise self.error(f"expected a declaration (type, fun, player, let) or 'diagram' but found {self.tok}")

    def fun_decl(self, p):
        name = self.name("a function name")
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                pname = self.name("a parameter name")
                self.expect(":")
                params.append((pname, self.type_()))
                if not self.accept(","):
                    break
        self.expect(")")
        if len({n for n, _ in params}) != len(params):
            raise ParseError(f"duplicate parameter in {name}", p[0], p[1], self.path)
        self.expect("->")
        if self.at("["):
            cod, multi = self.strand_list(), True
        else:
            cod, multi = (self.type_(),), False
        self.expect("=")
        if self.at("table"):
            body = self.table()
        else:
            body = self.fexpr()
        return A.FunDecl(name, tuple(params), cod, multi, body, pos=p)

    def strand_list(self):
        self.expect("[")
        items = []
        if not self.at("]"):
            items.append(self.type_())
            while self.accept(","):
                items.append(self.type_())
        self.expect("]")
        return tuple(items)

    def strands(self):
        if self.at("["):
            return self.strand_list()
        t = self.type_()
        return () if isinstance(t, A.TUnit) else (t,)

    def selector(self):
        p = self.pos()
        t = self.tok
        if t.kind != "name" or t.value not in SELECTORS:
            raise self.error(f"expected a selection (argmax, fixpoint, match, prefer) but found {t}")
        self.i += 1
        if t.value != "prefer":
            return A.Selector(t.value, pos=p)
        self.expect("[")
        outcome = self.type_()
        ranking = None
        if self.accept(";"):
            ranking = [self.literal()]
            while self.accept(","):
                ranking.append(self.literal())
            ranking = tuple(ranking)
        self.expect("]")
        return A.Selector("prefer", outcome, ranking, pos=p)

    # -- types --

    def type_(self):
        p = self.pos()
        if self.accept("unit"):
            return A.TUnit(pos=p)
        if self.accept("real"):
            return A.TReal(pos=p)
        if self.accept("int"):
            lo = self.integer()
            self.expect("..")
            return A.TInt(lo, self.integer(), pos=p)
        if self.accept("grid"):
            lo = self.number()
            self.expect("..")
            hi = self.number()
            self.expect("step")
            return A.TGrid(lo, hi, self.number(), pos=p)
        if self.accept("list"):
            self.expect("[")
            elem = self.type_()
            self.expect(";")
            n = self.integer()
            self.expect("]")
            return A.TList(elem, n, pos=p)
        if self.accept("{"):
            if self.tok.kind == "name":
                names = [self.name("a label")]
                while self.accept(","):
                    names.append(self.name("a label"))
                self.expect("}")
                return A.TLabels(tuple(names), pos=p)
            pts = [self.number()]
            while self.accept(","):
                pts.append(self.number())
            self.expect("}")
            return A.TNumSet(tuple(pts), pos=p)
        if self.accept("("):
            items = [self.type_()]
            while self.accept(","):
                items.append(self.type_())
            self.expect(")")
            if len(items) == 1:
                return items[0]
            return A.TProduct(tuple(items), pos=p)
        if self.tok.kind == "name" and self.tok.value not in KEYWORDS:
            return A.TName(self.name(), pos=p)
        raise self.error(f"expected a type but found {self.tok}")

    # -- literals --

    def literal(self):
        p = self.pos()
        if self.at("-") or self.tok.kind == "number":
            return A.LNum(self.number(), pos=p)
        if self.accept("("):
            items = []
            if not self.at(")"):
                items.append(self.literal())
                while self.accept(","):
                    items.append(self.literal())
            self.expect(")")
            if len(items) == 1:
                return items[0]
            return A.LTuple(tuple(items), pos=p)
        if self.accept("["):
            items = []
            if not self.at("]"):
                items.append(self.literal())
                while self.accept(","):
                    items.append(self.literal())
            self.expect("]")
            return A.LList(tuple(items), pos=p)
        return A.LName(self.name("a literal"), pos=p)

    def table(self):
        p = self.pos()
        self.expect("table")
        self.expect("{")
        entries, default = [], None
        while not self.at("}"):
            if self.at("_"):
                dp = self.tok
                self.i += 1
                self.expect(":")
                if default is not None:
                    raise self.error("table has two default entries", dp)
                default = self.literal()
            else:
                key = self.literal()
                self.expect(":")
                entries.append((key, self.literal()))
            if not self.accept(";"):
                break
        self.expect("}")
        return A.FTable(tuple(entries), default, pos=p)

    # -- function bodies --

    def fexpr(self):
        p = self.pos()
        if self.accept("if"):
            c = self.fexpr()
            self.expect("then")
            t = self.fexpr()
            self.expect("else")
            return A.FIf(c, t, self.fexpr(), pos=p)
        return self.f_or()

    def f_or(self):
        left = self.f_and()
        while self.at("or"):
            p = self.pos()
            self.i += 1
            left = A.FBin("or", left, self.f_and(), pos=p)
        return left

    def f_and(self):
        left = self.f_not()
        while self.at("and"):
            p = self.pos()
            self.i += 1
            left = A.FBin("and", left, self.f_not(), pos=p)
        return left

    def f_not(self):
        p = self.pos()
        if self.accept("not"):
            return A.FUn("not", self.f_not(), pos=p)
        return self.f_cmp()

    def f_cmp(self):
        left = self.f_add()
        if self.tok.kind == "op" and self.tok.value in COMPARE:
            p = self.pos()
            op = self.tok.value
            self.i += 1
            return A.FBin(op, left, self.f_add(), pos=p)
        return left

    def f_add(self):
        left = self.f_mul()
        while self.tok.kind == "op" and self.tok.value in ("+", "-"):
            p = self.pos()
            op = self.tok.value
            self.i += 1
            left = A.FBin(op, left, self.f_mul(), pos=p)
        return left

    def f_mul(self):
        left = self.f_unary()
        while self.tok.kind == "op" and self.tok.value in ("*", "/"):
            p = self.pos()
            op = self.tok.value
            self.i += 1
            left = A.FBin(op, left, self.f_unary(), pos=p)
        return left

    def f_unary(self):
        p = self.pos()
        if self.accept("-"):
            return A.FUn("-", self.f_unary(), pos=p)
        e = self.f_primary()
        while self.at("["):
            ip = self.pos()
            self.i += 1
            idx = self.integer()
            self.expect("]")
            e = A.FIndex(e, idx, pos=ip)
        return e

    def f_args(self):
        self.expect("(")
        args = []
        if not self.at(")"):
            args.append(self.fexpr())
            while self.accept(","):
                args.append(self.fexpr())
        self.expect(")")
        return tuple(args)

    def f_primary(self):
        p = self.pos()
        t = self.tok
        if t.kind == "number":
            self.i += 1
            return A.FNum(Fraction(t.value), pos=p)
        if self.accept("("):
            items = [self.fexpr()]
            while self.accept(","):
                items.append(self.fexpr())
            self.expect(")")
            return items[0] if len(items) == 1 else A.FTuple(tuple(items), pos=p)
        if self.accept("["):
            items = []
            if not self.at("]"):
                items.append(self.fexpr())
                while self.accept(","):
                    items.append(self.fexpr())
            self.expect("]")
            return A.FList(tuple(items), pos=p)
        if t.kind == "name" and t.value in BUILTINS:
            self.i += 1
            return A.FCall(t.value, self.f_args(), pos=p)
        if t.kind == "name" and t.value not in KEYWORDS:
            self.i += 1
            if self.at("("):
                return A.FCall(t.value, self.f_args(), pos=p)
            return A.FVar(t.value, pos=p)
        raise self.error(f"expected an expression but found {t}")

    # -- diagram expressions --

    def expr(self):
        p = self.pos()
        items = [self.term()]
        while self.accept(">>"):
            items.append(self.term())
        return items[0] if len(items) == 1 else A.Seq(tuple(items), pos=p)

    def term(self):
        p = self.pos()
        items = [self.factor()]
        while self.accept("||"):
            items.append(self.factor())
        return items[0] if len(items) == 1 else A.Par(tuple(items), pos=p)

    def factor(self):
        p = self.pos()
        a = self.atom()
        if self.accept("^*"):
            return A.Dual(a, pos=p)
        return a

    def bracket_type(self):
        self.expect("[")
        t = self.type_()
        self.expect("]")
        return t

    def atom(self):
        p = self.pos()
        t = self.tok
        if self.accept("("):
            e = self.expr()
            self.expect(")")
            return e
        if self.accept("copy"):
            return A.Copy(self.bracket_type(), pos=p)
        if self.accept("delete"):
            return A.Delete(self.bracket_type(), pos=p)
        if self.accept("counit"):
            return A.Counit(self.bracket_type(), pos=p)
        if self.accept("cup"):
            return A.Cup(self.bracket_type(), pos=p)
        if self.accept("id"):
            return A.Id(self.strand_list(), pos=p)
        if self.accept("braid"):
            self.expect("[")
            perm = [self.integer()]
            while self.accept(","):
                perm.append(self.integer())
            self.expect(";")
            types = [self.type_()]
            while self.accept(","):
                types.append(self.type_())
            self.expect("]")
            return A.Braid(tuple(perm), tuple(types), pos=p)
        if self.accept("const"):
            ty = self.bracket_type() if self.at("[") else None
            self.expect("(")
            v = self.literal()
            self.expect(")")
            return A.Const(ty, v, pos=p)
        if t.kind == "name" and t.value not in KEYWORDS:
            self.i += 1
            return A.Ref(t.value, pos=p)
        raise self.error(f"expected a diagram (name, copy, delete, id, counit, braid, const or '(') but found {t}")


def _check_numeric_literals(prog: A.Program, path):
    """Numbers written against grid or numeric-set types must lie on them.

    Done at parse time so that off-grid constants never reach the checker.
    Names that do not resolve are left for the type checker to report.
    """
    types = {}

    def res(t):
        try:
            return resolve_type(t, types, path=path)
        except (DomainError, TypeCheckError):
            return None

    def check(lit, t):
        if t is None:
            return
        if isinstance(t, (Grid, NumSet)) and isinstance(lit, A.LNum):
            if not t.contains(lit.value):
                line, col = lit.pos or (None, None)
                raise ParseError(f"{show_literal(lit)} is not on {t}", line, col, path)
            return
        try:
            coerce(lit, t)
        except DomainError:
            pass  # other mismatches are type errors, reported later

    def walk_expr(e):
        if isinstance(e, (A.Seq, A.Par)):
            for i in e.items:
                walk_expr(i)
        elif isinstance(e, A.Dual):
            walk_expr(e.inner)
        elif isinstance(e, A.Const) and e.type is not None:
            check(e.value, res(e.type))

    for d in prog.decls:
        if isinstance(d, A.TypeDecl):
            try:
                types[d.name] = resolve_type(d.type, types, alias=d.name, path=path)
            except DomainError as exc:
                line, col = d.type.pos or d.pos
                raise ParseError(str(exc), line, col, path) from None
            except TypeCheckError:
                pass
        elif isinstance(d, A.FunDecl) and isinstance(d.body, A.FTable):
            doms = [res(t) for _, t in d.params]
            cod = [res(t) for t in d.cod]
            cod_t = cod[0] if len(cod) == 1 else None
            for key, val in d.body.entries:
                if len(doms) == 1:
                    check(key, doms[0])
                elif isinstance(key, A.LTuple) and len(key.items) == len(doms):
                    for k, t in zip(key.items, doms):
                        check(k, t)
                check(val, cod_t)
            if d.body.default is not None:
                check(d.body.default, cod_t)
        elif isinstance(d, A.LetDecl):
            walk_expr(d.expr)
    walk_expr(prog.diagram)


def parse(text: str, path: str | None = None) -> A.Program:
    """Parse a game file; raises LexError or ParseError with line and column."""
    prog = Parser(text, path).program()
    _check_numeric_literals(prog, path)
    return prog
