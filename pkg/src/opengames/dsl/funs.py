"""Compiling ``fun`` bodies to Python callables over strand values."""
from __future__ import annotations

import math
from fractions import Fraction

from ..domains import BoundedList, FiniteType, Grid, IntRange, Labels, NumSet, Product, Real, Unit, exact
from ..errors import DomainError
from . import syntax as A
from .values import coerce


def _num(v, what="number"):
    if isinstance(v, bool) or not isinstance(v, (int, float, Fraction)):
        raise DomainError(f"expected a {what}, got {v!r}")
    return v


def _arith(op, a, b):
    a, b = _num(a), _num(b)
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if b == 0:
        raise DomainError("division by zero")
    if isinstance(a, float) or isinstance(b, float):
        return a / b
    return Fraction(a) / b


def convert(v, t: FiniteType):
    """Check that a computed value lies in ``t`` and return its canonical form."""
    if isinstance(t, Real):
        x = float(_num(v, "real number"))
        if not math.isfinite(x):
            raise DomainError(f"result {x} is not a finite real")
        return x
    if isinstance(t, Unit):
        if v == ():
            return ()
    elif isinstance(t, Labels):
        if isinstance(v, str) and v in t.names:
            return v
    elif isinstance(t, IntRange):
        if not isinstance(v, bool) and isinstance(v, (int, Fraction, float)) and v == int(v) and t.contains(int(v)):
            return int(v)
    elif isinstance(t, (Grid, NumSet)):
        if not isinstance(v, bool) and isinstance(v, (int, Fraction, float)):
            q = exact(v)
            if t.contains(q):
                return q
    elif isinstance(t, Product):
        if isinstance(v, tuple) and len(v) == len(t.items):
            return tuple(convert(x, ti) for x, ti in zip(v, t.items))
    elif isinstance(t, BoundedList):
        if isinstance(v, tuple) and len(v) <= t.max_len:
            return tuple(convert(x, t.element) for x in v)
    raise DomainError(f"value {_show(v)} is not in {t}")


def _show(v):
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else str(float(v))
    if isinstance(v, tuple):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return repr(v) if not isinstance(v, str) else v


def compile_expr(e, params: dict, funs: dict):
    """Closure taking the argument tuple.  ``params`` maps names to positions;
    other bare names are label constants."""
    if isinstance(e, A.FNum):
        v = e.value
        return lambda env: v
    if isinstance(e, A.FVar):
        if e.name in params:
            i = params[e.name]
            return lambda env: env[i]
        name = e.name
        return lambda env: name
    if isinstance(e, A.FBin):
        lf = compile_expr(e.left, params, funs)
        rf = compile_expr(e.right, params, funs)
        op = e.op
        if op == "and":
            return lambda env: bool(lf(env)) and bool(rf(env))
        if op == "or":
            return lambda env: bool(lf(env)) or bool(rf(env))
        if op == "==":
            return lambda env: lf(env) == rf(env)
        if op == "!=":
            return lambda env: lf(env) != rf(env)
        if op in ("<", "<=", ">", ">="):
            cmp = {"<": lambda a, b: a < b, "<=": lambda a, b: a <= b, ">": lambda a, b: a > b, ">=": lambda a, b: a >= b}[op]
            return lambda env: cmp(_num(lf(env)), _num(rf(env)))
        return lambda env: _arith(op, lf(env), rf(env))
    if isinstance(e, A.FUn):
        f = compile_expr(e.operand, params, funs)
        if e.op == "not":
            return lambda env: not f(env)
        return lambda env: -_num(f(env))
    if isinstance(e, A.FIf):
        c = compile_expr(e.cond, params, funs)
        t = compile_expr(e.then, params, funs)
        o = compile_expr(e.other, params, funs)
        return lambda env: t(env) if c(env) else o(env)
    if isinstance(e, A.FTuple) or isinstance(e, A.FList):
        fs = [compile_expr(i, params, funs) for i in e.items]
        return lambda env: tuple(f(env) for f in fs)
    if isinstance(e, A.FIndex):
        f = compile_expr(e.target, params, funs)
        i = e.index

        def index(env):
            v = f(env)
            if not isinstance(v, tuple) or not -len(v) <= i < len(v):
                raise DomainError(f"index {i} out of range for {_show(v)}")
            return v[i]

        return index
    if isinstance(e, A.FCall):
        fs = [compile_expr(a, params, funs) for a in e.args]
        return _call(e, fs, funs)
    raise TypeError(f"not a function expression: {e!r}")


def _call(e, fs, funs):
    name, n = e.name, len(fs)
    if name in ("max", "min"):
        if n == 0:
            raise DomainError(f"{name} needs at least one argument")
        pick = max if name == "max" else min
        return lambda env: pick(_num(f(env)) for f in fs)
    if name == "cons":
        if n != 2:
            raise DomainError("cons takes an element and a list")
        x, xs = fs

        def cons(env):
            rest = xs(env)
            if not isinstance(rest, tuple):
                raise DomainError(f"cons onto a non-list {_show(rest)}")
            return (x(env),) + rest

        return cons
    if name == "take":
        if n != 2:
            raise DomainError("take takes a count and a list")
        k, xs = fs
        return lambda env: xs(env)[: int(_num(k(env)))]
    if name == "len":
        if n != 1:
            raise DomainError("len takes one list")
        (xs,) = fs
        return lambda env: len(xs(env))
    if name not in funs:
        raise DomainError(f"call to undeclared function {name!r}")
    target = funs[name]
    if len(target.dom) != n:
        raise DomainError(f"{name} takes {len(target.dom)} arguments, got {n}")
    return lambda env: target.fn(*(f(env) for f in fs))


def compile_fun(decl: A.FunDecl, dom: tuple, cod: tuple, funs: dict):
    """Callable taking one argument per domain strand.  Returns a bare value
    for a one-strand codomain, else a tuple with one entry per strand."""
    single = len(cod) == 1
    cod_t = cod[0] if single else (Product(cod) if cod else Unit())
    if isinstance(decl.body, A.FTable):
        table = {}
        key_t = dom[0] if len(dom) == 1 else Product(dom)
        for k, v in decl.body.entries:
            key = coerce(k, key_t)
            if key in table:
                raise DomainError(f"duplicate table entry for {_show(key)}")
            table[key] = coerce(v, cod_t)
        default = None
        if decl.body.default is not None:
            default = coerce(decl.body.default, cod_t)
        has_default = decl.body.default is not None
        one = len(dom) == 1

        def fn(*args):
            key = args[0] if one else args
            try:
                return table[key]
            except KeyError:
                if has_default:
                    return default
                raise DomainError(f"no table entry for {_show(key)} in {decl.name}") from None

        fn.table = table
        fn.has_default = has_default
        return fn

    body = compile_expr(decl.body, {n: i for i, (n, _) in enumerate(decl.params)}, funs)
    if single:

        def fn(*args):
            return convert(body(args), cod_t)

    else:
        n = len(cod)

        def fn(*args):
            v = body(args)
            if not isinstance(v, tuple) or len(v) != n:
                raise DomainError(f"{decl.name} must return {n} values, got {_show(v)}")
            return tuple(convert(x, t) for x, t in zip(v, cod))

    return fn
