"""Atomic open games and the two ways of putting games together.

Every constructor returns an :class:`~opengames.core.OpenGame`.  Sequential
composition and tensor follow the standard definitions directly; in
particular the equilibrium predicate of ``compose_seq`` quantifies over every
history the first game can produce, which is what makes the solution concept
subgame perfect.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .core import (
    TRIVIAL,
    BoxSpace,
    Continuation,
    Interface,
    OpenGame,
    PairSpace,
    PlayerSpace,
    reduce_interface,
)
from .domains import REAL, FiniteType, Unit, product_of
from .errors import CompositionError, DomainError, SelectionError


def _strands(t) -> tuple:
    """A bare type is one strand; a sequence is a strand list."""
    if isinstance(t, FiniteType):
        return (t,)
    return tuple(t)


# -- selection functions ----------------------------------------------------


class Selection:
    name = "selection"

    def outcome_strands(self, choice: FiniteType) -> tuple:
        raise NotImplementedError

    def select(self, choices, k, tol):
        """Selected subset of ``choices`` for a continuation on bare values."""
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class Argmax(Selection):
    """Maximise a real-valued outcome; ties within ``tol`` are all selected."""

    name = "argmax"

    def outcome_strands(self, choice):
        return (REAL,)

    def select(self, choices, k, tol):
        vals = [float(k(y)) for y in choices]
        if not vals:
            raise SelectionError("argmax over an empty choice set")
        best = max(vals)
        return [y for y, v in zip(choices, vals) if v >= best - tol]

    def check(self, chosen, choices, k, tol):
        vals = [float(k(y)) for y in choices]
        best = max(vals)
        mine = vals[choices.index(chosen)]
        if mine >= best - tol:
            # a tie counts as optimal; report the choice actually made
            return True, mine, chosen, mine
        return False, mine, choices[vals.index(best)], best


class Prefer(Selection):
    """Maximise with respect to a total order on a finite outcome type.

    ``ranking`` lists outcomes from worst to best; without it the canonical
    order of the outcome type is used (later is better).
    """

    name = "prefer"

    def __init__(self, outcome: FiniteType, ranking: Sequence | None = None):
        if not outcome.finite:
            raise SelectionError("prefer needs a finite outcome type")
        self.outcome = outcome
        if ranking is None:
            self.rank = outcome.key
        else:
            ranking = list(ranking)
            if sorted(map(outcome.index, ranking)) != list(range(outcome.cardinality())):
                raise SelectionError("ranking must list every outcome exactly once")
            pos = {r: i for i, r in enumerate(ranking)}
            self.rank = pos.__getitem__

    def outcome_strands(self, choice):
        return (self.outcome,)

    def select(self, choices, k, tol):
        ranks = [self.rank(k(y)) for y in choices]
        if not ranks:
            raise SelectionError("prefer over an empty choice set")
        best = max(ranks)
        return [y for y, r in zip(choices, ranks) if r == best]

    def check(self, chosen, choices, k, tol):
        outs = [k(y) for y in choices]
        ranks = [self.rank(o) for o in outs]
        best = max(ranks)
        i = choices.index(chosen)
        if ranks[i] == best:
            return True, outs[i], chosen, outs[i]
        j = ranks.index(best)
        return False, outs[i], choices[j], outs[j]

    def __repr__(self):
        return f"Prefer({self.outcome})"


class Fixpoint(Selection):
    """Choose y with k(y) = y: coordinate with whatever the context does."""

    name = "fixpoint"

    def outcome_strands(self, choice):
        return (choice,)

    def select(self, choices, k, tol):
        return [y for y in choices if k(y) == y]

    def check(self, chosen, choices, k, tol):
        out = k(chosen)
        if out == chosen:
            return True, out, chosen, out
        fixed = [y for y in choices if k(y) == y]
        best = fixed[0] if fixed else None
        return False, out, best, best


class MatchObservation(Selection):
    """Choose exactly what was observed; needs observation type = choice type."""

    name = "match"

    def outcome_strands(self, choice):
        return ()

    def select(self, choices, k, tol):
        raise SelectionError("match selects by observation, not by continuation")


ARGMAX = Argmax()
FIXPOINT = Fixpoint()
MATCH = MatchObservation()


def select(sel: Selection, k: Continuation, tol: float = 1e-9) -> list:
    """The subset of ``k.domain`` picked out by ``sel`` under ``k``."""
    choices = list(k.domain.values())
    if not choices:
        raise SelectionError("empty choice set")
    return sel.select(choices, k, tol)


# -- players ----------------------------------------------------------------


def lift_player(name: str, obs, choice: FiniteType, sel: Selection = ARGMAX) -> OpenGame:
    """A single decision: observe ``obs``, choose from ``choice``.

    ``obs`` is a type (Unit for no observation) or a list of strand types.
    """
    if isinstance(obs, Unit):
        obs_strands = ()
    else:
        obs_strands = _strands(obs)
    obs_type = product_of(obs_strands)
    if not obs_type.finite or not choice.finite:
        raise SelectionError(f"player {name}: observations and choices must be finite")
    if choice.cardinality() == 0:
        raise SelectionError(f"player {name}: empty choice type")
    if isinstance(sel, MatchObservation) and obs_type != choice:
        raise SelectionError(f"player {name}: match needs observation type {obs_type} to equal choice type {choice}")
    out_strands = sel.outcome_strands(choice)
    if isinstance(sel, Fixpoint) and product_of(out_strands) != choice:
        raise SelectionError(f"player {name}: fixpoint needs outcome type equal to choice type")

    iface = Interface(fwd_in=obs_strands, fwd_out=(choice,), bwd_in=out_strands)
    space = PlayerSpace(name, obs_type, choice)
    choices = list(choice.values())
    reach_all = tuple((c,) for c in choices)
    n_obs = len(obs_strands)
    obs_index = obs_type.index

    if n_obs == 0:
        key = lambda x: ()
    elif n_obs == 1:
        key = lambda x: x[0]
    else:
        key = lambda x: x

    def play(s, x):
        return (s[obs_index(key(x))],)

    def coplay(s, x, r):
        return ()

    if isinstance(sel, MatchObservation):

        def equilibrium(s, x, k, ctx):
            ctx.spend()
            seen = key(x)
            chosen = s[obs_index(seen)]
            ok = chosen == seen
            if ctx.trace is not None:
                ctx.trace.append(dict(path=ctx.path, obs=seen, choice=chosen, payoff=None,
                                      best=seen, best_payoff=None, ok=ok, selection=sel.name))
            return ok

    else:
        check = sel.check

        def equilibrium(s, x, k, ctx):
            ctx.spend()
            seen = key(x)
            chosen = s[obs_index(seen)]
            ok, mine, best, best_val = check(chosen, choices, lambda y: k((y,))[0], ctx.tol)
            if ctx.trace is not None:
                ctx.trace.append(dict(path=ctx.path, obs=seen, choice=chosen, payoff=mine,
                                      best=best, best_payoff=best_val, ok=ok, selection=sel.name))
            return ok

    return OpenGame(iface, space, play, coplay, equilibrium, reach=lambda x: reach_all, label=name)


# -- strategically trivial games --------------------------------------------


def _always(s, x, k, ctx):
    ctx.spend()
    return True


def _trivial_game(iface, play, coplay, label=""):
    return OpenGame(
        iface,
        TRIVIAL,
        play,
        coplay,
        _always,
        reach=lambda x: (play(None, x),),
        trivial=True,
        label=label,
    )


def _no_coplay(s, x, r):
    return ()


def _no_play(s, x):
    return ()


def _wrap_output(f, n_out):
    if n_out == 1:
        return lambda *args: (f(*args),)
    return lambda *args: tuple(f(*args))


def lift_covariant(f: Callable, dom, cod, name: str = "") -> OpenGame:
    """Covariant computation: play applies ``f`` to the forward strands.

    ``f`` takes one positional argument per domain strand and returns a bare
    value for a one-strand codomain, otherwise a tuple.
    """
    dom, cod = _strands(dom), _strands(cod)
    g = _wrap_output(f, len(cod))
    return _trivial_game(
        Interface(fwd_in=dom, fwd_out=cod),
        lambda s, x: g(*x),
        _no_coplay,
        label=name,
    )


def lift_contravariant(f: Callable, dom, cod, name: str = "") -> OpenGame:
    """Contravariant computation f*: coplay applies ``f`` to the backward strands.

    The backward input carries the domain of ``f``; the backward output its
    codomain.
    """
    dom, cod = _strands(dom), _strands(cod)
    g = _wrap_output(f, len(cod))
    return _trivial_game(
        Interface(bwd_out=cod, bwd_in=dom),
        _no_play,
        lambda s, x, r: g(*r),
        label=name + "*" if name else "",
    )


def dual(game: OpenGame) -> OpenGame:
    """Contravariant version of a covariant computation (no backward strands)."""
    i = game.iface
    if not game.trivial or i.bwd_in or i.bwd_out:
        raise CompositionError(f"only covariant computations have a contravariant form; got {i}")
    p = game.play
    return _trivial_game(
        Interface(bwd_out=i.fwd_out, bwd_in=i.fwd_in),
        _no_play,
        lambda s, x, r: p(None, r),
        label=game.label + "*" if game.label else "",
    )


def identity(t) -> OpenGame:
    """id on one strand type, or on a list of strands."""
    ts = _strands(t)
    return _trivial_game(Interface(fwd_in=ts, fwd_out=ts), lambda s, x: x, _no_coplay, "id")


def counit(t: FiniteType) -> OpenGame:
    """Bend a forward string back up: play discards, coplay returns the input."""
    return _trivial_game(
        Interface(fwd_in=(t,), bwd_out=(t,)),
        _no_play,
        lambda s, x, r: x,
        "counit",
    )


def copy(t: FiniteType) -> OpenGame:
    return _trivial_game(
        Interface(fwd_in=(t,), fwd_out=(t, t)),
        lambda s, x: (x[0], x[0]),
        _no_coplay,
        "copy",
    )


def delete(t: FiniteType) -> OpenGame:
    return _trivial_game(Interface(fwd_in=(t,)), _no_play, _no_coplay, "delete")


def const(v, t: FiniteType) -> OpenGame:
    if not t.contains(v):
        raise DomainError(f"constant {v!r} is not a value of type {t}")
    out = (v,)
    return _trivial_game(Interface(fwd_out=(t,)), lambda s, x: out, _no_coplay, "const")


@dataclass(frozen=True)
class Permutation:
    """Output strand j carries input strand ``perm[j]``."""

    perm: tuple[int, ...]
    types: tuple[FiniteType, ...]

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(self.perm))
        object.__setattr__(self, "types", tuple(self.types))
        if len(self.perm) != len(self.types):
            raise CompositionError(
                f"braid arity mismatch: permutation of {len(self.perm)} for {len(self.types)} strands"
            )
        if sorted(self.perm) != list(range(len(self.perm))):
            raise CompositionError(f"{list(self.perm)} is not a permutation")

    @property
    def out_types(self):
        return tuple(self.types[i] for i in self.perm)

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.perm)
        for j, i in enumerate(self.perm):
            inv[i] = j
        return Permutation(tuple(inv), self.out_types)

    def apply(self, xs):
        return tuple(xs[i] for i in self.perm)


def braid(p: Permutation) -> OpenGame:
    perm = p.perm
    return _trivial_game(
        Interface(fwd_in=p.types, fwd_out=p.out_types),
        lambda s, x: tuple(x[i] for i in perm),
        _no_coplay,
        "braid",
    )


def swap(a: FiniteType, b: FiniteType) -> OpenGame:
    return braid(Permutation((1, 0), (a, b)))


# -- composition ------------------------------------------------------------


def compose_seq(g: OpenGame, h: OpenGame) -> OpenGame:
    """Play ``g`` then ``h`` (h ∘ g): g's bottom strands are h's top strands."""
    gi, hi = g.iface, h.iface
    if gi.fwd_out != hi.fwd_in or gi.bwd_in != hi.bwd_out:
        raise CompositionError(
            f"cannot compose: upper game has bottom {_side(gi.fwd_out, gi.bwd_in)} "
            f"but lower game has top {_side(hi.fwd_in, hi.bwd_out)}",
            upper=gi,
            lower=hi,
        )
    iface = Interface(gi.fwd_in, gi.bwd_out, hi.fwd_out, hi.bwd_in)
    gp, gc, ge = g.play, g.coplay, g.equilibrium
    hp, hc, he = h.play, h.coplay, h.equilibrium

    def play(s, x):
        return hp(s[1], gp(s[0], x))

    def coplay(s, x, r):
        s1, s2 = s
        return gc(s1, x, hc(s2, gp(s1, x), r))

    def reach(x):
        return dict.fromkeys(z for y in g.reach(x) for z in h.reach(y))

    sigma = PairSpace(g.sigma, h.sigma)
    if g.trivial and h.trivial:
        return OpenGame(iface, sigma, play, coplay, _always, reach=reach, trivial=True)

    h_trivial = h.trivial
    g_space = g.sigma

    def equilibrium(s, x, k, ctx):
        ctx.spend()
        s1, s2 = s
        tracing = ctx.trace is not None

        def k_upper(y):
            return hc(s2, y, k(hp(s2, y)))

        ok = ge(s1, x, k_upper, ctx.descend(0))
        if not ok and not tracing:
            return False
        if h_trivial:
            return ok
        sub = ctx.descend(1)
        if ctx.literal:
            histories = dict.fromkeys(gp(t, x) for t in g_space.profiles())
        else:
            histories = g.reach(x)
        for y in histories:
            if not he(s2, y, k, sub):
                ok = False
                if not tracing:
                    return False
        return ok

    return OpenGame(iface, sigma, play, coplay, equilibrium, reach=reach)


def tensor(g: OpenGame, h: OpenGame) -> OpenGame:
    """Play ``g`` and ``h`` side by side; strand lists are concatenated."""
    gi, hi = g.iface, h.iface
    iface = Interface(
        gi.fwd_in + hi.fwd_in,
        gi.bwd_out + hi.bwd_out,
        gi.fwd_out + hi.fwd_out,
        gi.bwd_in + hi.bwd_in,
    )
    a = len(gi.fwd_in)
    c = len(gi.bwd_in)
    gp, gc, ge = g.play, g.coplay, g.equilibrium
    hp, hc, he = h.play, h.coplay, h.equilibrium

    def play(s, x):
        return gp(s[0], x[:a]) + hp(s[1], x[a:])

    def coplay(s, x, r):
        return gc(s[0], x[:a], r[:c]) + hc(s[1], x[a:], r[c:])

    def reach(x):
        right = h.reach(x[a:])
        return [y1 + y2 for y1 in g.reach(x[:a]) for y2 in right]

    sigma = PairSpace(g.sigma, h.sigma)
    if g.trivial and h.trivial:
        return OpenGame(iface, sigma, play, coplay, _always, reach=reach, trivial=True)

    def equilibrium(s, x, k, ctx):
        ctx.spend()
        s1, s2 = s
        x1, x2 = x[:a], x[a:]
        y1 = gp(s1, x1)
        y2 = hp(s2, x2)
        ok = ge(s1, x1, lambda y: k(y + y2)[:c], ctx.descend(0))
        if not ok and ctx.trace is None:
            return False
        return he(s2, x2, lambda y: k(y1 + y)[c:], ctx.descend(1)) and ok

    return OpenGame(iface, sigma, play, coplay, equilibrium, reach=reach)


def box(name: str, game: OpenGame) -> OpenGame:
    """Name a subgame.  Semantics are unchanged; profiles gain a named level."""
    return OpenGame(
        game.iface,
        BoxSpace(name, game.sigma),
        game.play,
        game.coplay,
        game.equilibrium,
        reach=game.reach,
        trivial=game.trivial,
        label=name,
    )


def seq(*games: OpenGame) -> OpenGame:
    """Left-nested sequential composition of several games, top to bottom."""
    if not games:
        raise ValueError("seq needs at least one game")
    out = games[0]
    for g in games[1:]:
        out = compose_seq(out, g)
    return out


def par(*games: OpenGame) -> OpenGame:
    """Left-nested tensor of several games, left to right."""
    if not games:
        raise ValueError("par needs at least one game")
    out = games[0]
    for g in games[1:]:
        out = tensor(out, g)
    return out


def _side(fwd, bwd):
    parts = [str(t) for t in fwd] + [f"{t}*" for t in bwd]
    return "(" + ", ".join(parts) + ")" if parts else "I"


__all__ = [
    "Selection",
    "Argmax",
    "Prefer",
    "Fixpoint",
    "MatchObservation",
    "ARGMAX",
    "FIXPOINT",
    "MATCH",
    "select",
    "lift_player",
    "lift_covariant",
    "lift_contravariant",
    "dual",
    "identity",
    "counit",
    "copy",
    "delete",
    "const",
    "Permutation",
    "braid",
    "swap",
    "compose_seq",
    "tensor",
    "box",
    "seq",
    "par",
    "reduce_interface",
]
