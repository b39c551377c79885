"""Builders for the standard example games.

Each builder wires players, computations and counits with the combinators and
returns a closed game (except :func:`decision` with a nontrivial observation).
Payoff strands are ``REAL``.  Forward and backward strands are kept in
separate lists, so backward wires that merely pass a layer by are threaded
through with ``dual(identity(...))``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .combinators import (
    ARGMAX,
    FIXPOINT,
    MATCH,
    Permutation,
    box,
    braid,
    compose_seq,
    const,
    copy,
    counit,
    delete,
    dual,
    identity,
    lift_contravariant,
    lift_covariant,
    lift_player,
    par,
    seq,
    swap,
)
from .core import OpenGame, leaf_profile, player_leaves
from .domains import REAL, UNIT, BoundedList, FiniteType, IntRange, Labels, NumSet, exact, product_of
from .equilibrium import NormalFormSpec, SequentialSpec
from .profiles import player_keys

ACCEPT, REJECT = "A", "R"


def _pass_back(n):
    """Backward wires of REAL passing a layer untouched."""
    return dual(identity([REAL] * n))


def fan_out(t: FiniteType, n: int) -> OpenGame:
    """n copies of one strand (n >= 1), made by repeatedly copying the last."""
    g = identity(t)
    for i in range(n - 1):
        g = compose_seq(g, par(identity([t] * i), copy(t)))
    return g


def payoff_tail(outcome: OpenGame) -> OpenGame:
    """Close a layer of forward payoffs: bend each REAL back up to its player.

    ``outcome`` maps the players' choices to n payoff strands; the result has
    the choices on top and n upward payoffs, in the same order.
    """
    n = len(outcome.iface.fwd_out)
    return seq(par(outcome, _pass_back(n)), par(*[counit(REAL) for _ in range(n)]))


def players_of(game: OpenGame, profile) -> list:
    """(qualified name, table) for every player in a profile, left to right."""
    keys = player_keys(game.sigma)
    return [(keys[path][0], leaf_profile(game.sigma, profile, path)) for path, _, _ in player_leaves(game.sigma)]


def choice_tuple(game: OpenGame, profile) -> tuple:
    """Choices of a game whose players observe nothing, in player order."""
    return tuple(table[0] for _, table in players_of(game, profile))


# -- single decisions and bimatrix games ------------------------------------


def decision(choice: FiniteType, utility: Callable, obs: FiniteType = UNIT, name="P") -> OpenGame:
    """One argmax player and a utility on its choice.  Closed when obs is unit."""
    p = lift_player(name, obs, choice, ARGMAX)
    return compose_seq(p, payoff_tail(lift_covariant(utility, choice, REAL, "U")))


def bimatrix(y1: FiniteType, y2: FiniteType, u1: Callable, u2: Callable) -> OpenGame:
    """Two simultaneous argmax players; each choice is copied to both utilities."""
    players = par(lift_player("P1", UNIT, y1), lift_player("P2", UNIT, y2))
    utilities = seq(
        par(copy(y1), copy(y2)),
        braid(Permutation((0, 2, 1, 3), (y1, y1, y2, y2))),
        par(lift_covariant(u1, [y1, y2], REAL, "U1"), lift_covariant(u2, [y1, y2], REAL, "U2")),
    )
    return compose_seq(players, payoff_tail(utilities))


def bimatrix_spec(y1, y2, u1, u2) -> NormalFormSpec:
    return NormalFormSpec((y1, y2), lambda p: (u1(*p), u2(*p)))


MEETING = Labels(("GCT", "ES"))


def meeting_payoff(a, b) -> float:
    return 2.0 if a == b else 0.0


def meeting_ny() -> OpenGame:
    """Both players are paid by one shared utility, copied after evaluation."""
    players = par(lift_player("P1", UNIT, MEETING), lift_player("P2", UNIT, MEETING))
    shared = compose_seq(lift_covariant(meeting_payoff, [MEETING, MEETING], REAL, "U"), copy(REAL))
    return compose_seq(players, payoff_tail(shared))


PD = Labels(("C", "D"))
PD_PAYOFFS = {("C", "C"): (2, 2), ("C", "D"): (0, 3), ("D", "C"): (3, 0), ("D", "D"): (1, 1)}


def prisoners_dilemma() -> OpenGame:
    return bimatrix(PD, PD, lambda a, b: PD_PAYOFFS[a, b][0], lambda a, b: PD_PAYOFFS[a, b][1])


def coordination(t: FiniteType, symmetric: bool = False) -> OpenGame:
    """Two agents whose goal is to agree with each other.

    Default: G1 picks x aiming for a fixed point of what comes back, G2 sees x
    and answers y by matching it; y is routed back to G1.  ``symmetric=True``
    gives two simultaneous fixpoint agents, each receiving the other's choice.
    """
    if symmetric:
        agents = par(lift_player("G1", UNIT, t, FIXPOINT), lift_player("G2", UNIT, t, FIXPOINT))
        return seq(agents, par(identity([t, t]), dual(swap(t, t))), par(counit(t), counit(t)))
    g1 = lift_player("G1", UNIT, t, FIXPOINT)
    g2 = lift_player("G2", t, t, MATCH)
    return seq(g1, par(g2, dual(identity(t))), counit(t))


# -- ultimatum ----------------------------------------------------------------


def ultimatum_types(n: int):
    if n < 1:
        raise ValueError("pie size must be at least 1")
    return IntRange(0, n), Labels((ACCEPT, REJECT))


def ultimatum_payoffs(n: int):
    def u1(y1, y2):
        return float(y1) if y2 == ACCEPT else 0.0

    def u2(y1, y2):
        return float(n - y1) if y2 == ACCEPT else 0.0

    return u1, u2


def sequential(y1: FiniteType, y2: FiniteType, u1: Callable, u2: Callable, combined: bool = False) -> OpenGame:
    """Leader picks y1, follower sees y1 and picks y2; payoffs u1, u2 of (y1, y2).

    ``combined`` uses a single utility Y1 x Y2 -> (real, real) instead of
    separate U1 and U2 fed by copies; both denote the same game.
    """
    moves = seq(
        lift_player("P1", UNIT, y1),
        par(copy(y1), _pass_back(1)),
        par(identity(y1), _pass_back(1), lift_player("P2", y1, y2)),
    )
    if combined:
        utility = lift_covariant(lambda a, b: (u1(a, b), u2(a, b)), [y1, y2], [REAL, REAL], "U")
    else:
        utility = seq(
            par(copy(y1), copy(y2)),
            braid(Permutation((0, 2, 1, 3), (y1, y1, y2, y2))),
            par(lift_covariant(u1, [y1, y2], REAL, "U1"), lift_covariant(u2, [y1, y2], REAL, "U2")),
        )
    return compose_seq(moves, payoff_tail(utility))


def ultimatum(n: int, combined: bool = False) -> OpenGame:
    """Proposer keeps y1 of a pie of size n; responder sees y1, accepts or rejects."""
    y1, y2 = ultimatum_types(n)
    u1, u2 = ultimatum_payoffs(n)
    return sequential(y1, y2, u1, u2, combined)


def ultimatum_spec(n: int) -> SequentialSpec:
    y1, y2 = ultimatum_types(n)
    u1, u2 = ultimatum_payoffs(n)
    return SequentialSpec(y1, y2, u1, u2)


# -- duopolies ------------------------------------------------------------------


@dataclass(frozen=True)
class CournotParams:
    """Linear inverse demand P(Q) = a - b*Q, unit cost c, quantities on ``grid``."""

    a: object
    b: object
    c: object
    grid: FiniteType

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.b <= 0:
            raise ValueError("demand slope b must be positive")

    @property
    def cost_type(self) -> FiniteType:
        return NumSet((self.c,), alias=f"{{{self.c}}}")

    @property
    def analytic(self) -> Fraction:
        """The symmetric Cournot quantity (a - c) / 3b."""
        return (self.a - self.c) / (3 * self.b)


def firm_profit(a, b, q_own, cost, q_total) -> float:
    return float((a - b * q_total - cost) * q_own)


def profit_box(a, b, qty: FiniteType, cost: FiniteType) -> OpenGame:
    """The strategically trivial profit box: top strands (q1, c, q2), and the two
    profits sent back up.  Nothing below."""

    def profits(q1, c, q2):
        return firm_profit(a, b, q1, c, q1 + q2), firm_profit(a, b, q2, c, q1 + q2)

    return payoff_tail(lift_covariant(profits, [qty, cost, qty], [REAL, REAL], "f"))


def cournot(p: CournotParams) -> OpenGame:
    """Two firms choose quantities simultaneously; cost c is a constant."""
    q, ct = p.grid, p.cost_type
    firms = par(lift_player("P1", UNIT, q), const(p.c, ct), lift_player("P2", UNIT, q))
    return compose_seq(firms, box("pi", profit_box(p.a, p.b, q, ct)))


def cournot_spec(p: CournotParams) -> NormalFormSpec:
    def utility(qs):
        q1, q2 = qs
        return firm_profit(p.a, p.b, q1, p.c, q1 + q2), firm_profit(p.a, p.b, q2, p.c, q1 + q2)

    return NormalFormSpec((p.grid, p.grid), utility)


def stackelberg(p: CournotParams) -> OpenGame:
    """The leader's quantity is observed by the follower; same profit box."""
    q, ct = p.grid, p.cost_type
    return seq(
        lift_player("P1", UNIT, q),
        par(copy(q), _pass_back(1)),
        par(identity(q), _pass_back(1), lift_player("P2", q, q)),
        par(identity(q), const(p.c, ct), identity(q), _pass_back(2)),
        box("pi", profit_box(p.a, p.b, q, ct)),
    )


def stackelberg_spec(p: CournotParams) -> SequentialSpec:
    def u1(q1, q2):
        return firm_profit(p.a, p.b, q1, p.c, q1 + q2)

    def u2(q1, q2):
        return firm_profit(p.a, p.b, q2, p.c, q1 + q2)

    return SequentialSpec(p.grid, p.grid, u1, u2)


# -- repeated game ----------------------------------------------------------------


@dataclass(frozen=True)
class RepeatedParams:
    """A Cournot stage game played ``periods`` times; payoffs are u + beta*s."""

    a: object
    b: object
    c: object
    grid: FiniteType
    periods: int = 2
    beta: float = 1.0
    players: int = 2

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if self.periods < 1:
            raise ValueError("need at least one period")
        if not 0 <= self.beta <= 1:
            raise ValueError("discount factor must lie in [0, 1]")
        if self.players not in (1, 2):
            raise ValueError("one or two players")

    @property
    def history(self) -> BoundedList:
        return BoundedList(product_of([self.grid] * self.players), self.periods)


def stage_game(p: RepeatedParams) -> OpenGame:
    """One period: players see the history, the history is extended by cons, and
    each player's payoff is its stage profit plus beta times what comes back."""
    n, q, h = p.players, p.grid, p.history
    a, b, c, beta = p.a, p.b, p.c, p.beta
    names = ["P1", "P2"] if n == 2 else ["D"]

    def cons(*args):
        qs, hist = args[:n], args[n]
        entry = qs[0] if n == 1 else tuple(qs)
        return (entry,) + hist

    def stage_profit(*qs):
        total = sum(qs)
        out = tuple(firm_profit(a, b, qi, c, total) for qi in qs)
        return out[0] if n == 1 else out

    def discounted(*args):
        us, ss = args[:n], args[n:]
        tot = tuple(u + beta * s for u, s in zip(us, ss))
        return tot + tot

    # (q1, q1', .., qn, qn', h) -> (q1, .., qn, h, q1', .., qn')
    copied = []
    for i in range(n):
        copied += [q, q]
    copied.append(h)
    firsts = [2 * i for i in range(n)]
    seconds = [2 * i + 1 for i in range(n)]
    perm = firsts + [2 * n] + seconds

    return seq(
        par(fan_out(h, n + 1), _pass_back(n)),
        par(*[lift_player(nm, h, q) for nm in names], identity(h), _pass_back(n)),
        par(*[copy(q) for _ in range(n)], identity(h), _pass_back(2 * n)),
        par(braid(Permutation(perm, copied)), _pass_back(2 * n)),
        par(
            lift_covariant(cons, [q] * n + [h], h, "cons"),
            lift_covariant(stage_profit, [q] * n, [REAL] * n, "pi"),
            _pass_back(2 * n),
        ),
        par(
            identity(h),
            seq(
                par(identity([REAL] * n), lift_contravariant(discounted, [REAL] * (2 * n), [REAL] * (2 * n), "plus")),
                par(*[counit(REAL) for _ in range(n)], _pass_back(n)),
            ),
        ),
    )


def repeated(p: RepeatedParams) -> OpenGame:
    """``periods`` boxed stage games in sequence, starting from the empty
    history, with continuation payoff 0 after the last period."""
    n, h = p.players, p.history
    start = par(const((), h), *[dual(delete(REAL)) for _ in range(n)])
    end = par(delete(h), *[dual(const(0.0, REAL)) for _ in range(n)])
    stage = stage_game(p)
    stages = [box(f"stage{t + 1}", stage) for t in range(p.periods)]
    return seq(start, *stages, end)


def constant_profile(game: OpenGame, choose: Callable) -> object:
    """Profile where every player uses the table obs -> choose(name, obs)."""
    from .core import BoxSpace, PairSpace, PlayerSpace

    def rec(s):
        if isinstance(s, PlayerSpace):
            return tuple(choose(s.name, o) for o in s.obs.values())
        if isinstance(s, PairSpace):
            return (rec(s.left), rec(s.right))
        if isinstance(s, BoxSpace):
            return rec(s.inner)
        return None

    return rec(game.sigma)


# -- upstream monopolist ------------------------------------------------------


def monopolist_duopoly(a, b, price_grid: FiniteType, qty_grid: FiniteType) -> OpenGame:
    """A monopolist sets the input price p, observed by two Cournot firms with
    unit cost p.  The firms' subgame with the monopolist's revenue p*(q1+q2)
    is boxed as ``pi_M``: from the monopolist's side an outcome function."""
    a, b = exact(a), exact(b)
    pr, q = price_grid, qty_grid

    def revenue(price, q1, q2):
        return float(price * (q1 + q2))

    duopoly = seq(
        par(fan_out(pr, 4), _pass_back(1)),
        par(lift_player("D1", pr, q), lift_player("D2", pr, q), identity([pr, pr]), _pass_back(1)),
        par(copy(q), copy(q), identity([pr, pr]), _pass_back(3)),
        # (q1, q1', q2, q2', p, p') -> (q1, p, q2, p', q1', q2')
        par(braid(Permutation((0, 4, 2, 5, 1, 3), (q, q, q, q, pr, pr))), _pass_back(3)),
        par(box("pi", profit_box(a, b, q, pr)), payoff_tail(lift_covariant(revenue, [pr, q, q], REAL, "revenue"))),
    )
    return compose_seq(lift_player("M", UNIT, pr), box("pi_M", duopoly))


__all__ = [
    "decision",
    "bimatrix",
    "bimatrix_spec",
    "meeting_ny",
    "meeting_payoff",
    "MEETING",
    "PD",
    "PD_PAYOFFS",
    "prisoners_dilemma",
    "coordination",
    "sequential",
    "ultimatum",
    "ultimatum_spec",
    "ultimatum_types",
    "ultimatum_payoffs",
    "CournotParams",
    "firm_profit",
    "profit_box",
    "cournot",
    "cournot_spec",
    "stackelberg",
    "stackelberg_spec",
    "RepeatedParams",
    "stage_game",
    "repeated",
    "monopolist_duopoly",
    "constant_profile",
    "players_of",
    "choice_tuple",
    "payoff_tail",
    "fan_out",
]
