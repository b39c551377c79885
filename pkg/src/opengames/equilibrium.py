"""Equilibria of closed games, plus brute-force oracles to check them against.

A closed game has every port of unit type, so its equilibrium predicate is
evaluated at the single trivial observation and continuation and reduces to
a property of the profile alone.
"""
from __future__ import annotations

import itertools
import multiprocessing
import os
from dataclasses import dataclass, field
from typing import Callable, Sequence

from . import kernels
from .core import (
    DEFAULT_BUDGET,
    DEFAULT_TOL,
    EvalContext,
    OpenGame,
    closed_point,
)
from .domains import FiniteType
from .errors import BudgetExceeded, NotClosedError
from .profiles import player_keys

ORACLE_BUDGET = 10**6

# Game shared with forked workers; set only for the duration of a pool.
_WORKER_GAME = None


def require_closed(game: OpenGame):
    if not game.iface.is_closed():
        raise NotClosedError(game.iface)


def default_workers() -> int:
    env = os.environ.get("OG_WORKERS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def check_profile(game: OpenGame, profile, *, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET, literal=False) -> bool:
    """Is ``profile`` an equilibrium of the closed game ``game``?"""
    require_closed(game)
    game.sigma.check(profile)
    x, k = closed_point(game)
    return game.equilibrium(profile, x, k, EvalContext(tol, budget, literal=literal))


def _scan(game, start, stop, tol, budget, literal):
    x, k = closed_point(game)
    eq = game.equilibrium
    hits = []
    profiles = itertools.islice(game.sigma.profiles(), start, stop)
    for i, s in enumerate(profiles, start):
        if eq(s, x, k, EvalContext(tol, budget, literal=literal)):
            hits.append(i)
    return hits


def _scan_worker(args):
    return _scan(_WORKER_GAME, *args)


def _chunks(n, parts):
    step = -(-n // parts)
    return [(a, min(a + step, n)) for a in range(0, n, step)]


def equilibria(
    game: OpenGame,
    budget: int = DEFAULT_BUDGET,
    *,
    workers: int | None = None,
    tol: float = DEFAULT_TOL,
    literal: bool = False,
) -> list:
    """Every equilibrium profile of a closed game, in profile-index order.

    Refuses with :class:`BudgetExceeded` when the strategy space is larger
    than ``budget``; each candidate's check is also limited to ``budget``
    equilibrium evaluations.  The result does not depend on ``workers``.
    """
    global _WORKER_GAME
    require_closed(game)
    if tol < 0:
        raise ValueError("tolerance must be non-negative")
    n = game.sigma.size
    if n > budget:
        raise BudgetExceeded(n, budget)
    workers = default_workers() if workers is None else max(1, workers)
    workers = min(workers, n)
    if workers == 1 or n < 64:
        idx = _scan(game, 0, n, tol, budget, literal)
    else:
        # several chunks per worker evens out uneven check costs
        jobs = [(a, b, tol, budget, literal) for a, b in _chunks(n, workers * 4)]
        _WORKER_GAME = game
        try:
            with multiprocessing.get_context("fork").Pool(workers) as pool:
                parts = pool.map(_scan_worker, jobs)
        finally:
            _WORKER_GAME = None
        idx = sorted(i for part in parts for i in part)
    return [game.sigma.profile(i) for i in idx]


# -- per-player diagnostics -------------------------------------------------


@dataclass
class PlayerCheck:
    player: str
    observation: object
    choice: object
    payoff: object
    best_choice: object
    best_payoff: object
    ok: bool
    leaf: object = field(default=None, repr=False, compare=False)


@dataclass
class Verdict:
    equilibrium: bool
    checks: list = field(default_factory=list)

    @property
    def deviations(self):
        return [c for c in self.checks if not c.ok]


def player_names(game: OpenGame) -> dict:
    """Map strategy-tree path -> qualified player name, as keyed in JSON
    profiles (boxes joined by '/', repeats numbered ``name#2``...)."""
    return {path: key for path, (key, _) in player_keys(game.sigma).items()}


def diagnose(game: OpenGame, profile, *, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET) -> Verdict:
    """Check a profile and report, for every decision evaluated, what the
    player got and the best it could have got instead."""
    require_closed(game)
    game.sigma.check(profile)
    x, k = closed_point(game)
    trace = []
    ok = game.equilibrium(profile, x, k, EvalContext(tol, budget, trace=trace))
    keys = player_keys(game.sigma)
    checks, seen = [], set()
    for rec in trace:
        key = (rec["path"], repr(rec["obs"]), repr(rec["choice"]), repr(rec["payoff"]), repr(rec["best"]))
        if key in seen:
            continue
        seen.add(key)
        name, leaf = keys.get(rec["path"], ("?", None))
        checks.append(
            PlayerCheck(
                name,
                rec["obs"],
                rec["choice"],
                rec["payoff"],
                rec["best"],
                rec["best_payoff"],
                rec["ok"],
                leaf,
            )
        )
    return Verdict(ok, checks)


# -- oracles ----------------------------------------------------------------


@dataclass(frozen=True)
class NormalFormSpec:
    """Simultaneous game: ``utility(choices)`` returns one payoff per player."""

    choices: tuple
    utility: Callable[[tuple], Sequence[float]] = field(compare=False)

    def __post_init__(self):
        object.__setattr__(self, "choices", tuple(self.choices))


@dataclass(frozen=True)
class SequentialSpec:
    """Leader picks y1, follower sees it and picks y2; payoffs u1, u2 of (y1, y2)."""

    leader: FiniteType
    follower: FiniteType
    u1: Callable = field(compare=False)
    u2: Callable = field(compare=False)


def nash_oracle(spec: NormalFormSpec, tol: float = DEFAULT_TOL, budget: int = ORACLE_BUDGET) -> list:
    """All pure profiles where no player gains more than ``tol`` by deviating."""
    values = [t.values() for t in spec.choices]
    shape = [len(v) for v in values]
    n = 1
    for d in shape:
        n *= d
    if n > budget:
        raise BudgetExceeded(n, budget)
    profiles = list(itertools.product(*values))
    n_players = len(shape)
    pay = [0.0] * (n_players * n)
    for i, prof in enumerate(profiles):
        u = spec.utility(prof)
        if len(u) != n_players:
            raise ValueError(f"utility returned {len(u)} payoffs for {n_players} players")
        for p in range(n_players):
            pay[p * n + i] = float(u[p])
    mask = kernels.nash_mask(pay, shape, tol)
    return [prof for prof, ok in zip(profiles, mask) if ok]


def spe_oracle(spec: SequentialSpec, tol: float = DEFAULT_TOL, budget: int = ORACLE_BUDGET) -> list:
    """All (y1, follower table) pairs meeting both subgame-perfection conditions,
    found by trying every follower table.  Tables are tuples in Y1 order."""
    ys1, ys2 = spec.leader.values(), spec.follower.values()
    n1, n2 = len(ys1), len(ys2)
    if n2**n1 > budget:
        raise BudgetExceeded(n2**n1, budget, "follower tables")
    u1 = [float(spec.u1(a, b)) for a in ys1 for b in ys2]
    u2 = [float(spec.u2(a, b)) for a in ys1 for b in ys2]
    return [(ys1[a], tuple(ys2[j] for j in table)) for a, table in kernels.spe_pairs(u1, u2, n1, n2, tol)]


__all__ = [
    "equilibria",
    "check_profile",
    "diagnose",
    "Verdict",
    "PlayerCheck",
    "player_names",
    "require_closed",
    "default_workers",
    "NormalFormSpec",
    "SequentialSpec",
    "nash_oracle",
    "spe_oracle",
]
