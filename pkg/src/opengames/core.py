"""Open games as (strategy space, play, coplay, equilibrium predicate).

Internally every game works on *strand tuples*: an observation is a tuple with
one entry per forward input strand, a coutility is a tuple with one entry per
backward output strand, and so on.  The module-level :func:`play`,
:func:`coplay` and :func:`eq_member` accept values of the reduced (normal)
interface instead, so a one-strand side takes the bare value and an empty side
takes ``()``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable, Iterator, Sequence

from .domains import FiniteType, Unit, product_of
from .errors import BudgetExceeded, StructuralError

DEFAULT_TOL = 1e-9
DEFAULT_BUDGET = 10**7


def _fmt_side(fwd, bwd) -> str:
    parts = [str(t) for t in fwd] + [f"{t}*" for t in bwd]
    return " x ".join(parts) if parts else "I"


@dataclass(frozen=True)
class Interface:
    fwd_in: tuple[FiniteType, ...] = ()
    bwd_out: tuple[FiniteType, ...] = ()
    fwd_out: tuple[FiniteType, ...] = ()
    bwd_in: tuple[FiniteType, ...] = ()

    def __post_init__(self):
        for name in ("fwd_in", "bwd_out", "fwd_out", "bwd_in"):
            object.__setattr__(self, name, tuple(getattr(self, name)))

    def __str__(self):
        return f"{_fmt_side(self.fwd_in, self.bwd_out)} -> {_fmt_side(self.fwd_out, self.bwd_in)}"

    @property
    def top(self):
        return self.fwd_in, self.bwd_out

    @property
    def bottom(self):
        return self.fwd_out, self.bwd_in

    def is_closed(self) -> bool:
        strands = self.fwd_in + self.bwd_out + self.fwd_out + self.bwd_in
        return all(isinstance(t, Unit) for t in strands)


@dataclass(frozen=True)
class NormalInterface:
    X: FiniteType
    S: FiniteType
    Y: FiniteType
    R: FiniteType

    def __str__(self):
        return f"X={self.X} S={self.S} Y={self.Y} R={self.R}"


def reduce_interface(iface: Interface) -> NormalInterface:
    """Collapse each direction to the product of its strands (Unit when empty)."""
    return NormalInterface(
        product_of(iface.fwd_in),
        product_of(iface.bwd_out),
        product_of(iface.fwd_out),
        product_of(iface.bwd_in),
    )


# -- strategy spaces --------------------------------------------------------


class StrategySpace:
    """Tree of strategy sets mirroring how a game was put together."""

    size: int

    def profile(self, index: int):
        raise NotImplementedError

    def index(self, profile) -> int:
        raise NotImplementedError

    def profiles(self) -> Iterator:
        raise NotImplementedError

    def contains(self, profile) -> bool:
        raise NotImplementedError

    def check(self, profile):
        if not self.contains(profile):
            raise StructuralError(f"profile {profile!r} does not belong to this strategy space")

    def __len__(self):
        return self.size


class TrivialSpace(StrategySpace):
    size = 1

    def profile(self, index):
        if index != 0:
            raise IndexError(index)
        return None

    def index(self, profile):
        return 0

    def profiles(self):
        yield None

    def contains(self, profile):
        return profile is None

    def __repr__(self):
        return "TrivialSpace()"


TRIVIAL = TrivialSpace()


class PlayerSpace(StrategySpace):
    """All total tables obs -> choice, stored as a tuple in obs order."""

    def __init__(self, name: str, obs: FiniteType, choice: FiniteType):
        self.name = name
        self.obs = obs
        self.choice = choice
        self.n_obs = obs.cardinality()
        self.n_choice = choice.cardinality()
        self.size = self.n_choice**self.n_obs

    def profile(self, index):
        if not 0 <= index < self.size:
            raise IndexError(index)
        digits = []
        for _ in range(self.n_obs):
            index, d = divmod(index, self.n_choice)
            digits.append(d)
        vals = self.choice.values()
        return tuple(vals[d] for d in reversed(digits))

    def index(self, profile):
        i = 0
        for c in profile:
            i = i * self.n_choice + self.choice.index(c)
        return i

    def profiles(self):
        return itertools.product(self.choice.values(), repeat=self.n_obs)

    def contains(self, profile):
        return (
            isinstance(profile, tuple)
            and len(profile) == self.n_obs
            and all(self.choice.contains(c) for c in profile)
        )

    def __repr__(self):
        return f"PlayerSpace({self.name!r}, {self.obs}, {self.choice})"


class PairSpace(StrategySpace):
    def __init__(self, left: StrategySpace, right: StrategySpace):
        self.left = left
        self.right = right
        self.size = left.size * right.size

    def profile(self, index):
        i, j = divmod(index, self.right.size)
        return (self.left.profile(i), self.right.profile(j))

    def index(self, profile):
        return self.left.index(profile[0]) * self.right.size + self.right.index(profile[1])

    def profiles(self):
        return itertools.product(self.left.profiles(), self.right.profiles())

    def contains(self, profile):
        return (
            isinstance(profile, tuple)
            and len(profile) == 2
            and self.left.contains(profile[0])
            and self.right.contains(profile[1])
        )

    def __repr__(self):
        return f"PairSpace({self.left!r}, {self.right!r})"


class BoxSpace(StrategySpace):
    """A named box around a subgame's strategies; transparent for profiles."""

    def __init__(self, name: str, inner: StrategySpace):
        self.name = name
        self.inner = inner
        self.size = inner.size

    def profile(self, index):
        return self.inner.profile(index)

    def index(self, profile):
        return self.inner.index(profile)

    def profiles(self):
        return self.inner.profiles()

    def contains(self, profile):
        return self.inner.contains(profile)

    def __repr__(self):
        return f"BoxSpace({self.name!r}, {self.inner!r})"


def player_leaves(space: StrategySpace, path=()):
    """Yield (path, boxes, PlayerSpace) for every player leaf, left to right."""

    def rec(s, path, boxes):
        if isinstance(s, PlayerSpace):
            yield path, boxes, s
        elif isinstance(s, PairSpace):
            yield from rec(s.left, path + (0,), boxes)
            yield from rec(s.right, path + (1,), boxes)
        elif isinstance(s, BoxSpace):
            yield from rec(s.inner, path, boxes + (s.name,))

    yield from rec(space, path, ())


def leaf_profile(space: StrategySpace, profile, path):
    for step in path:
        while isinstance(space, BoxSpace):
            space = space.inner
        space = space.left if step == 0 else space.right
        profile = profile[step]
    return profile


def leaf_tables(space: StrategySpace, profile) -> list:
    """The players' tables of a profile, left to right."""
    return [leaf_profile(space, profile, path) for path, _, _ in player_leaves(space)]


def profile_from_tables(space: StrategySpace, tables) -> Any:
    """Inverse of :func:`leaf_tables`: fill the leaves of ``space`` in order."""
    it = iter(tables)

    def rec(s):
        if isinstance(s, PlayerSpace):
            try:
                return tuple(next(it))
            except StopIteration:
                raise StructuralError("too few player tables for this strategy space") from None
        if isinstance(s, PairSpace):
            left = rec(s.left)
            return (left, rec(s.right))
        if isinstance(s, BoxSpace):
            return rec(s.inner)
        return None

    out = rec(space)
    if next(it, None) is not None:
        raise StructuralError("more player tables than players")
    space.check(out)
    return out


# -- evaluation context -----------------------------------------------------


class EvalContext:
    """Per-call evaluation settings: tie tolerance, budget, optional trace.

    Children created by :meth:`descend` share the counter and trace list, and
    only track their position in the strategy tree when tracing.
    """

    __slots__ = ("tol", "budget", "_spent", "trace", "path", "literal")

    def __init__(self, tol=DEFAULT_TOL, budget=DEFAULT_BUDGET, trace=None, literal=False):
        if tol < 0:
            raise ValueError("tolerance must be non-negative")
        if budget < 1:
            raise ValueError("budget must be positive")
        self.tol = tol
        self.budget = budget
        self._spent = [0]
        self.trace = trace
        self.path = ()
        self.literal = literal

    @property
    def spent(self) -> int:
        return self._spent[0]

    def spend(self):
        self._spent[0] += 1
        if self._spent[0] > self.budget:
            raise BudgetExceeded(self._spent[0], self.budget, "equilibrium evaluations")

    def descend(self, step):
        if self.trace is None:
            return self
        child = EvalContext.__new__(EvalContext)
        child.tol = self.tol
        child.budget = self.budget
        child._spent = self._spent
        child.trace = self.trace
        child.path = self.path + (step,)
        child.literal = self.literal
        return child


# -- the game record --------------------------------------------------------


class OpenGame:
    """An open game on strand tuples.

    play(σ, x) -> y, coplay(σ, x, r) -> s, equilibrium(σ, x, k, ctx) -> bool
    where k maps a y strand tuple to an r strand tuple.  ``reach(x)`` is the
    set of y that play can produce at x under some profile.
    """

    __slots__ = ("iface", "sigma", "play", "coplay", "equilibrium", "_reach", "_reach_cache", "trivial", "label")

    def __init__(self, iface, sigma, play, coplay, equilibrium, reach=None, trivial=False, label=""):
        self.iface = iface
        self.sigma = sigma
        self.play = play
        self.coplay = coplay
        self.equilibrium = equilibrium
        self._reach = reach
        self._reach_cache = {}
        self.trivial = trivial
        self.label = label

    @property
    def normal(self) -> NormalInterface:
        return reduce_interface(self.iface)

    def reach(self, x) -> tuple:
        """Image of play at x over all profiles, in a deterministic order."""
        try:
            return self._reach_cache[x]
        except KeyError:
            pass
        if self._reach is not None:
            ys = self._reach(x)
        else:
            ys = dict.fromkeys(self.play(s, x) for s in self.sigma.profiles())
        ys = tuple(ys)
        self._reach_cache[x] = ys
        return ys

    def __repr__(self):
        name = f" {self.label}" if self.label else ""
        return f"<OpenGame{name}: {self.iface}, |Σ|={self.sigma.size}>"


def is_closed(game: OpenGame) -> bool:
    return game.iface.is_closed()


def unit_strands(types: Sequence[FiniteType]) -> tuple:
    return tuple(() for _ in types)


# -- reduced-value API ------------------------------------------------------


def _pack(types, value, what):
    n = len(types)
    if n == 0:
        if value not in ((), None):
            raise StructuralError(f"{what}: expected unit, got {value!r}")
        strands = ()
    elif n == 1:
        strands = (value,)
    else:
        if not isinstance(value, tuple) or len(value) != n:
            raise StructuralError(f"{what}: expected a {n}-tuple, got {value!r}")
        strands = value
    for t, v in zip(types, strands):
        if not t.contains(v):
            raise StructuralError(f"{what}: {v!r} is not a value of type {t}")
    return strands


def _unpack(types, strands):
    if len(types) == 1:
        return strands[0]
    return tuple(strands)


def play(game: OpenGame, profile, x) -> Any:
    game.sigma.check(profile)
    xs = _pack(game.iface.fwd_in, x, "observation")
    return _unpack(game.iface.fwd_out, game.play(profile, xs))


def coplay(game: OpenGame, profile, x, r) -> Any:
    game.sigma.check(profile)
    xs = _pack(game.iface.fwd_in, x, "observation")
    rs = _pack(game.iface.bwd_in, r, "outcome")
    return _unpack(game.iface.bwd_out, game.coplay(profile, xs, rs))


@dataclass(frozen=True)
class Continuation:
    """A total map from choices (values of ``domain``) to outcomes."""

    domain: FiniteType
    fn: Callable[[Any], Any] = field(compare=False)

    def __call__(self, y):
        return self.fn(y)

    def tabulate(self) -> list[tuple[Any, Any]]:
        return [(y, self.fn(y)) for y in self.domain.values()]

    @classmethod
    def from_table(cls, domain, table: dict):
        missing = [y for y in domain.values() if y not in table]
        if missing:
            raise StructuralError(f"continuation table is not total: missing {missing[:3]!r}")
        return cls(domain, table.__getitem__)

    @classmethod
    def constant(cls, domain, r):
        return cls(domain, lambda _y: r)


def tabulate_continuation(k: Continuation) -> list[tuple[Any, Any]]:
    return k.tabulate()


def _raw_continuation(game, k):
    fwd_out, bwd_in = game.iface.fwd_out, game.iface.bwd_in

    def raw(ys):
        return _pack(bwd_in, k(_unpack(fwd_out, ys)), "continuation result")

    return raw


def eq_member(
    game: OpenGame,
    profile,
    x,
    k: Continuation | Callable | None = None,
    *,
    tol: float = DEFAULT_TOL,
    budget: int = DEFAULT_BUDGET,
    ctx: EvalContext | None = None,
) -> bool:
    """Is ``profile`` in E(x, k)?  ``k=None`` means the trivial continuation."""
    game.sigma.check(profile)
    xs = _pack(game.iface.fwd_in, x, "observation")
    if k is None:
        r0 = unit_strands(game.iface.bwd_in)
        if any(not isinstance(t, Unit) for t in game.iface.bwd_in):
            raise StructuralError("a continuation is required when R is not unit")
        raw = lambda _ys: r0
    else:
        raw = _raw_continuation(game, k)
    ctx = ctx or EvalContext(tol=tol, budget=budget)
    return game.equilibrium(profile, xs, raw, ctx)


def closed_point(game: OpenGame):
    """The (x, k) pair at which a closed game's equilibria are evaluated."""
    x0 = unit_strands(game.iface.fwd_in)
    r0 = unit_strands(game.iface.bwd_in)
    return x0, (lambda _ys: r0)


def strategy_count(game: OpenGame) -> int:
    return game.sigma.size


__all__ = [
    "Interface",
    "NormalInterface",
    "reduce_interface",
    "StrategySpace",
    "TrivialSpace",
    "PlayerSpace",
    "PairSpace",
    "BoxSpace",
    "TRIVIAL",
    "OpenGame",
    "EvalContext",
    "Continuation",
    "play",
    "coplay",
    "eq_member",
    "tabulate_continuation",
    "is_closed",
    "closed_point",
    "player_leaves",
    "leaf_profile",
    "leaf_tables",
    "profile_from_tables",
    "strategy_count",
    "DEFAULT_TOL",
    "DEFAULT_BUDGET",
]
