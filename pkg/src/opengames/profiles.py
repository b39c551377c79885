"""Strategy profiles as JSON.

A profile is an object keyed by atom names.  Each named box that contains players
becomes a nested object; each player maps to its table, an array of ``[observation, choice]``
pairs in canonical observation order (``null`` is the unit observation).
When a name occurs twice at one level the later ones are keyed ``name#2``,
``name#3`` and so on.

On input a player may also be given as a bare choice (the constant table) or
as ``{"default": choice, "entries": [[obs, choice], ...]}``.
"""
from __future__ import annotations

from .core import BoxSpace, PairSpace, PlayerSpace, StrategySpace, player_leaves
from .errors import DomainError, ProfileError


def _members(space: StrategySpace, profile):
    """(name, space, subprofile) for the named items at one nesting level."""
    if isinstance(space, PairSpace):
        yield from _members(space.left, profile[0])
        yield from _members(space.right, profile[1])
    elif isinstance(space, PlayerSpace) or (isinstance(space, BoxSpace) and _has_players(space)):
        yield space.name, space, profile


def _has_players(space) -> bool:
    return next(player_leaves(space), None) is not None


def _keyed(items):
    seen = {}
    for name, space, sub in items:
        seen[name] = seen.get(name, 0) + 1
        key = name if seen[name] == 1 else f"{name}#{seen[name]}"
        yield key, space, sub


def _level(space, path):
    if isinstance(space, PairSpace):
        yield from _level(space.left, path + (0,))
        yield from _level(space.right, path + (1,))
    elif isinstance(space, PlayerSpace) or (isinstance(space, BoxSpace) and _has_players(space)):
        yield space.name, space, path


def player_keys(space: StrategySpace, path=(), prefix="") -> dict:
    """Map strategy-tree path -> (qualified key, PlayerSpace).

    Keys are the JSON keys joined by '/', e.g. ``pi_M/D1`` or ``stage#2/P1``.
    """
    out = {}
    for key, s, p in _keyed(_level(space, path)):
        if isinstance(s, PlayerSpace):
            out[p] = (prefix + key, s)
        else:
            out.update(player_keys(s.inner, p, prefix + key + "/"))
    return out


def render_profile(space: StrategySpace, profile) -> dict:
    space.check(profile)
    return _render_level(space, profile)


def _render_level(space, profile) -> dict:
    out = {}
    for key, s, sub in _keyed(_members(space, profile)):
        if isinstance(s, PlayerSpace):
            out[key] = [[s.obs.render(o), s.choice.render(c)] for o, c in zip(s.obs.values(), sub)]
        else:
            out[key] = _render_level(s.inner, sub)
    return out


def _placeholder(space):
    # a profile-shaped value used only to walk the tree while parsing
    if isinstance(space, PairSpace):
        return (_placeholder(space.left), _placeholder(space.right))
    if isinstance(space, BoxSpace):
        return _placeholder(space.inner)
    return None


def parse_profile(space: StrategySpace, data):
    """Inverse of :func:`render_profile`, accepting the shorthand forms too."""
    if data is None:
        data = {}
    return _parse_level(space, data, "")


def _parse_level(space, data, where):
    if not isinstance(data, dict):
        raise ProfileError(f"{where or 'profile'}: expected an object, got {data!r}")
    members = list(_keyed(_members(space, _placeholder(space))))
    keys = [k for k, _, _ in members]
    unknown = sorted(set(data) - set(keys))
    if unknown:
        raise ProfileError(f"{where or 'profile'}: unknown key(s) {', '.join(unknown)}; expected {', '.join(keys) or 'none'}")
    missing = [k for k in keys if k not in data]
    if missing:
        raise ProfileError(f"{where or 'profile'}: missing key(s) {', '.join(missing)}")
    parsed = {}
    for key, s, _ in members:
        path = f"{where}/{key}" if where else key
        if isinstance(s, PlayerSpace):
            parsed[key] = _parse_table(s, data[key], path)
        else:
            parsed[key] = _parse_level(s.inner, data[key], path)
    it = iter(parsed[k] for k in keys)

    def rebuild(s):
        if isinstance(s, PairSpace):
            left = rebuild(s.left)
            return (left, rebuild(s.right))
        if isinstance(s, PlayerSpace) or (isinstance(s, BoxSpace) and _has_players(s)):
            return next(it)
        return _placeholder(s)

    return rebuild(space)


def _parse_table(s: PlayerSpace, data, path):
    obs = s.obs.values()
    try:
        if isinstance(data, dict):
            if not set(data) <= {"default", "entries"}:
                raise ProfileError(f"{path}: a table object takes only 'default' and 'entries'")
            default = s.choice.parse(data["default"]) if "default" in data else None
            pairs = data.get("entries", [])
        elif isinstance(data, list):
            default, pairs = None, data
        else:
            return tuple(s.choice.parse(data) for _ in obs)
        if not isinstance(pairs, list):
            raise ProfileError(f"{path}: entries must be an array of [observation, choice] pairs")
        table = {}
        for item in pairs:
            if not isinstance(item, list) or len(item) != 2:
                raise ProfileError(f"{path}: expected an [observation, choice] pair, got {item!r}")
            o = s.obs.parse(item[0])
            if o in table:
                raise ProfileError(f"{path}: observation {item[0]!r} is given twice")
            table[o] = s.choice.parse(item[1])
    except DomainError as exc:
        raise ProfileError(f"{path}: {exc}") from None
    out = []
    for o in obs:
        if o in table:
            out.append(table[o])
        elif default is not None:
            out.append(default)
        else:
            raise ProfileError(f"{path}: no choice for observation {s.obs.render(o)!r}")
    return tuple(out)


__all__ = ["render_profile", "parse_profile", "player_keys"]
