"""Shared helpers for the test suite."""
from __future__ import annotations

from pathlib import Path

from opengames.core import leaf_tables
from opengames.dsl import check_source, load_file
from opengames.equilibrium import equilibria

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def fixture(name: str) -> Path:
    return FIXTURES / name


def load(name: str):
    return load_file(fixture(name))


def checked(name: str):
    p = fixture(name)
    return check_source(p.read_text(encoding="utf-8"), str(p))


def eq_tables(game, **kw) -> list:
    """Equilibria as lists of player tables, so games built differently but
    with the same players in the same order compare equal."""
    kw.setdefault("workers", 1)
    return [tuple(leaf_tables(game.sigma, s)) for s in equilibria(game, **kw)]


def choices(game, **kw) -> set:
    """Equilibria of a game whose players all observe nothing, as choice tuples."""
    return {tuple(t[0] for t in tables) for tables in eq_tables(game, **kw)}


def seq_pairs(game, **kw) -> set:
    """Equilibria of a leader/follower game as (y1, follower table) pairs."""
    return {(t[0][0], t[1]) for t in eq_tables(game, **kw)}
