"""Algebraic laws of open games, over randomized small instances.

Hypothesis draws integer seeds; each instance is built from an ordinary
``random.Random`` so payoff tables are spread out rather than shrunk.
"""
import random

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import lawcheck as L

law_settings = settings(
    max_examples=25,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
rngs = st.integers(0, 2**32 - 1).map(random.Random)


@law_settings
@given(rngs)
def test_associativity(rng):
    L.check_associativity(rng)


@law_settings
@given(rngs)
def test_identity_laws(rng):
    L.check_identity(rng)


@law_settings
@given(rngs)
def test_interchange_trivial_games(rng):
    L.check_interchange_trivial(rng)


@law_settings
@given(rngs)
def test_interchange_games_with_players(rng):
    L.check_interchange_players(rng)


@law_settings
@given(rngs)
def test_interchange_inclusion(rng):
    L.check_interchange_inclusion(rng)


@law_settings
@given(rngs)
def test_strategically_trivial_closure(rng):
    L.check_trivial_closure(rng)


@law_settings
@given(rngs)
def test_counit_law(rng):
    L.check_counit_law(rng)


@law_settings
@given(rngs)
def test_braiding(rng):
    L.check_braiding(rng)


@law_settings
@given(rngs)
def test_comonoid_laws(rng):
    L.check_comonoid(rng)


@law_settings
@given(rngs)
def test_argmax_invariance(rng):
    L.check_argmax_invariance(rng)
