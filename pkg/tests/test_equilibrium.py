"""Equilibrium search, profile checks and the brute-force oracles."""
import itertools
import random

import pytest

from helpers import choices, eq_tables, seq_pairs
from opengames import combinators as C
from opengames.core import profile_from_tables
from opengames.domains import UNIT, IntRange, Labels
from opengames.equilibrium import (
    NormalFormSpec,
    SequentialSpec,
    check_profile,
    diagnose,
    equilibria,
    nash_oracle,
    spe_oracle,
)
from opengames.errors import BudgetExceeded, NotClosedError, StructuralError
from opengames.stdgames import (
    MEETING,
    PD,
    PD_PAYOFFS,
    CournotParams,
    bimatrix,
    bimatrix_spec,
    cournot,
    decision,
    meeting_ny,
    meeting_payoff,
    prisoners_dilemma,
    sequential,
    ultimatum,
)


def meeting_profile(game, a, b):
    return profile_from_tables(game.sigma, [(a,), (b,)])


# -- equilibria -----------------------------------------------------------------


def test_meeting_equilibria():
    assert choices(meeting_ny()) == {("GCT", "GCT"), ("ES", "ES")}


def test_meeting_order_is_profile_index_order():
    g = meeting_ny()
    found = equilibria(g, workers=1)
    idx = [list(g.sigma.profiles()).index(s) for s in found]
    assert idx == sorted(idx)


def test_pd_equilibrium():
    assert choices(prisoners_dilemma()) == {("D", "D")}


def test_trivial_closed_game():
    g = C.identity([])
    assert g.iface.is_closed()
    found = equilibria(g, workers=1)
    assert len(found) == 1 and g.sigma.size == 1


def test_budget_refused():
    g = cournot(CournotParams(13, 1, 1, IntRange(0, 12)))
    with pytest.raises(BudgetExceeded) as info:
        equilibria(g, budget=100)
    assert info.value.needed == 169
    assert "169" in str(info.value)


def test_not_closed():
    g = decision(Labels(("a", "b")), lambda y: 0.0, obs=Labels(("x", "y")))
    with pytest.raises(NotClosedError, match="not a closed game"):
        equilibria(g)
    with pytest.raises(NotClosedError):
        check_profile(g, g.sigma.profile(0))


def test_negative_tolerance_rejected():
    with pytest.raises(ValueError):
        equilibria(meeting_ny(), tol=-1)


# -- check_profile ----------------------------------------------------------------


def test_check_profile_meeting():
    g = meeting_ny()
    assert check_profile(g, meeting_profile(g, "GCT", "GCT"))
    assert check_profile(g, meeting_profile(g, "ES", "ES"))
    assert not check_profile(g, meeting_profile(g, "GCT", "ES"))
    assert not check_profile(g, meeting_profile(g, "ES", "GCT"))


def test_check_profile_rejects_ill_typed():
    g = meeting_ny()
    with pytest.raises(StructuralError):
        check_profile(g, (("Paris",), ("GCT",)))


@pytest.mark.parametrize("build", [meeting_ny, prisoners_dilemma, lambda: ultimatum(2)])
def test_check_profile_agrees_with_enumeration(build):
    g = build()
    found = set(equilibria(g, workers=1))
    for s in g.sigma.profiles():
        assert check_profile(g, s) == (s in found)


# -- diagnose -------------------------------------------------------------------------


def test_diagnose_equilibrium():
    g = meeting_ny()
    v = diagnose(g, meeting_profile(g, "GCT", "GCT"))
    assert v.equilibrium and not v.deviations
    assert [c.player for c in v.checks] == ["P1", "P2"]
    assert all(c.payoff == 2.0 for c in v.checks)


def test_diagnose_names_deviations():
    g = meeting_ny()
    v = diagnose(g, meeting_profile(g, "GCT", "ES"))
    assert not v.equilibrium
    devs = {c.player: c for c in v.deviations}
    assert set(devs) == {"P1", "P2"}
    assert devs["P1"].choice == "GCT" and devs["P1"].best_choice == "ES"
    assert devs["P1"].payoff == 0.0 and devs["P1"].best_payoff == 2.0


def test_diagnose_sequential_reports_each_history():
    g = ultimatum(1)
    # leader keeps 1, follower rejects everything: follower is indifferent at
    # y1 = 1 but strictly prefers accepting at y1 = 0
    s = profile_from_tables(g.sigma, [(1,), ("R", "R")])
    v = diagnose(g, s)
    assert not v.equilibrium
    bad = [(c.player, c.observation) for c in v.deviations]
    assert ("P2", 0) in bad
    assert ("P2", 1) not in bad


# -- oracles ----------------------------------------------------------------------------


def test_nash_oracle_table1():
    spec = bimatrix_spec(MEETING, MEETING, meeting_payoff, meeting_payoff)
    assert set(nash_oracle(spec)) == {("GCT", "GCT"), ("ES", "ES")}


def test_nash_oracle_zero_utilities():
    t = Labels(("a", "b", "c"))
    spec = NormalFormSpec((t, t), lambda p: (0, 0))
    assert nash_oracle(spec) == list(itertools.product(t.values(), t.values()))


def test_nash_oracle_pd():
    spec = bimatrix_spec(PD, PD, lambda a, b: PD_PAYOFFS[a, b][0], lambda a, b: PD_PAYOFFS[a, b][1])
    assert nash_oracle(spec) == [("D", "D")]


def test_nash_oracle_three_players():
    t = IntRange(0, 1)
    # everyone wants to match the majority
    spec = NormalFormSpec((t, t, t), lambda p: tuple(float(sum(p) >= 2) if x == 1 else float(sum(p) <= 1) for x in p))
    assert set(nash_oracle(spec)) == {(0, 0, 0), (1, 1, 1)}


def test_nash_oracle_tolerance():
    t = Labels(("a", "b"))
    spec = NormalFormSpec((t,), lambda p: (1.0 if p[0] == "a" else 1.0 + 1e-12,))
    assert nash_oracle(spec) == [("a",), ("b",)]
    assert nash_oracle(spec, tol=0) == [("b",)]


def test_nash_oracle_budget():
    t = IntRange(0, 99)
    with pytest.raises(BudgetExceeded):
        nash_oracle(NormalFormSpec((t, t), lambda p: (0, 0)), budget=1000)


def test_spe_oracle_constant_utilities():
    y1, y2 = IntRange(0, 2), Labels(("A", "R"))
    spec = SequentialSpec(y1, y2, lambda a, b: 1, lambda a, b: 1)
    found = spe_oracle(spec)
    assert len(found) == 3 * 2**3
    assert set(found) == {(a, t) for a in y1.values() for t in itertools.product(y2.values(), repeat=3)}


def test_spe_oracle_ultimatum_3():
    y1, y2 = IntRange(0, 3), Labels(("A", "R"))
    spec = SequentialSpec(
        y1, y2, lambda a, b: a if b == "A" else 0, lambda a, b: 3 - a if b == "A" else 0
    )
    assert set(spe_oracle(spec)) == {(3, ("A", "A", "A", "A")), (2, ("A", "A", "A", "R"))}


def test_spe_oracle_budget():
    t = IntRange(0, 9)
    with pytest.raises(BudgetExceeded):
        spe_oracle(SequentialSpec(t, t, lambda a, b: 0, lambda a, b: 0))


# -- randomized oracle equivalence --------------------------------------------------


def random_bimatrix(rng):
    n1, n2 = rng.randint(2, 4), rng.randint(2, 4)
    y1 = Labels(tuple(f"a{i}" for i in range(n1)))
    y2 = IntRange(0, n2 - 1)
    # small integer payoffs so ties and multiple equilibria are common
    t1 = {(a, b): rng.randint(-3, 3) for a in y1.values() for b in y2.values()}
    t2 = {(a, b): rng.randint(-3, 3) for a in y1.values() for b in y2.values()}
    return y1, y2, lambda a, b: t1[a, b], lambda a, b: t2[a, b]


@pytest.mark.parametrize("seed", range(50))
def test_bimatrix_matches_nash_oracle(seed):
    y1, y2, u1, u2 = random_bimatrix(random.Random(seed))
    assert choices(bimatrix(y1, y2, u1, u2)) == set(nash_oracle(bimatrix_spec(y1, y2, u1, u2)))


@pytest.mark.parametrize("seed", range(50))
def test_sequential_matches_spe_oracle(seed):
    rng = random.Random(1000 + seed)
    y1 = IntRange(0, rng.randint(0, 2))
    y2 = Labels(tuple("xyz"[: rng.randint(1, 3)]))
    t1 = {(a, b): rng.randint(0, 3) for a in y1.values() for b in y2.values()}
    t2 = {(a, b): rng.randint(0, 3) for a in y1.values() for b in y2.values()}
    u1, u2 = (lambda a, b: t1[a, b]), (lambda a, b: t2[a, b])
    combined = bool(seed % 2)
    got = seq_pairs(sequential(y1, y2, u1, u2, combined))
    assert got == set(spe_oracle(SequentialSpec(y1, y2, u1, u2)))


# -- determinism across worker counts ---------------------------------------------------


@pytest.mark.parametrize("build", [lambda: cournot(CournotParams(13, 1, 1, IntRange(0, 12))), lambda: ultimatum(3)])
def test_workers_do_not_change_result(build):
    g = build()
    assert g.sigma.size >= 64
    base = equilibria(g, workers=1)
    for w in (2, 8):
        assert equilibria(g, workers=w) == base


def test_eq_tables_stable_between_runs():
    g = ultimatum(3)
    assert eq_tables(g) == eq_tables(g)


def test_decision_with_unit_observation():
    t = Labels(("low", "mid", "high"))
    u = {"low": 1, "mid": 5, "high": 3}
    g = decision(t, lambda y: u[y], obs=UNIT)
    assert choices(g) == {("mid",)}
