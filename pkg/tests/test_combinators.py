import pytest

from opengames import combinators as C
from opengames.core import Continuation, EvalContext, coplay, eq_member, play, profile_from_tables
from opengames.domains import REAL, UNIT, IntRange, Labels
from opengames.equilibrium import equilibria
from opengames.errors import CompositionError, SelectionError
from opengames.stdgames import PD, PD_PAYOFFS, stackelberg, CournotParams, ultimatum
from opengames.domains import NumSet

AB = Labels(("A", "B"))


def test_select_argmax():
    assert C.select(C.ARGMAX, Continuation(AB, {"A": 2.0, "B": 0.0}.get)) == ["A"]


def test_select_argmax_ties():
    assert C.select(C.ARGMAX, Continuation(AB, lambda y: 1.0)) == ["A", "B"]


def test_select_argmax_tolerance():
    k = Continuation(AB, {"A": 1.0, "B": 1.0 + 1e-12}.get)
    assert C.select(C.ARGMAX, k) == ["A", "B"]
    assert C.select(C.ARGMAX, k, tol=0.0) == ["B"]


def test_select_fixpoint():
    t = IntRange(0, 2)
    assert C.select(C.FIXPOINT, Continuation(t, lambda y: y)) == [0, 1, 2]
    assert C.select(C.FIXPOINT, Continuation(t, lambda y: 1)) == [1]


def test_select_prefer_uses_ranking():
    out = Labels(("lose", "draw", "win"))
    sel = C.Prefer(out)
    k = Continuation(AB, {"A": "draw", "B": "win"}.get)
    assert C.select(sel, k) == ["B"]
    reverse = C.Prefer(out, ["win", "draw", "lose"])
    assert C.select(reverse, k) == ["A"]
    with pytest.raises(SelectionError):
        C.Prefer(out, ["win", "lose"])


def test_argmax_player_picks_best_reply():
    p = C.lift_player("P", UNIT, PD)
    k = Continuation(PD, lambda y: float(PD_PAYOFFS[y, "C"][0]))
    best = [s for s in p.sigma.profiles() if eq_member(p, s, (), k)]
    assert best == [("D",)]


def test_fixpoint_player_identity_context():
    t = IntRange(0, 2)
    p = C.lift_player("P", UNIT, t, C.FIXPOINT)
    k = Continuation(t, lambda y: y)
    assert [s for s in p.sigma.profiles() if eq_member(p, s, (), k)] == [(0,), (1,), (2,)]


def test_player_strategy_count():
    p = C.lift_player("P", Labels(("L", "R")), Labels(("a", "b")))
    assert p.sigma.size == 4


def test_player_errors():
    with pytest.raises(SelectionError):
        C.lift_player("P", AB, IntRange(0, 1), C.MATCH)
    with pytest.raises(SelectionError):
        C.lift_player("P", UNIT, REAL)


def test_match_player():
    p = C.lift_player("G", AB, AB, C.MATCH)
    assert p.iface.bwd_in == ()
    assert eq_member(p, ("A", "B"), "A")
    assert not eq_member(p, ("B", "B"), "A")


def test_copy_delete_const():
    assert play(C.copy(AB), None, "A") == ("A", "A")
    assert play(C.delete(AB), None, "B") == ()
    three = C.const(3, IntRange(0, 5))
    assert play(three, None, ()) == 3
    back = C.dual(C.const(3.0, REAL))
    assert coplay(back, None, (), ()) == 3.0
    assert play(back, None, ()) == ()


def test_const_must_inhabit_type():
    with pytest.raises(Exception):
        C.const(9, IntRange(0, 5))


def test_braid_swap_and_inverse():
    t1, t2 = AB, IntRange(0, 1)
    s = C.swap(t1, t2)
    assert play(s, None, ("A", 1)) == (1, "A")
    p = C.Permutation((2, 0, 1), (t1, t2, t1))
    assert p.apply(("x", "y", "z")) == ("z", "x", "y")
    assert p.inverse().apply(p.apply(("x", "y", "z"))) == ("x", "y", "z")
    with pytest.raises(CompositionError):
        C.Permutation((0, 0), (t1, t2))


def test_compose_mismatch_names_both_interfaces():
    f = C.lift_covariant(lambda x: x, AB, AB)
    g = C.lift_covariant(lambda x: x, IntRange(0, 1), IntRange(0, 1))
    with pytest.raises(CompositionError) as err:
        C.compose_seq(f, g)
    msg = str(err.value)
    assert "{A, B}" in msg and "int 0..1" in msg


def test_composed_trivial_lifts():
    f = C.lift_covariant(lambda x: x + 1, IntRange(0, 2), IntRange(1, 3))
    g = C.lift_covariant(lambda x: 2 * x, IntRange(1, 3), IntRange(2, 6))
    h = C.compose_seq(f, g)
    assert [play(h, h.sigma.profile(0), x) for x in range(3)] == [2, 4, 6]
    assert h.trivial and h.sigma.size == 1


def test_tensor_of_lifts():
    f = C.lift_covariant(lambda x: x + 1, IntRange(0, 2), IntRange(1, 3))
    g = C.lift_covariant(str.lower, AB, Labels(("a", "b")))
    t = C.tensor(f, g)
    assert play(t, t.sigma.profile(0), (2, "B")) == (3, "b")


def test_tensor_unit_law():
    p = C.lift_player("P", UNIT, PD)
    t = C.tensor(p, C.identity(UNIT))
    k = lambda ys: (float(PD_PAYOFFS[ys[0], "D"][0]),)
    for s in p.sigma.profiles():
        s2 = (s, t.sigma.right.profile(0))
        assert p.play(s, ()) + ((),) == t.play(s2, ((),))
        assert p.coplay(s, (), (1.0,)) == t.coplay(s2, ((),), (1.0,))
        assert p.equilibrium(s, (), k, EvalContext()) == t.equilibrium(s2, ((),), k, EvalContext())


def test_box_is_transparent():
    p = C.lift_player("P", UNIT, PD)
    b = C.box("inner", p)
    assert b.iface == p.iface and b.sigma.size == p.sigma.size
    k = Continuation(PD, lambda y: float(PD_PAYOFFS[y, "D"][0]))
    for s in p.sigma.profiles():
        assert eq_member(b, s, (), k) == eq_member(p, s, (), k)


@pytest.mark.parametrize(
    "game",
    [ultimatum(2), stackelberg(CournotParams(13, 1, 1, NumSet((0, 3, 4))))],
    ids=["ultimatum", "stackelberg"],
)
def test_literal_quantifier_agrees_with_reachable_histories(game):
    assert equilibria(game, workers=1, literal=True) == equilibria(game, workers=1)


def test_subgame_perfection_needs_all_histories():
    # offering 2 and accepting only 0 is a Nash equilibrium of the ultimatum
    # game (the responder is indifferent on the path) but not subgame perfect
    g = ultimatum(2)
    nash = profile_from_tables(g.sigma, [(2,), ("A", "R", "R")])
    assert nash not in equilibria(g, workers=1)
    perfect = profile_from_tables(g.sigma, [(2,), ("A", "A", "A")])
    assert perfect in equilibria(g, workers=1)
