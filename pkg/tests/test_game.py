import math
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from rapidgame.game import (
    AlicePolicy,
    Ball,
    BobPolicy,
    ConfigError,
    GameConfig,
    IllegalPolicyMove,
    MalformedMove,
    Mover,
    NotNested,
    Round,
    StateTracker,
    Transcript,
    Variant,
    ball_to_grid,
    compose,
    format_transcript,
    outcome,
    parse_transcript,
    play,
    rapid_verdict,
    relative_coords,
    validate_move,
)
from rapidgame.lattice import Grid, Lattice, Mat2, Vec2, flow, gauss_reduce, shear, shortest_grid_vector
from rapidgame.strategies import CenterPolicy, ConstantBob, RandomBob, SequenceBob

from conftest import brute_minima


class CenterBob(BobPolicy):
    def opening_alpha(self):
        return self.config.alpha

    def move(self, tr, alice_ball):
        cfg = tr.config
        if cfg.variant is Variant.RAPID:
            last = tr.rounds[-1]
            return Ball(alice_ball.center, cfg.beta * last.alpha_n * last.bob_ball.radius), cfg.alpha
        return Ball(alice_ball.center, cfg.beta * alice_ball.radius), None


class EscapingAlice(AlicePolicy):
    def move(self, tr, bob_ball, alpha_n):
        return Ball(bob_ball.center + bob_ball.radius, alpha_n * bob_ball.radius)


def _after_bob(cfg, bob_ball, alpha_n=None):
    tr = Transcript(cfg, Ball(cfg.x0, cfg.rho0))
    tr.rounds.append(Round(bob_ball, None, alpha_n))
    return tr


def test_validate_move_classical_examples():
    cfg = GameConfig(Variant.CLASSICAL, Q(1, 4), Q(1, 4))
    tr = _after_bob(cfg, Ball(0, 1))
    assert validate_move(tr, Ball(Q(1, 2), Q(1, 4)), Mover.ALICE)
    assert not validate_move(tr, Ball(Q(4, 5), Q(1, 4)), Mover.ALICE)
    assert not validate_move(tr, Ball(0, Q(1, 3)), Mover.ALICE)


def test_validate_move_rapid_example():
    cfg = GameConfig(Variant.RAPID, Q(1, 4), Q(1, 4))
    tr = _after_bob(cfg, Ball(0, 1), Q(1, 8))
    alice = Ball(Q(1, 2), Q(1, 8))
    assert validate_move(tr, alice, Mover.ALICE, Q(1, 8))
    tr.rounds[-1] = Round(Ball(0, 1), alice, Q(1, 8))
    assert validate_move(tr, Ball(Q(1, 2), Q(1, 32)), Mover.BOB, Q(1, 4))
    assert not validate_move(tr, Ball(Q(1, 2), Q(1, 16)), Mover.BOB, Q(1, 4))
    assert not validate_move(tr, Ball(Q(1, 2), Q(1, 32)), Mover.BOB, Q(1, 2))
    with pytest.raises(MalformedMove):
        validate_move(tr, Ball(Q(1, 2), Q(1, 32)), Mover.BOB)


def test_validate_move_strong():
    cfg = GameConfig(Variant.STRONG, Q(1, 4), Q(1, 4))
    tr = _after_bob(cfg, Ball(0, 1))
    assert validate_move(tr, Ball(0, Q(1, 2)), Mover.ALICE)
    assert not validate_move(tr, Ball(0, Q(1, 8)), Mover.ALICE)
    tr.rounds[-1] = Round(Ball(0, 1), Ball(0, Q(1, 2)))
    assert validate_move(tr, Ball(Q(1, 4), Q(1, 4)), Mover.BOB)
    assert not validate_move(tr, Ball(0, Q(1, 16)), Mover.BOB)


def test_outcome_examples():
    cfg = GameConfig()
    tr = _after_bob(cfg, Ball(Q(3, 10), Q(1, 10)))
    assert outcome(tr) == (Q(1, 5), Q(2, 5))
    cfg = GameConfig(Variant.CLASSICAL, Q(1, 2), Q(1, 2), max_rounds=20)
    tr = play(cfg, CenterPolicy(), CenterBob(), 8, 0)
    for n, r in enumerate(tr.rounds):
        assert r.bob_ball.interval == (-Q(1, 4**n), Q(1, 4**n))


def test_outcome_nested_in_random_game():
    tr = play(GameConfig(max_rounds=50), CenterPolicy(), RandomBob(), 30, 11)
    prev = None
    for n in range(1, len(tr.rounds) + 1):
        cut = Transcript(tr.config, tr.root, tr.rounds[:n])
        lo, hi = outcome(cut)
        if prev:
            assert prev[0] <= lo and hi <= prev[1]
        prev = (lo, hi)


def test_ball_to_grid_examples():
    base = GameConfig().base_grid()
    assert ball_to_grid(Ball(0, 1), base) == base
    g = ball_to_grid(Ball(0, Q(1)), base)
    assert g.translation == Vec2(Q(1, 2), 0)
    # radius e^-2 is not rational: flow by t = 1 directly
    assert base.flowed(1) == Grid(Lattice(flow(1)), flow(1) @ Vec2(0.5, 0))
    z2 = Grid(Lattice(Mat2.identity()), Vec2(0, 0))
    g = ball_to_grid(Ball(Q(1, 2), Q(1, 4)), z2)
    l1, l2 = brute_minima(flow(0.5 * math.log(4)) @ shear(0.5))
    assert gauss_reduce(g.lattice).lambda1 == pytest.approx(l1, abs=1e-12)
    assert gauss_reduce(g.lattice).lambda2 == pytest.approx(l2, abs=1e-12)


def test_relative_coords_examples():
    z, s = relative_coords(Ball(0, 1), Ball(0, Q(1, 4)))
    assert z == 0 and s == pytest.approx(0.5 * math.log(4))
    z, s = relative_coords(Ball(0, 1), Ball(Q(3, 4), Q(1, 4)))
    assert z == Q(3, 4) and z == 1 - Q(1, 4)
    assert float(z) == pytest.approx(1 - math.exp(-2 * s))
    with pytest.raises(NotNested):
        relative_coords(Ball(0, 1), Ball(Q(4, 5), Q(1, 4)))


def test_play_examples():
    cfg = GameConfig(max_rounds=50)
    tr = play(cfg, CenterPolicy(), SequenceBob(), 0, 0)
    assert tr.rounds == [] and tr.last_ball == Ball(0, 1)
    tr = play(cfg, CenterPolicy(), SequenceBob(), 6, 0)
    assert [r.alpha_n for r in tr.rounds] == [Q(1, 8), Q(1, 4), Q(1, 16), Q(1, 4), Q(1, 4), Q(1, 32)]


def test_play_determinism():
    cfg = GameConfig(max_rounds=50)
    a = play(cfg, CenterPolicy(), RandomBob(), 25, 4)
    b = play(cfg, CenterPolicy(), RandomBob(), 25, 4)
    assert a == b
    assert format_transcript(a) == format_transcript(b)
    assert play(cfg, CenterPolicy(), RandomBob(), 25, 5) != a


def test_illegal_policy_move_names_round_and_mover():
    with pytest.raises(IllegalPolicyMove) as e:
        play(GameConfig(), EscapingAlice(), ConstantBob(), 3, 0)
    assert e.value.mover is Mover.ALICE and "round 0" in str(e.value)


def test_config_validation():
    for bad in ({"alpha": 0}, {"alpha": 1}, {"beta": Q(3, 2)}, {"rho0": 0}, {"max_rounds": -1}):
        with pytest.raises(ConfigError):
            GameConfig(**bad)
    with pytest.raises(ConfigError):
        play(GameConfig(max_rounds=3), CenterPolicy(), ConstantBob(), 4, 0)


def test_rapid_verdict():
    cfg = GameConfig(max_rounds=50)
    bob = ConstantBob()
    tr = play(cfg, CenterPolicy(), bob, 10, 0)
    v = rapid_verdict(tr, bob.declared_threshold)
    assert v.default_win_flag and v.liminf_alpha_estimate == Q(1, 4)
    bob = SequenceBob()
    tr = play(cfg, CenterPolicy(), bob, 10, 0)
    assert not rapid_verdict(tr, bob.declared_threshold).default_win_flag


def test_transcript_round_trip():
    tr = play(GameConfig(max_rounds=50), CenterPolicy(), RandomBob(), 20, 9)
    lines = format_transcript(tr)
    back = parse_transcript(lines)
    assert back == tr


def test_state_tracker_matches_direct_state():
    tr = play(GameConfig(max_rounds=80), CenterPolicy(), RandomBob(), 60, 2)
    base = tr.config.base_grid()
    track = StateTracker(base)
    for r in tr.rounds[::7]:
        a, b = track(r.bob_ball), ball_to_grid(r.bob_ball, base)
        assert gauss_reduce(a.lattice).lambda1 == pytest.approx(gauss_reduce(b.lattice).lambda1, rel=1e-9)
        assert shortest_grid_vector(a)[1] == pytest.approx(shortest_grid_vector(b)[1], rel=1e-9)


# -- properties --------------------------------------------------------------------

seeds = st.integers(0, 10**6)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 25))
def test_rapid_radius_law_is_exact(seed, n):
    cfg = GameConfig(max_rounds=50, beta=Q(1, 3), rho0=Q(2, 3))
    tr = play(cfg, CenterPolicy(), RandomBob(), n, seed)
    width = 2 * cfg.rho0
    for k, r in enumerate(tr.rounds):
        assert r.alice_ball.radius == r.alpha_n * r.bob_ball.radius
        assert r.bob_ball.contains(r.alice_ball)
        if k + 1 < len(tr.rounds):
            nxt = tr.rounds[k + 1].bob_ball
            assert nxt.radius == cfg.beta * r.alpha_n * r.bob_ball.radius
            assert r.alice_ball.contains(nxt)
        assert r.bob_ball.radius * 2 == width
        width *= cfg.beta * r.alpha_n
    lo, hi = outcome(tr)
    assert hi - lo == width / cfg.beta


@given(
    st.fractions(-5, 5, max_denominator=1000),
    st.fractions(Q(1, 1000), 10, max_denominator=1000),
    st.fractions(-1, 1, max_denominator=1000),
    st.fractions(Q(1, 1000), 1, max_denominator=1000),
)
def test_relative_coords_round_trip(c, r, u, f):
    prev = Ball(c, r)
    nxt = Ball(c + u * (1 - f) * r, f * r)
    z, s = relative_coords(prev, nxt)
    assert compose(prev, z, nxt.radius / prev.radius) == nxt
    assert abs(z) <= 1 - math.exp(-2 * s) + 1e-9


@settings(max_examples=25, deadline=None)
@given(seeds)
def test_ball_to_grid_functoriality(seed):
    tr = play(GameConfig(max_rounds=20), CenterPolicy(), RandomBob(), 6, seed)
    base = tr.config.base_grid()
    for r in tr.rounds:
        z, s = relative_coords(r.bob_ball, r.alice_ball)
        lhs = ball_to_grid(r.alice_ball, base)
        rhs = ball_to_grid(r.bob_ball, base).sheared(z).flowed(s)
        assert gauss_reduce(lhs.lattice).lambda1 == pytest.approx(gauss_reduce(rhs.lattice).lambda1, rel=1e-9)
        assert shortest_grid_vector(lhs)[1] == pytest.approx(shortest_grid_vector(rhs)[1], rel=1e-7, abs=1e-9)
