import math
from fractions import Fraction as Q

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from rapidgame.diophantine import (
    IntervalTooWide,
    PrecisionExhausted,
    bad_gamma_margin,
    bad_margin,
    brute_force_margin,
    certify_outcome,
    continued_fraction,
    dani_orbit_profile,
    excursion_window,
    format_certificate,
    from_quotients,
    orbit_min_lambda1,
    quadratic_irrational,
)
from rapidgame.game import GameConfig, play
from rapidgame.strategies import CenterPolicy, ConstantBob, alice_composite, bob_adversarial, bob_default_sequence

GOLDEN = (math.sqrt(5) - 1) / 2


def test_cf_examples():
    assert continued_fraction(quadratic_irrational(-1, 1, 5, 2), 5).partial_quotients == [1] * 5
    cf = continued_fraction(Q(1, 3), 4)
    assert cf.terminated and cf.value() == Q(1, 3) and cf.partial_quotients == [3]
    assert continued_fraction(math.sqrt(2) - 1, 6).partial_quotients == [2] * 6


def test_cf_float_rational_detection():
    cf = continued_fraction(0.25, 5)
    assert cf.terminated and cf.value() == Q(1, 4)


def test_cf_precision_exhausted():
    with pytest.raises(PrecisionExhausted):
        continued_fraction(GOLDEN, 60)
    with mpmath.workdps(60):
        assert continued_fraction(quadratic_irrational(-1, 1, 5, 2), 60).partial_quotients == [1] * 60


@given(st.lists(st.integers(1, 50), min_size=1, max_size=12), st.integers(-5, 5))
def test_cf_round_trip_and_invariants(qs, a0):
    x = from_quotients(a0, qs)
    cf = continued_fraction(x, len(qs) + 3)
    assert cf.value() == x
    qden = [q for _, q in cf.convergents]
    assert all(b > a for a, b in zip(qden[1:], qden[2:]))
    for p, q in cf.convergents:
        assert math.gcd(p, q) == 1
        assert abs(x - Q(p, q)) < Q(1, q * q) or x == Q(p, q)


@settings(max_examples=30)
@given(st.lists(st.integers(1, 30), min_size=8, max_size=14), st.integers(2, 6))
def test_cf_truncation_error(qs, d):
    x = from_quotients(0, qs)
    cf = continued_fraction(x, d + 1)
    q_d, q_next = cf.convergents[d][1], cf.convergents[d + 1][1]
    approx = from_quotients(0, cf.partial_quotients[:d])
    assert abs(x - approx) < Q(1, q_d * q_next)


def test_bad_margin_examples():
    m = bad_margin(GOLDEN, 1000)
    assert m >= 1 / (math.sqrt(5) + 2)
    assert m == pytest.approx(brute_force_margin(GOLDEN, 0, 1000), abs=1e-9)
    assert bad_margin(Q(1, 2), 2) == 0
    assert bad_margin(0.5, 5) == 0


def test_bad_margin_liouville_like():
    qs = [2, 3, 10**6, 1, 2, 1, 1]
    x = from_quotients(0, qs)
    cf = continued_fraction(x, 7)
    q_small = cf.convergents[2][1]  # the convergent right before the huge quotient
    m = bad_margin(x, 1000)
    assert m < 1e-5
    hit = min(range(1, 1001), key=lambda q: q * abs(q * x - round(q * x)))
    assert hit == q_small


def test_bad_gamma_margin_examples():
    for x in (Q(3, 7), GOLDEN):
        assert bad_gamma_margin(x, 3, 50) == pytest.approx(bad_margin(x, 50), abs=1e-12)
    assert bad_gamma_margin(Q(0), Q(1, 2), 100) == Q(1, 2)
    v = bad_gamma_margin(GOLDEN, 0.5, 10**4)
    assert v == pytest.approx(brute_force_margin(GOLDEN, 0.5, 10**4), abs=1e-9)


@given(st.fractions(0, 1, max_denominator=10**6), st.fractions(-1, 1, max_denominator=100), st.integers(1, 200))
def test_margin_oracle_and_monotone(x, g, q):
    m = bad_gamma_margin(x, g, q)
    assert m >= 0
    assert float(m) == pytest.approx(brute_force_margin(x, g, q), abs=1e-9)
    assert bad_gamma_margin(x, g, q + 1) <= m
    assert bad_gamma_margin(x, g + 1, q) == m


@given(st.floats(0, 1), st.floats(-1, 1), st.integers(1, 300))
def test_float_margin_matches_oracle(x, g, q):
    assert bad_gamma_margin(x, g, q) == pytest.approx(brute_force_margin(x, g, q), abs=1e-9)
    assert bad_gamma_margin(x, g + 1, q) == pytest.approx(bad_gamma_margin(x, g, q), abs=1e-9)


def test_orbit_profile_of_zero():
    prof = dani_orbit_profile(Q(0), Q(1, 2), 5.0, 50)
    ts = [p[0] for p in prof]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    for t, l1, _ in prof:
        assert l1 == pytest.approx(math.exp(-t), rel=1e-12)
    assert all(b[1] < a[1] for a, b in zip(prof, prof[1:]))


def test_golden_orbit_bounded():
    # binary64 rounding of x would itself show up as a dip near t = 18
    with mpmath.workdps(40):
        x = quadratic_irrational(-1, 1, 5, 2)
    m = orbit_min_lambda1(x, 20.0, 2000)
    assert m > 0.4


def test_orbit_dip_aligns_with_convergent():
    qs = [1, 2, 1, 2000, 1, 2, 1, 1, 3]
    x = from_quotients(0, qs)
    cf = continued_fraction(x, 9)
    q_k, q_next = cf.convergents[3][1], cf.convergents[4][1]
    e = excursion_window(x, 0.0, math.log(q_next) + 2, 4000)
    assert abs(e.onset - math.log(q_k)) <= 0.5
    assert abs(e.t_star - 0.5 * math.log(q_k * q_next)) <= 0.5
    assert abs(e.exit - math.log(q_next)) <= 0.5
    # |p - q x| ~ 1/(a q), so the bottom of the dip has lambda1^2 ~ 2/a
    assert e.depth**2 == pytest.approx(2 / 2000, rel=0.1)


def test_certificate_end_to_end():
    tr = play(GameConfig(max_rounds=100), alice_composite(Q(1, 2)), bob_default_sequence(), 30, 0)
    c = certify_outcome(tr, Q(1, 2), 10**4)
    assert c.bad_gamma_margin > 0
    assert len(c.excursion_minima) >= 2 and c.excursions_decreasing
    ts = [p[0] for p in c.orbit_profile]
    assert all(b > a for a, b in zip(ts, ts[1:]))
    assert c.bad_margin >= 0
    lines = format_certificate(c)
    assert any(l.startswith("bad_gamma_margin:") for l in lines)


def test_certificate_adversarial_target():
    cfg = GameConfig(max_rounds=100, x0=Q(2, 5))
    tr = play(cfg, CenterPolicy(), bob_adversarial([Q(1, 2)]), 20, 0)
    c = certify_outcome(tr, Q(1, 2), 100)
    assert c.bad_gamma_margin < 1e-6


def test_certificate_interval_too_wide():
    tr = play(GameConfig(), CenterPolicy(), ConstantBob(), 1, 0)
    with pytest.raises(IntervalTooWide):
        certify_outcome(tr, Q(1, 2), 10**4)
