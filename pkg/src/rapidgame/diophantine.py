"""Continued fractions, finite-depth Bad / Bad^gamma margins and orbit profiles."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

import mpmath
import numpy as np

from .game import StateTracker, Transcript, outcome, relative_coords
from .lattice import gauss_reduce, grid_of_real, lattice_of_real, shortest_grid_vector

Interval = tuple[Fraction, Fraction]
N_SEGMENT_SAMPLES = 64


class PrecisionExhausted(ArithmeticError):
    pass


class IntervalTooWide(ValueError):
    pass


@dataclass(frozen=True)
class CFExpansion:
    a0: int
    partial_quotients: list
    convergents: list  # (p, q), starting with (a0, 1)
    terminated: bool = False

    def value(self) -> Fraction:
        p, q = self.convergents[-1]
        return Fraction(p, q)


def _as_interval(x) -> tuple[Fraction, Fraction, bool]:
    """(lo, hi, exact) bracketing the real number that x stands for."""
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return x, x, True
    if isinstance(x, mpmath.mpf):
        man, exp = x.man_exp
        v = Fraction(int(man)) * Fraction(2) ** int(exp)
        eps = abs(v) * Fraction(2) ** (1 - mpmath.mp.prec) + Fraction(2) ** -(mpmath.mp.prec + 64)
        return v - eps, v + eps, False
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    v = Fraction(x)
    eps = Fraction(math.ulp(x)) if x else Fraction(2) ** -1074
    return v - eps, v + eps, False


def continued_fraction(x, depth: int) -> CFExpansion:
    """Partial quotients of x, certified against the input's precision.

    Rationals are expanded exactly and stop at their last quotient.  Floats
    and mpf values are treated as the interval of reals they could round
    from; expansion stops (as a rational) when that interval contains a
    convergent, and PrecisionExhausted is raised when the quotients of the
    two ends disagree before ``depth`` is reached.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    lo, hi, _ = _as_interval(x)
    quotients = []
    terminated = False
    while len(quotients) <= depth:
        a_lo, a_hi = math.floor(lo), math.floor(hi)
        if a_lo != a_hi:
            if a_hi - a_lo != 1:
                raise PrecisionExhausted(
                    f"precision exhausted after {max(len(quotients) - 1, 0)} partial quotients"
                )
            # the interval straddles one integer: x is that convergent as far
            # as the input precision can tell
            quotients.append(a_hi)
            terminated = True
            break
        a = a_lo
        quotients.append(a)
        r_lo, r_hi = lo - a, hi - a
        if r_lo == 0:
            terminated = True
            break
        lo, hi = 1 / r_hi, 1 / r_lo
    p0, q0, p1, q1 = 1, 0, quotients[0], 1
    convs = [(p1, q1)]
    for a in quotients[1:]:
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        convs.append((p1, q1))
    return CFExpansion(quotients[0], quotients[1:depth + 1], convs[:depth + 1], terminated)


def from_quotients(a0: int, quotients) -> Fraction:
    v = Fraction(0)
    for a in reversed(list(quotients)):
        v = 1 / (a + v)
    return a0 + v


# -- margins ---------------------------------------------------------------------


def _exact_gamma_margin(x: Fraction, gamma: Fraction, Q: int, half_width: Fraction = Fraction(0)):
    """min_q q*dist(q x - gamma, Z) - q^2 * half_width, exactly."""
    a, b = x.numerator, x.denominator
    c, d = gamma.numerator, gamma.denominator
    wn, wd = half_width.numerator, half_width.denominator
    D = b * d
    best_num = None
    # q*m/D - q^2*wn/wd = (q*m*wd - q^2*wn*D) / (D*wd)
    step = a * d
    N = -c * b
    for q in range(1, Q + 1):
        N += step
        r = N % D
        m = min(r, D - r)
        num = q * m * wd - q * q * wn * D
        if best_num is None or num < best_num:
            best_num = num
            if best_num <= 0 and wn == 0:
                break
    return Fraction(best_num, D * wd)


def bad_margin(x, Q: int):
    """min over 1 <= q <= Q of q * dist(q x, Z)."""
    return bad_gamma_margin(x, 0, Q)


def bad_gamma_margin(x, gamma, Q: int):
    """min over 1 <= q <= Q of q * dist(q x - gamma, Z).

    Exact (a Fraction) for rational x and gamma, float otherwise.
    """
    if Q < 1:
        raise ValueError("Q must be >= 1")
    if isinstance(x, (int, Fraction)) and isinstance(gamma, (int, Fraction)):
        return _exact_gamma_margin(Fraction(x), Fraction(gamma), Q)
    q = np.arange(1, Q + 1, dtype=np.float64)
    if isinstance(x, mpmath.mpf):
        x = Fraction(*_mpf_ratio(x))
    xf = Fraction(x) if not isinstance(x, Fraction) else x
    # split x = x_hi + x_lo so that q*x keeps its fractional part accurate
    hi = float(xf)
    lo = float(xf - Fraction(hi))
    g = float(gamma)
    y = q * hi
    y = (y - np.floor(y)) + q * lo - g
    d = np.abs(y - np.round(y))
    return float(np.min(q * d))


def _mpf_ratio(x):
    man, exp = x.man_exp
    man, exp = int(man), int(exp)
    return (man * 2**exp, 1) if exp >= 0 else (man, 2**-exp)


def brute_force_margin(x, gamma, Q: int):
    """Oracle: enumerate all (p, q) with q <= Q and |p - q x + gamma| <= 1."""
    best = math.inf
    xf, gf = float(x), float(gamma)
    for q in range(1, Q + 1):
        c = q * xf - gf
        for p in range(math.floor(c) - 1, math.ceil(c) + 2):
            e = abs(p - c)
            if e <= 1:
                best = min(best, q * e)
    return best


# -- orbits ----------------------------------------------------------------------


def dani_orbit_profile(x, gamma, T: float, steps: int) -> list[tuple[float, float, float]]:
    """(t, lambda1(g_t Lambda_x), Delta(g_t Lambda_{x,gamma})) on a uniform grid of [0, T]."""
    if T <= 0:
        raise ValueError("T must be positive")
    if steps < 2:
        raise ValueError("steps must be >= 2")
    xe, ge = _real(x), _real(gamma)
    lat = lattice_of_real(xe)
    grid = grid_of_real(xe, ge)
    out = []
    for t in np.linspace(0.0, T, steps):
        t = float(t)
        l1 = gauss_reduce(lat.flowed(t)).lambda1
        d = shortest_grid_vector(grid.flowed(t))[1]
        out.append((t, l1, d))
    return out


def _real(x):
    return Fraction(*_mpf_ratio(x)) if isinstance(x, mpmath.mpf) else x


def _lambda1_samples(x, t0: float, t1: float, steps: int):
    lat = lattice_of_real(_real(x))
    ts = [float(t) for t in np.linspace(t0, t1, steps)]
    return ts, [gauss_reduce(lat.flowed(t)).lambda1 for t in ts]


def orbit_min_lambda1(x, T: float, steps: int = 2000) -> float:
    return min(_lambda1_samples(x, 0.0, T, steps)[1])


def dip_location(x, t0: float, t1: float, steps: int = 2000) -> tuple[float, float]:
    """(t*, lambda1) at the deepest sampled point of the orbit on [t0, t1]."""
    ts, ls = _lambda1_samples(x, t0, t1, steps)
    k = int(np.argmin(ls))
    return ts[k], ls[k]


@dataclass(frozen=True)
class Excursion:
    onset: float
    t_star: float
    depth: float
    exit: float


def excursion_window(x, t0: float, t1: float, steps: int = 2000, level: float = 1.0) -> Excursion:
    """The deepest sampled dip on [t0, t1] and the run of samples around it with lambda1 < level.

    A convergent p/q followed by a large partial quotient a sends the orbit
    below ``level`` near t = log q; the bottom sits near log q + (1/2) log a.
    """
    ts, ls = _lambda1_samples(x, t0, t1, steps)
    k = int(np.argmin(ls))
    i = j = k
    while i > 0 and ls[i - 1] < level:
        i -= 1
    while j + 1 < len(ls) and ls[j + 1] < level:
        j += 1
    return Excursion(ts[i], ts[k], ls[k], ts[j])


# -- certificates ----------------------------------------------------------------


@dataclass
class Certificate:
    x: Union[Interval, float]
    gamma: Fraction
    Q: int
    bad_margin: float
    bad_gamma_margin: float
    orbit_profile: list
    width: float = 0.0
    midpoint: Optional[Fraction] = None
    bad_gamma_margin_mid: float = 0.0
    endpoint_gamma_margins: tuple = ()
    excursion_minima: list = field(default_factory=list)
    excursion_rounds: list = field(default_factory=list)
    T: float = 0.0

    @property
    def excursions_decreasing(self) -> bool:
        m = self.excursion_minima
        return all(b < a for a, b in zip(m, m[1:]))


def excursion_minima(tr: Transcript, samples: int = N_SEGMENT_SAMPLES) -> list[tuple[int, float]]:
    """(round, min lambda1) over each Alice segment g_tau u_z tagged auxiliary."""
    track = StateTracker(tr.config.base_grid())
    out = []
    for n, r in enumerate(tr.rounds):
        if r.tag != "auxiliary" or r.alice_ball is None:
            continue
        g = track(r.bob_ball).lattice
        z, s = relative_coords(r.bob_ball, r.alice_ball)
        moved = g.sheared(z)
        taus = sorted({*(s * i / (samples - 1) for i in range(samples - 1)), s / 2})
        vals = [gauss_reduce(moved.flowed(tau)).lambda1 for tau in taus]
        vals.append(gauss_reduce(moved.flowed_radius(r.alice_ball.radius / r.bob_ball.radius)).lambda1)
        out.append((n, min(vals)))
    return out


def certify_outcome(tr: Transcript, gamma, Q: int, T: Optional[float] = None, steps: int = 200) -> Certificate:
    """Margins and orbit profile of the outcome interval of a transcript."""
    lo, hi = outcome(tr)
    w = hi - lo
    if w >= Fraction(1, Q * Q):
        raise IntervalTooWide(f"outcome interval width {float(w):.3g} >= 1/Q^2 = {1 / Q**2:.3g}")
    gamma = Fraction(gamma)
    mid = (lo + hi) / 2
    half = w / 2
    lower = _exact_gamma_margin(mid, gamma, Q, half)
    lower_hom = _exact_gamma_margin(mid, Fraction(0), Q, half)
    ends = tuple(float(_exact_gamma_margin(e, gamma, Q)) for e in (lo, mid, hi))
    if T is None:
        T = math.log(Q)
    # beyond this time the interval no longer pins the orbit down
    T_valid = 0.5 * (math.log(w.denominator) - math.log(w.numerator)) - 1
    T = min(T, T_valid)
    prof = dani_orbit_profile(mid, gamma, T, steps)
    exc = excursion_minima(tr)
    return Certificate(
        x=(lo, hi),
        gamma=gamma,
        Q=Q,
        bad_margin=max(0.0, float(lower_hom)),
        bad_gamma_margin=max(0.0, float(lower)),
        orbit_profile=prof,
        width=float(w),
        midpoint=mid,
        bad_gamma_margin_mid=ends[1],
        endpoint_gamma_margins=ends,
        excursion_minima=[m for _, m in exc],
        excursion_rounds=[n for n, _ in exc],
        T=T,
    )


def format_certificate(c: Certificate) -> list[str]:
    lo, hi = c.x if isinstance(c.x, tuple) else (c.x, c.x)
    lines = [
        f"interval_lo: {float(lo)!r}",
        f"interval_hi: {float(hi)!r}",
        f"interval_width: {c.width!r}",
        f"gamma: {c.gamma}",
        f"Q: {c.Q}",
        f"bad_margin: {c.bad_margin!r}",
        f"bad_gamma_margin: {c.bad_gamma_margin!r}",
        f"bad_gamma_margin_endpoints: {' '.join(repr(v) for v in c.endpoint_gamma_margins)}",
        f"excursions: {len(c.excursion_minima)}",
        f"excursion_rounds: {' '.join(map(str, c.excursion_rounds)) or '-'}",
        f"excursion_minima: {' '.join(repr(v) for v in c.excursion_minima) or '-'}",
        f"excursions_decreasing: {c.excursions_decreasing}",
        f"profile_T: {c.T!r}",
    ]
    return lines


def format_profile(profile) -> list[str]:
    lines = ["t,lambda1,delta_grid"]
    lines += [f"{t!r},{l!r},{d!r}" for t, l, d in profile]
    return lines


def quadratic_irrational(a: int, b: int, c: int, d: int) -> mpmath.mpf:
    """(a + b sqrt(c)) / d at the working mpmath precision."""
    return (a + b * mpmath.sqrt(c)) / d
