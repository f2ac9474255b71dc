"""Hausdorff-dimension lower bound: Cantor trees of game outcomes and covers."""
from __future__ import annotations

import bisect
import copy
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np
from scipy import stats

from .game import AlicePolicy, Ball, GameConfig, Round, Transcript, Variant
from .lattice import exact
from .strategies import CenterPolicy, alpha_sequence

NODE_BUDGET = 2**24
DEPTH_MAX = 8


class DimensionError(Exception):
    pass


class DegenerateBeta(DimensionError, ValueError):
    pass


class Budget(DimensionError):
    pass


class PackingFailure(DimensionError):
    pass


class NotACover(DimensionError, ValueError):
    pass


def seq(alpha, n: int) -> list[Fraction]:
    """First n terms of Bob's sequence alpha/2, alpha, alpha/4, alpha, alpha, alpha/8, ..."""
    return alpha_sequence(alpha, n)


def analytic_lower_bound(alpha, beta) -> float:
    alpha, beta = exact(alpha), exact(beta)
    if not (0 < alpha < 1 and 0 < beta < 1):
        raise ValueError("need 0 < alpha, beta < 1")
    m = math.floor(1 / beta)
    if m < 2:
        raise DegenerateBeta(f"floor(1/beta) = {m} < 2")
    x = alpha / 2 * beta
    v = math.log(m) / (math.log(x.denominator) - math.log(x.numerator))
    return min(1.0, max(0.0, v))


@dataclass
class CantorTree:
    alpha: Fraction
    beta: Fraction
    m: int
    depth: int
    intervals: list  # per level, sorted list of (left, right)
    alice_policy_id: str
    alphas: list = field(default_factory=list)
    rho0: Fraction = Fraction(1)

    def level_radius(self, n: int) -> Fraction:
        r = self.rho0
        for a in self.alphas[:n]:
            r *= self.beta * a
        return r


def _children(ball: Ball, alice: Ball, m: int, radius: Fraction) -> list[Ball]:
    """m balls of the given radius packed from the left of Alice's ball, equal gaps."""
    lo, hi = alice.interval
    slack = (hi - lo) - 2 * m * radius
    if slack < 0:
        raise PackingFailure(f"{m} children of radius {radius} do not fit in {alice}")
    gap = slack / (m - 1) if m > 1 else Fraction(0)
    out = []
    for i in range(m):
        c = lo + radius + i * (2 * radius + gap)
        out.append(Ball(c, radius))
    return out


def build_cantor_tree(
    alice: Optional[AlicePolicy] = None,
    alpha=Fraction(1, 4),
    beta=Fraction(1, 4),
    depth: int = 4,
    seed: int = 0,
    *,
    rho0=Fraction(1),
    gamma=Fraction(1, 2),
    depth_max: int = DEPTH_MAX,
) -> CantorTree:
    """Play ``alice`` against every branch of Bob's m-fold choices.

    Bob's contraction in round n is the n-th term of ``seq``; his m children
    of radius beta*alpha_n*rho_n sit inside Alice's ball.
    """
    alpha, beta = exact(alpha), exact(beta)
    m = math.floor(1 / beta)
    if m < 2:
        raise DegenerateBeta(f"floor(1/beta) = {m} < 2")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    if depth > depth_max or m**depth > NODE_BUDGET:
        raise Budget(f"m^depth = {m}^{depth} exceeds the node budget 2^24 (or depth_max {depth_max})")
    alice = alice or CenterPolicy()
    cfg = GameConfig(Variant.RAPID, alpha, beta, rho0, gamma, max(depth, 1) + 1)
    alphas = seq(alpha, depth)
    alice.reset(cfg)
    root = Ball(cfg.x0, rho0)
    levels: list[list[tuple[Fraction, Fraction]]] = [[root.interval]] + [[] for _ in range(depth)]

    def grow(tr: Transcript, policy: AlicePolicy, ball: Ball, n: int):
        if n == depth:
            return
        a_n = alphas[n]
        tr.rounds.append(Round(ball, None, a_n))
        a = policy.move(tr, ball, a_n)
        if not ball.contains(a) or a.radius != a_n * ball.radius:
            raise PackingFailure(f"Alice's reply {a} is not a legal move in {ball}")
        tr.rounds[-1] = Round(ball, a, a_n)
        kids = _children(ball, a, m, beta * a_n * ball.radius)
        for i, k in enumerate(kids):
            levels[n + 1].append(k.interval)
            if n + 1 < depth:
                last = i == len(kids) - 1
                p = policy if last else copy.deepcopy(policy)
                t = tr if last else tr.copy()
                grow(t, p, k, n + 1)

    grow(Transcript(cfg, root), alice, root, 0)
    for n, lv in enumerate(levels):
        lv.sort()
        if len(lv) != m**n:  # pragma: no cover
            raise PackingFailure(f"level {n} has {len(lv)} intervals, expected {m ** n}")
        for (l1, r1), (l2, r2) in zip(lv, lv[1:]):
            if l2 < r1:
                raise PackingFailure(f"level {n} intervals overlap: [{l1}, {r1}] and [{l2}, {r2}]")
    return CantorTree(alpha, beta, m, depth, levels, getattr(alice, "name", "alice"), alphas, exact(rho0))


# -- covers ------------------------------------------------------------------------


def cover_index(tree: CantorTree, radius: Fraction) -> int:
    """k with r_{k+1} <= radius < r_k, clamped to [0, depth]."""
    for k in range(tree.depth):
        if tree.level_radius(k + 1) <= radius < tree.level_radius(k):
            return k
    if radius >= tree.level_radius(0):
        return 0
    return tree.depth


def counting_inequality_check(tree: CantorTree, cover) -> bool:
    """m^J <= sum_i 2 m^{J - k_i}, after checking that every leaf meets the cover."""
    cover = [(Fraction(l), Fraction(r)) for l, r in cover]
    merged: list[list[Fraction]] = []
    for l, r in sorted(cover):
        if merged and l <= merged[-1][1]:
            merged[-1][1] = max(merged[-1][1], r)
        else:
            merged.append([l, r])
    lefts = [iv[0] for iv in merged]
    for lo, hi in tree.intervals[tree.depth]:
        k = bisect.bisect_right(lefts, hi) - 1
        if k < 0 or merged[k][1] < lo:
            raise NotACover(f"leaf [{float(lo)}, {float(hi)}] meets no cover interval")
    J, m = tree.depth, tree.m
    total = sum(2 * m ** (J - cover_index(tree, (r - l) / 2)) for l, r in cover)
    return m**J <= total


def cover_leaves(tree: CantorTree) -> list:
    return list(tree.intervals[tree.depth])


def cover_whole(tree: CantorTree) -> list:
    lv = tree.intervals[0]
    return [(lv[0][0], lv[-1][1])]


def random_cover(tree: CantorTree, rng: random.Random) -> list:
    """Greedy cover at mixed scales: ancestors, stretched ancestors and tiny leaf covers."""
    J = tree.depth
    lefts = [[iv[0] for iv in lv] for lv in tree.intervals]
    out = []
    leaves = tree.intervals[J]
    i = 0
    while i < len(leaves):
        lo, hi = leaves[i]
        kind = rng.random()
        if kind < 0.15:
            # an interval smaller than a leaf, placed inside it
            c = (lo + hi) / 2
            r = (hi - lo) / 2 * Fraction(rng.randint(1, 9), 10)
            out.append((c - r, c + r))
        else:
            k = rng.randint(0, J)
            lv = tree.intervals[k]
            anc = lv[bisect.bisect_right(lefts[k], lo) - 1]
            stretch = Fraction(rng.randint(0, 50), 100) * (anc[1] - anc[0]) / 2
            out.append((anc[0] - stretch, anc[1] + stretch))
        end = out[-1][1]
        i += 1
        while i < len(leaves) and leaves[i][0] <= end:
            i += 1
    return out


# -- box counting ------------------------------------------------------------------


@dataclass(frozen=True)
class BoxCount:
    slope: float
    stderr: float
    low_confidence: bool
    points: tuple


def box_counting_dim(tree: CantorTree) -> BoxCount:
    """Least-squares slope of log N(eps_n) = n log m against log(1/eps_n)."""
    xs = [_log(1 / tree.level_radius(n)) for n in range(tree.depth + 1)]
    ys = [n * math.log(tree.m) for n in range(tree.depth + 1)]
    low = tree.depth < 4
    if len(xs) < 2:
        return BoxCount(math.nan, math.inf, True, tuple(zip(xs, ys)))
    if len(xs) == 2:
        slope = (ys[1] - ys[0]) / (xs[1] - xs[0])
        return BoxCount(slope, math.inf, True, tuple(zip(xs, ys)))
    fit = stats.linregress(np.array(xs), np.array(ys))
    return BoxCount(float(fit.slope), float(fit.stderr), low, tuple(zip(xs, ys)))


def _log(x: Fraction) -> float:
    return math.log(x.numerator) - math.log(x.denominator)


def slope_bracket(alpha, beta) -> tuple[float, float]:
    """[log m / |log(alpha/2 beta)|, log m / |log(alpha beta)|]."""
    alpha, beta = exact(alpha), exact(beta)
    m = math.floor(1 / beta)
    return (
        math.log(m) / -_log(alpha / 2 * beta),
        math.log(m) / -_log(alpha * beta),
    )


@dataclass(frozen=True)
class DimensionReport:
    analytic_bound: float
    box_counting_estimate: float
    levels_used: int
    counting_inequality_ok: bool
    slope_stderr: float = math.nan
    low_confidence: bool = False


def dimension_report(tree: CantorTree, covers=None) -> DimensionReport:
    bc = box_counting_dim(tree)
    covers = covers if covers is not None else [cover_leaves(tree), cover_whole(tree)]
    ok = all(counting_inequality_check(tree, c) for c in covers)
    est = min(1.0, max(0.0, bc.slope)) if math.isfinite(bc.slope) else 0.0
    return DimensionReport(
        analytic_lower_bound(tree.alpha, tree.beta), est, tree.depth + 1, ok, bc.stderr, bc.low_confidence
    )


def format_tree(tree: CantorTree) -> list[str]:
    lines = ["level,index,left,right"]
    for n, lv in enumerate(tree.intervals):
        for i, (l, r) in enumerate(lv):
            lines.append(f"{n},{i},{l},{r}")
    return lines


def format_report(rep: DimensionReport) -> list[str]:
    return [
        f"analytic_bound: {rep.analytic_bound!r}",
        f"box_counting_estimate: {rep.box_counting_estimate!r}",
        f"slope_stderr: {rep.slope_stderr!r}",
        f"low_confidence: {rep.low_confidence}",
        f"levels_used: {rep.levels_used}",
        f"counting_inequality_ok: {rep.counting_inequality_ok}",
    ]
