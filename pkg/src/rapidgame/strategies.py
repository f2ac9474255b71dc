"""Alice and Bob policies: default, auxiliary and composite strategies."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .game import (
    AlicePolicy,
    Ball,
    BobPolicy,
    GameConfig,
    IllegalPolicyMove,
    Mover,
    Round,
    Transcript,
    Variant,
    alice_factor,
    ball_to_grid,
    compose,
    validate_move,
)
from .lattice import (
    TOL_GEOM,
    Grid,
    Lattice,
    Vec2,
    _ext_gcd,
    _ip,
    _sqrt,
    line_distance,
    exact,
    gauss_reduce,
    in_F,
    in_K,
    shortest_grid_vector,
)

Q = Fraction

SIN_PI_8 = math.sin(math.pi / 8)
C_SEL = 4 * (1 + 1 / SIN_PI_8)
TAN_3PI_8 = math.tan(3 * math.pi / 8)
TOL_MOVE_BITS = 64
N_TAU_SAMPLES = 64


class StrategyError(Exception):
    pass


class AlphaTooLarge(StrategyError):
    pass


class NotInK(StrategyError):
    pass


class FlowTooShort(StrategyError):
    pass


class NoSafeVector(StrategyError):
    pass


class ParameterViolation(StrategyError):
    pass


def default_constants(alpha, beta, delta=None) -> dict:
    """zeta, zeta', theta, theta' for the default strategy."""
    alpha, beta = float(alpha), float(beta)
    zeta = 0.5 * alpha * beta
    theta = zeta if delta is None else min(float(delta), zeta)
    return {
        "zeta": zeta,
        "zeta_prime": 0.5 * alpha * beta * zeta,
        "theta": theta,
        "theta_prime": 0.5 * alpha * beta * theta,
    }


def state_grid(config: GameConfig, ball: Ball) -> Grid:
    return ball_to_grid(ball, config.base_grid())


def sqrt_rational(x: Fraction, bits: int = TOL_MOVE_BITS) -> Fraction:
    """A rational within 2^-bits of sqrt(x)."""
    x = Fraction(x)
    scale = 1 << (2 * bits)
    return Fraction(math.isqrt(x.numerator * scale // x.denominator), 1 << bits)


def round_move(x, bits: int = TOL_MOVE_BITS) -> Fraction:
    return Fraction(round(Fraction(x) * (1 << bits)), 1 << bits)


def _push_sign(v: Vec2) -> int:
    """Shear sign that maximises |v1 - z v2|; 0 when either sign works."""
    p = float(v.v1) * float(v.v2)
    if p > 0:
        return -1
    if p < 0:
        return 1
    return 0


# -- default strategy ------------------------------------------------------------


def alice_default_homogeneous(
    lat: Lattice, alpha: Fraction, bob_ball: Ball = Ball(0, 1)
) -> Ball:
    """Push the unique short primitive vector away with the extreme shear."""
    alpha = exact(alpha)
    if alpha > Q(1, 4):
        raise AlphaTooLarge(f"alpha = {alpha} > 1/4")
    rep = gauss_reduce(lat)
    z = Q(0)
    if rep.lambda1 < 1:
        s = _push_sign(rep.v1) or -1
        z = s * (1 - alpha)
    return compose(bob_ball, z, alpha)


def alice_default_grid(
    g: Grid,
    alpha: Fraction,
    bob_ball: Ball = Ball(0, 1),
    *,
    theta: float,
    lattice_first: bool = True,
) -> tuple[Ball, str]:
    """One default move on a grid state.

    Targets are the short primitive lattice vector (norm < 1) and the grid
    point inside B(0, theta/2).  When they ask for opposite shears the one
    named by ``lattice_first`` wins; callers alternate it.
    """
    alpha = exact(alpha)
    if alpha > Q(1, 4):
        raise AlphaTooLarge(f"alpha = {alpha} > 1/4")
    rep = gauss_reduce(g.lattice)
    s_lat = _push_sign(rep.v1) if rep.lambda1 < 1 else None
    p, delta = shortest_grid_vector(g)
    s_grid = _push_sign(p) if delta < theta / 2 else None
    if s_lat is None and s_grid is None:
        return compose(bob_ball, 0, alpha), "center"
    if s_grid is None:
        sign, what = (s_lat or -1), "lattice"
    elif s_lat is None:
        sign, what = (s_grid or -1), "grid"
    elif s_lat == 0 or s_grid == 0 or s_lat == s_grid:
        sign, what = (s_lat or s_grid or -1), "both"
    elif lattice_first:
        sign, what = s_lat, "lattice"
    else:
        sign, what = s_grid, "grid"
    return compose(bob_ball, sign * (1 - alpha), alpha), what


class CenterPolicy(AlicePolicy):
    """Alice always re-centres."""

    name = "center"
    tag = "center"

    def move(self, tr, bob_ball, alpha_n):
        return compose(bob_ball, 0, alice_factor(tr.config, alpha_n))


class DefaultGridPolicy(AlicePolicy):
    """Default strategy for the strong (or classical) game.

    Alternates lattice and grid priority from move to move.
    """

    name = "default"
    tag = "default"

    def __init__(self, alpha: Fraction, beta: Fraction, delta: Optional[float] = None):
        self.alpha = exact(alpha)
        self.beta = exact(beta)
        if self.alpha > Q(1, 4):
            raise AlphaTooLarge(f"alpha = {self.alpha} > 1/4")
        self.constants = default_constants(alpha, beta, delta)
        self.parity = 0
        self.last_action = ""

    def move(self, tr, bob_ball, alpha_n):
        g = self.tracker(bob_ball)
        factor = alice_factor(tr.config, alpha_n)
        ball, self.last_action = alice_default_grid(
            g, factor, bob_ball, theta=self.constants["theta"], lattice_first=self.parity % 2 == 0
        )
        self.parity += 1
        return ball


class MaxRadiusPolicy(AlicePolicy):
    """Strong-game Alice answering with Bob's own ball (largest legal radius)."""

    name = "max-radius"

    def move(self, tr, bob_ball, alpha_n):
        return bob_ball


# -- strong -> rapid adaptor -----------------------------------------------------


@dataclass
class AdaptorRecord:
    alpha_n: Fraction
    bob_radius: Fraction
    iterations: int
    final_internal_radius: Fraction


class StrongToRapid(AlicePolicy):
    """Rapid-game policy simulating a strong-game policy with halving replies."""

    name = "strong-to-rapid"

    def __init__(self, strong: AlicePolicy, alpha, beta, alpha_prime, beta_prime):
        self.strong = strong
        self.alpha, self.beta = exact(alpha), exact(beta)
        self.alpha_prime, self.beta_prime = exact(alpha_prime), exact(beta_prime)
        if self.alpha_prime > self.alpha:
            raise ParameterViolation(f"alpha' = {alpha_prime} > alpha = {alpha}")
        if self.beta > self.alpha * self.beta_prime / 2:
            raise ParameterViolation(
                f"beta = {beta} > alpha*beta'/2 = {self.alpha * self.beta_prime / 2}"
            )
        self.internal: Optional[Transcript] = None
        self.records: list[AdaptorRecord] = []

    @property
    def tag(self):
        return getattr(self.strong, "tag", "") or "default"

    def reset(self, config):
        super().reset(config)
        self.strong_config = replace(
            config, variant=Variant.STRONG, alpha=self.alpha, beta=self.beta, max_rounds=10**9
        )
        self.strong.reset(self.strong_config)
        self.strong.tracker = self.tracker
        self.internal = None
        self.records = []

    def invalidate(self):
        self.internal = None

    def _start(self, bob_ball: Ball) -> None:
        cfg = replace(self.strong_config, rho0=bob_ball.radius, x0=bob_ball.center)
        self.internal = Transcript(cfg, bob_ball)

    def move(self, tr, bob_ball, alpha_n):
        if alpha_n > self.alpha_prime:
            raise ParameterViolation(f"alpha_n = {alpha_n} > alpha' = {self.alpha_prime}")
        it = self.internal
        if it is None or not it.rounds or not it.rounds[-1].alice_ball.contains(bob_ball):
            self._start(bob_ball)
        elif not validate_move(it, bob_ball, Mover.BOB):
            raise IllegalPolicyMove(len(tr.rounds) - 1, Mover.BOB, "rapid move illegal in strong game")
        it = self.internal
        it.rounds = it.rounds[-1:]
        it.rounds.append(Round(bob_ball))
        target = alpha_n * bob_ball.radius
        k = 0
        while True:
            a = self.strong.move(it, it.rounds[-1].bob_ball, None)
            if not validate_move(it, a, Mover.ALICE):
                raise IllegalPolicyMove(len(tr.rounds) - 1, Mover.ALICE, f"internal strong move {a}")
            it.rounds[-1] = replace(it.rounds[-1], alice_ball=a)
            k += 1
            if self.alpha * a.radius / 2 <= target:
                break
            half = Ball(a.center, a.radius / 2)
            if not validate_move(it, half, Mover.BOB):  # pragma: no cover
                raise IllegalPolicyMove(len(tr.rounds) - 1, Mover.BOB, "internal halving")
            it.rounds = it.rounds[-1:]
            it.rounds.append(Round(half))
        out = Ball(a.center, target)
        if not a.contains(out):  # pragma: no cover - excluded by the parameter check
            raise IllegalPolicyMove(len(tr.rounds) - 1, Mover.ALICE, "emitted ball escapes")
        self.records.append(AdaptorRecord(alpha_n, bob_ball.radius, k, a.radius))
        return out


def strong_to_rapid(strong_policy, alpha, beta, alpha_prime, beta_prime) -> StrongToRapid:
    return StrongToRapid(strong_policy, alpha, beta, alpha_prime, beta_prime)


def rapid_default_policy(alpha, beta, delta=None) -> StrongToRapid:
    """The default strategy lifted to the (alpha, beta)-rapid game."""
    alpha, beta = exact(alpha), exact(beta)
    beta_strong = alpha * beta / 2
    inner = DefaultGridPolicy(alpha, beta, delta)
    return StrongToRapid(inner, alpha, beta_strong, alpha, beta)


# -- auxiliary strategy ----------------------------------------------------------


@dataclass(frozen=True)
class AuxiliaryChoice:
    a: Vec2
    b: Vec2
    x: Optional[Fraction] = None
    t: Optional[float] = None
    tau_star: Optional[float] = None
    a_pre: tuple = field(default=(), compare=False, repr=False)
    b_pre: tuple = field(default=(), compare=False, repr=False)
    a_coef: tuple = field(default=(), compare=False, repr=False)
    b_coef: tuple = field(default=(), compare=False, repr=False)


@dataclass(frozen=True)
class ConditionReport:
    t: float
    zeta: float
    c3: float
    line_distance: float
    swapped: bool
    cond1_lambda1_mid: float
    cond1_tracked_mid: float
    cond1_target: float
    cond2_lambda1_end: float
    cond2_tracked_end: float
    cond3_min_delta: float
    cond3_threshold: float
    cond4_margin_engine: float
    cond4_margin_stated: float
    excursion_min: float
    samples: tuple = field(default=(), repr=False)


def _enumerate(lat: Lattice, radius: float):
    """Yield (pre_vector, (i, j)) for lattice vectors of norm <= radius in the reduced basis."""
    s = lat.scale
    u, v, _, _ = lat.reduced()
    nu, nv, b = float(_ip(s, u, u)), float(_ip(s, v, v)), float(_ip(s, u, v))
    r2 = radius * radius
    jmax = int(2 / math.sqrt(3) * radius / math.sqrt(nv)) + 1
    perp = nv - b * b / nu
    for j in range(-jmax, jmax + 1):
        rest = r2 - j * j * perp
        if rest < 0:
            continue
        c = -j * b / nu
        h = math.sqrt(rest / nu)
        for i in range(math.floor(c - h), math.ceil(c + h) + 1):
            if i == 0 and j == 0:
                continue
            yield (i * u[0] + j * v[0], i * u[1] + j * v[1]), (i, j)


def _upper_octant(w: Vec2) -> bool:
    n = w.norm()
    return w.v1 >= -TOL_GEOM * n and w.v2 >= w.v1 - TOL_GEOM * n


def select_auxiliary_vectors(lat: Lattice, zeta: float) -> AuxiliaryChoice:
    """Primitive a, b spanning the lattice, both in the upper half of the first quadrant."""
    rep = gauss_reduce(lat)
    if rep.lambda1 + TOL_GEOM < zeta:
        raise NotInK(f"lambda1 = {rep.lambda1} < zeta = {zeta}")
    limit = C_SEL / zeta
    radius = 1.5 * rep.lambda2
    best = None
    while best is None:
        radius = min(radius, limit)
        cands = []
        for pre, (i, j) in _enumerate(lat, radius):
            if math.gcd(i, j) != 1:
                continue
            w = lat.coords_of(pre).to_float()
            if w.v2 < 0 or (w.v2 == 0 and w.v1 < 0):
                w, pre, i, j = -w, (-pre[0], -pre[1]), -i, -j
            if _upper_octant(w):
                cands.append((round(w.norm(), 12), w.v1, w.v2, pre, (i, j)))
        if cands:
            best = min(cands, key=lambda c: c[:3])
        elif radius >= limit:
            raise NotInK("no primitive vector in the upper octant within C_sel/zeta")
        else:
            radius *= 2
    _, a1, a2, a_pre, (i, j) = best
    a = Vec2(a1, a2)
    u, v, cu, cv = lat.reduced()
    det_uv = u[0] * v[1] - u[1] * v[0]
    g, x, y = _ext_gcd(i, j)
    k, l = -y, x  # i*l - j*k = 1
    b0 = (k * u[0] + l * v[0], k * u[1] + l * v[1])
    kl = (k, l)
    # a ^ b0 = det_uv; orient to the wanted sign
    steep = a2 > TAN_3PI_8 * a1
    want = -1 if steep else 1
    if (det_uv > 0) != (want > 0):
        b0 = (-b0[0], -b0[1])
        kl = (-k, -l)
    b0w = lat.coords_of(b0).to_float()
    if steep:
        bprime = Vec2(1 / (a2 - a1), 1 / (a2 - a1))
    else:
        bprime = Vec2(0.0, 1 / a1)
    sigma = (b0w - bprime).dot(a) / a.dot(a)
    n = math.floor(sigma)
    b_pre = (b0[0] - n * a_pre[0], b0[1] - n * a_pre[1])
    b = lat.coords_of(b_pre).to_float()

    def coef(m, n):
        return (m * cu[0] + n * cv[0], m * cu[1] + n * cv[1])

    return AuxiliaryChoice(
        a=a, b=b, a_pre=a_pre, b_pre=b_pre,
        a_coef=coef(i, j), b_coef=coef(kl[0] - n * i, kl[1] - n * j),
    )


def _tracked(lat: Lattice, pre, x, tau_scale):
    """Actual coordinates of g_tau u_x applied to a pre-flow vector."""
    s = lat.scale
    a = pre[0] - (x / s) * pre[1]
    r = _sqrt(s * tau_scale)
    return Vec2(float(a) * r, float(pre[1]) / r)


def alice_auxiliary(
    g: Grid,
    t: Optional[float],
    zeta: float,
    bob_ball: Optional[Ball] = None,
    *,
    alpha_n: Optional[Fraction] = None,
    c3: Optional[float] = None,
    samples: int = N_TAU_SAMPLES,
) -> tuple[Ball, AuxiliaryChoice, ConditionReport]:
    """The cusp-excursion move: shear x = a1/a2 - e^{-t} for a chosen lattice vector."""
    if alpha_n is None:
        alpha_n = exact(math.exp(-2 * t))
    alpha_n = exact(alpha_n)
    t = -0.5 * math.log(alpha_n)
    if math.exp(-t) > 0.5 + TOL_GEOM:
        raise FlowTooShort(f"e^-t = {math.exp(-t)} > 1/2")
    lat = g.lattice
    choice = select_auxiliary_vectors(lat, zeta)
    a, b = choice.a, choice.b
    c_a = max(abs(e) for e in (a.v1, a.v2, b.v1, b.v2))
    if c3 is None:
        c3 = 1 / (2 * c_a)
    d_a = line_distance(g, choice.a_coef)
    d_b = line_distance(g, choice.b_coef)
    swapped = d_b > d_a
    vec, pre, dist = (b, choice.b_pre, d_b) if swapped else (a, choice.a_pre, d_a)
    if dist < c3 * zeta:
        raise NoSafeVector(f"line distances {d_a:.3g}, {d_b:.3g} < c3*zeta = {c3 * zeta:.3g}")
    s = lat.scale
    ratio = Fraction(pre[0]) / Fraction(pre[1]) * exact(s)
    x = round_move(ratio - sqrt_rational(alpha_n))
    bound = 1 - alpha_n
    if abs(x) > bound:
        x = bound if x > 0 else -bound
    ball = compose(bob_ball or Ball(0, 1), x, alpha_n)

    moved = g.sheared(x)
    taus = sorted({*(t * i / (samples - 1) for i in range(samples)), 0.0, t / 2, t})
    prof = []
    for tau in taus:
        st = moved.flowed_radius(alpha_n) if tau == t else moved.flowed(tau)
        prof.append((tau, gauss_reduce(st.lattice).lambda1, shortest_grid_vector(st)[1]))
    by_tau = {p[0]: p for p in prof}
    mid = _tracked(lat, pre, x, math.exp(t))
    end = _tracked(lat, pre, x, 1 / alpha_n)
    e_t = math.exp(-t)
    report = ConditionReport(
        t=t,
        zeta=zeta,
        c3=c3,
        line_distance=dist,
        swapped=swapped,
        cond1_lambda1_mid=by_tau[t / 2][1],
        cond1_tracked_mid=mid.norm(),
        cond1_target=math.sqrt(2) * abs(vec.v2) * math.exp(-t / 2),
        cond2_lambda1_end=by_tau[t][1],
        cond2_tracked_end=end.norm(),
        cond3_min_delta=min(p[2] for p in prof),
        cond3_threshold=c3 * zeta,
        cond4_margin_engine=float(bound - abs(x)),
        cond4_margin_stated=1 - e_t - abs(float(x)),
        excursion_min=min(p[1] for p in prof),
        samples=tuple(prof),
    )
    if swapped:
        a, b = b, a
        choice = replace(
            choice, a=a, b=b, a_pre=choice.b_pre, b_pre=choice.a_pre,
            a_coef=choice.b_coef, b_coef=choice.a_coef,
        )
    choice = replace(choice, x=x, t=t, tau_star=t / 2)
    return ball, choice, report


# -- composite -----------------------------------------------------------------


@dataclass
class CycleEntry:
    k: int
    round: int
    alpha_n: Fraction
    depth: float
    recovery_round: Optional[int] = None


class CompositePolicy(AlicePolicy):
    """Default play, waiting for a small alpha_n, then one cusp excursion.

    An excursion is taken when the state is back in K_zeta and F_zeta',
    Bob's alpha_n <= 1/(k + k0) after k excursions, and the predicted excursion depth beats the
    previous cycle's depth.
    """

    name = "composite"

    def __init__(self, delta: Optional[float] = None):
        self.delta = delta
        self.tag = ""

    def reset(self, config):
        if config.variant is not Variant.RAPID:
            raise ParameterViolation("the composite strategy plays the rapid game")
        super().reset(config)
        self.constants = default_constants(config.alpha, config.beta, self.delta)
        self.default = rapid_default_policy(config.alpha, config.beta, self.delta)
        self.default.reset(config)
        self.default.tracker = self.default.strong.tracker = self.tracker
        self.phase = "default"
        self.k = 0
        # offset so that 1/k0 < alpha: a Bob who always plays alpha never triggers
        self.k0 = math.floor(1 / config.alpha) + 1
        self.last_depth = math.inf
        self.cycles: list[CycleEntry] = []
        self.reports: list[ConditionReport] = []

    def move(self, tr, bob_ball, alpha_n):
        zeta, zeta_p = self.constants["zeta"], self.constants["zeta_prime"]
        n = len(tr.rounds) - 1
        g = self.tracker(bob_ball)
        if self.phase == "default" and in_K(g.lattice, zeta) and in_F(g, zeta_p):
            self.phase = "wait"
            if self.cycles and self.cycles[-1].recovery_round is None:
                self.cycles[-1].recovery_round = n
        if self.phase == "wait" and alpha_n <= Q(1, self.k + self.k0) and alpha_n <= Q(1, 4):
            try:
                ball, choice, rep = alice_auxiliary(g, None, zeta, bob_ball, alpha_n=alpha_n)
            except (NoSafeVector, NotInK, FlowTooShort):
                ball = None
            if ball is not None and rep.excursion_min < self.last_depth:
                self.k += 1
                self.last_depth = rep.excursion_min
                self.cycles.append(CycleEntry(self.k, n, alpha_n, rep.excursion_min))
                self.reports.append(rep)
                self.phase = "default"
                self.default.invalidate()
                self.tag = "auxiliary"
                return ball
        self.tag = self.phase
        return self.default.move(tr, bob_ball, alpha_n)


def alice_composite(gamma=None, config: Optional[GameConfig] = None, delta=None) -> CompositePolicy:
    p = CompositePolicy(delta)
    if config is not None:
        p.reset(config)
    return p


# -- Bob -------------------------------------------------------------------------


def alpha_sequence(alpha: Fraction, n: int) -> list[Fraction]:
    """alpha/2, alpha, alpha/4, alpha, alpha, alpha/8, ..."""
    alpha = exact(alpha)
    out: list[Fraction] = []
    j = 1
    while len(out) < n:
        out.extend([alpha] * (j - 1) + [alpha / 2**j])
        j += 1
    return out[:n]


def _uniform_center(rng: random.Random, outer: Ball, radius: Fraction) -> Fraction:
    slack = outer.radius - radius
    u = Fraction(rng.randrange(0, (1 << 16) + 1), 1 << 16)
    return outer.center + slack * (2 * u - 1)


class _BobBase(BobPolicy):
    def _radius(self, tr: Transcript, alice_ball: Ball) -> Fraction:
        cfg = tr.config
        if cfg.variant is Variant.RAPID:
            last = tr.rounds[-1]
            return cfg.beta * last.alpha_n * last.bob_ball.radius
        return cfg.beta * alice_ball.radius

    def _alpha(self, n: int) -> Optional[Fraction]:
        raise NotImplementedError

    def opening_alpha(self):
        return self._alpha(0)

    def _center(self, alice_ball: Ball, radius: Fraction) -> Fraction:
        return _uniform_center(self.rng, alice_ball, radius)

    def move(self, tr, alice_ball):
        r = self._radius(tr, alice_ball)
        c = self._center(alice_ball, r)
        alpha_n = self._alpha(len(tr.rounds)) if tr.config.variant is Variant.RAPID else None
        return Ball(c, r), alpha_n


class SequenceBob(_BobBase):
    """alpha_n from the fixed sequence, uniform random legal centres."""

    name = "seq"

    def reset(self, config, rng):
        super().reset(config, rng)
        self.declared_threshold = Q(0)
        self._seq: list[Fraction] = []

    def _alpha(self, n):
        if n >= len(self._seq):
            self._seq = alpha_sequence(self.config.alpha, 2 * n + 8)
        return self._seq[n]


class RandomBob(_BobBase):
    """Random alpha_n = alpha * u * 2^-j and random centres."""

    name = "random"

    def __init__(self, seed: Optional[int] = None, max_halvings: int = 10):
        self.seed = seed
        self.max_halvings = max_halvings

    def reset(self, config, rng):
        super().reset(config, rng if self.seed is None else random.Random(self.seed))
        self.declared_threshold = config.alpha / 8 / 2**self.max_halvings

    def _alpha(self, n):
        u = Fraction(self.rng.randint(1, 8), 8)
        return self.config.alpha * u / 2 ** self.rng.randint(0, self.max_halvings)


class AdversarialBob(_BobBase):
    """Steers centres greedily toward the given rationals, alpha_n = alpha."""

    name = "adversarial"

    def __init__(self, targets=()):
        self.targets = [exact(x) for x in targets]

    def reset(self, config, rng):
        super().reset(config, rng)
        self.declared_threshold = config.alpha if self.targets else config.alpha / 8 / 2**10
        self._fallback = RandomBob()
        self._fallback.reset(config, rng)

    def _alpha(self, n):
        if not self.targets:
            return self._fallback._alpha(n)
        return self.config.alpha

    def _center(self, alice_ball, radius):
        if not self.targets:
            return super()._center(alice_ball, radius)
        target = min(self.targets, key=lambda q: abs(q - alice_ball.center))
        slack = alice_ball.radius - radius
        return min(max(target, alice_ball.center - slack), alice_ball.center + slack)


class ConstantBob(_BobBase):
    """alpha_n = alpha every round; random centres."""

    name = "constant"

    def reset(self, config, rng):
        super().reset(config, rng)
        self.declared_threshold = config.alpha

    def _alpha(self, n):
        return self.config.alpha


def bob_default_sequence(alpha=None) -> SequenceBob:
    return SequenceBob()


def bob_random(seed: Optional[int] = None) -> RandomBob:
    return RandomBob(seed)


def bob_adversarial(target_rationals=()) -> AdversarialBob:
    return AdversarialBob(target_rationals)
