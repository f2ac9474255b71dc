"""Nested-ball games on the real line and their grid reformulation.

Balls carry exact rational centres and radii.  A ball B(c, r) corresponds to
the grid g_t u_c (Z^2 + (gamma, 0)) with r = e^{-2t}.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .lattice import Grid, Lattice, Mat2, Vec2, exact

Q = Fraction


class Variant(enum.Enum):
    CLASSICAL = "classical"
    STRONG = "strong"
    RAPID = "rapid"


class Mover(enum.Enum):
    ALICE = "alice"
    BOB = "bob"


class GameError(Exception):
    pass


class ConfigError(GameError, ValueError):
    pass


class MalformedMove(GameError):
    pass


class NotNested(GameError):
    pass


class IllegalPolicyMove(GameError):
    def __init__(self, round_index: int, mover: Mover, detail: str = ""):
        self.round_index = round_index
        self.mover = mover
        super().__init__(f"illegal {mover.value} move in round {round_index}: {detail}")


@dataclass(frozen=True)
class Ball:
    center: Fraction
    radius: Fraction

    def __post_init__(self):
        object.__setattr__(self, "center", exact(self.center))
        object.__setattr__(self, "radius", exact(self.radius))
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    def contains(self, other: "Ball") -> bool:
        return abs(other.center - self.center) + other.radius <= self.radius

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return self.center - self.radius, self.center + self.radius


@dataclass(frozen=True)
class GameConfig:
    variant: Variant = Variant.RAPID
    alpha: Fraction = Q(1, 4)
    beta: Fraction = Q(1, 4)
    rho0: Fraction = Q(1)
    gamma: Fraction = Q(1, 2)
    max_rounds: int = 1000
    x0: Fraction = Q(0)
    base: Optional[Grid] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for name in ("alpha", "beta", "rho0", "gamma", "x0"):
            object.__setattr__(self, name, exact(getattr(self, name)))
        if isinstance(self.variant, str):
            object.__setattr__(self, "variant", Variant(self.variant))
        if not 0 < self.alpha < 1:
            raise ConfigError(f"alpha must satisfy 0 < alpha < 1, got {self.alpha}")
        if not 0 < self.beta < 1:
            raise ConfigError(f"beta must satisfy 0 < beta < 1, got {self.beta}")
        if self.rho0 <= 0:
            raise ConfigError(f"rho0 must be positive, got {self.rho0}")
        if self.max_rounds < 0:
            raise ConfigError("max_rounds must be non-negative")

    def base_grid(self) -> Grid:
        """The initial state Z^2 + (gamma, 0) unless another base grid was given."""
        if self.base is not None:
            return self.base
        return Grid(Lattice(Mat2.identity()), Vec2(self.gamma, 0))


@dataclass(frozen=True)
class Round:
    bob_ball: Ball
    alice_ball: Optional[Ball] = None
    alpha_n: Optional[Fraction] = None
    tag: str = ""


@dataclass
class Transcript:
    config: GameConfig
    root: Ball
    rounds: list[Round] = field(default_factory=list)

    def copy(self) -> "Transcript":
        return Transcript(self.config, self.root, list(self.rounds))

    @property
    def last_ball(self) -> Ball:
        if not self.rounds:
            return self.root
        r = self.rounds[-1]
        return r.alice_ball if r.alice_ball is not None else r.bob_ball

    def complete_rounds(self) -> list[Round]:
        return [r for r in self.rounds if r.alice_ball is not None]

    def derived(self) -> list[dict]:
        """Per-round grid coordinates t_n, s_n, z_n, w_n."""
        out = []
        rs = self.complete_rounds()
        for n, r in enumerate(rs):
            t = grid_time(r.bob_ball)
            z, s = relative_coords(r.bob_ball, r.alice_ball)
            w = None
            if n + 1 < len(self.rounds):
                w, _ = relative_coords(r.alice_ball, self.rounds[n + 1].bob_ball)
            out.append({"t": t, "s": s, "z": z, "w": w})
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Transcript)
            and self.config == other.config
            and self.root == other.root
            and self.rounds == other.rounds
        )


@dataclass(frozen=True)
class RapidVerdict:
    default_win_flag: bool
    liminf_alpha_estimate: Fraction


def validate_move(
    state: Transcript, proposed: Ball, mover: Mover, alpha_n: Optional[Fraction] = None
) -> bool:
    """Whether ``proposed`` is legal for ``mover`` given the transcript so far.

    An Alice move answers the Bob ball of the last (incomplete) round; a Bob
    move opens a new round after the last complete one.
    """
    cfg = state.config
    rapid = cfg.variant is Variant.RAPID
    if mover is Mover.BOB:
        if rapid:
            if alpha_n is None:
                raise MalformedMove("a rapid Bob move must carry alpha_n")
            if not 0 < alpha_n <= cfg.alpha:
                return False
        if not state.rounds:
            return proposed.radius == cfg.rho0
        last = state.rounds[-1]
        if last.alice_ball is None:
            return False
        prev = last.alice_ball
        if not prev.contains(proposed):
            return False
        if cfg.variant is Variant.CLASSICAL:
            return proposed.radius == cfg.beta * prev.radius
        if cfg.variant is Variant.STRONG:
            return proposed.radius >= cfg.beta * prev.radius
        return proposed.radius == cfg.beta * last.alpha_n * last.bob_ball.radius
    if not state.rounds or state.rounds[-1].alice_ball is not None:
        return False
    last = state.rounds[-1]
    bob = last.bob_ball
    if not bob.contains(proposed):
        return False
    if cfg.variant is Variant.CLASSICAL:
        return proposed.radius == cfg.alpha * bob.radius
    if cfg.variant is Variant.STRONG:
        return proposed.radius >= cfg.alpha * bob.radius
    return proposed.radius == last.alpha_n * bob.radius


def outcome(tr: Transcript) -> tuple[Fraction, Fraction]:
    """Closed interval known to contain the outcome x_inf."""
    return tr.last_ball.interval


def log_ratio(x: Fraction) -> float:
    """log of a positive rational without float underflow."""
    x = Fraction(x)
    return math.log(x.numerator) - math.log(x.denominator)


def grid_time(b: Ball) -> float:
    return 0.5 * log_ratio(1 / b.radius)


def ball_to_grid(b: Ball, base: Grid) -> Grid:
    """g_t u_c base with t = -1/2 log(radius)."""
    return base.sheared(b.center).flowed_radius(b.radius)


class StateTracker:
    """Grid states of successive balls, each advanced from the previous one.

    Keeps the stored basis reduced so that exact reductions stay short.
    """

    def __init__(self, base: Grid):
        self.base = base
        self.ball: Optional[Ball] = None
        self.grid: Optional[Grid] = None

    def __call__(self, b: Ball) -> Grid:
        if self.ball == b:
            return self.grid
        if self.ball is None:
            g = ball_to_grid(b, self.base)
        else:
            prev = self.ball
            g = self.grid.sheared((b.center - prev.center) / prev.radius)
            g = g.flowed_radius(b.radius / prev.radius)
        self.ball, self.grid = b, g.rebased()
        return self.grid


def relative_coords(prev: Ball, nxt: Ball) -> tuple[Fraction, float]:
    """(z, s): rescaled centre offset and flow increment of a nested move."""
    if not prev.contains(nxt):
        raise NotNested(f"{nxt} is not inside {prev}")
    z = (nxt.center - prev.center) / prev.radius
    s = 0.5 * log_ratio(prev.radius / nxt.radius)
    return z, s


def compose(prev: Ball, z: Fraction, factor: Fraction) -> Ball:
    """The ball with rescaled offset z and radius factor relative to prev."""
    return Ball(prev.center + exact(z) * prev.radius, prev.radius * exact(factor))


def rapid_verdict(tr: Transcript, declared_threshold: Fraction) -> RapidVerdict:
    alphas = [r.alpha_n for r in tr.rounds if r.alpha_n is not None]
    if not alphas:
        return RapidVerdict(declared_threshold > 0, Q(0))
    tail = alphas[len(alphas) // 2:]
    flag = declared_threshold > 0 and min(alphas) >= declared_threshold
    return RapidVerdict(flag, min(tail))


class AlicePolicy:
    """Alice's move function; subclasses override ``move``."""

    name = "alice"
    tag = ""

    def reset(self, config: GameConfig) -> None:
        self.config = config
        self.tracker = StateTracker(config.base_grid())

    def move(self, tr: Transcript, bob_ball: Ball, alpha_n: Fraction) -> Ball:
        raise NotImplementedError


class BobPolicy:
    name = "bob"
    declared_threshold: Fraction = Q(0)

    def reset(self, config: GameConfig, rng: random.Random) -> None:
        self.config = config
        self.rng = rng

    def opening_alpha(self) -> Optional[Fraction]:
        raise NotImplementedError

    def move(self, tr: Transcript, alice_ball: Ball) -> tuple[Ball, Optional[Fraction]]:
        raise NotImplementedError


def alice_factor(cfg: GameConfig, alpha_n: Optional[Fraction]) -> Fraction:
    return alpha_n if cfg.variant is Variant.RAPID else cfg.alpha


def play(
    config: GameConfig, alice: AlicePolicy, bob: BobPolicy, rounds: int, seed: int
) -> Transcript:
    """Play ``rounds`` rounds; every move is validated."""
    if rounds > config.max_rounds:
        raise ConfigError(f"rounds {rounds} exceeds max_rounds {config.max_rounds}")
    rng = random.Random(seed)
    alice.reset(config)
    bob.reset(config, rng)
    root = Ball(config.x0, config.rho0)
    tr = Transcript(config, root)
    rapid = config.variant is Variant.RAPID
    for n in range(rounds):
        if n == 0:
            bob_ball = root
            alpha_n = bob.opening_alpha() if rapid else None
        else:
            bob_ball, alpha_n = bob.move(tr, tr.rounds[-1].alice_ball)
        if rapid and alpha_n is None:
            raise IllegalPolicyMove(n, Mover.BOB, "missing alpha_n")
        if not validate_move(tr, bob_ball, Mover.BOB, alpha_n):
            raise IllegalPolicyMove(n, Mover.BOB, f"{bob_ball} alpha_n={alpha_n}")
        tr.rounds.append(Round(bob_ball, None, alpha_n))
        a = alice.move(tr, bob_ball, alpha_n)
        if not validate_move(tr, a, Mover.ALICE, alpha_n):
            raise IllegalPolicyMove(n, Mover.ALICE, str(a))
        tr.rounds[-1] = replace(tr.rounds[-1], alice_ball=a, tag=getattr(alice, "tag", ""))
    return tr


# -- serialization -------------------------------------------------------------


def _fmt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, float):
        return repr(x)
    return str(x)


def format_transcript(tr: Transcript) -> list[str]:
    """Line records ``round n | alpha_n | bob c r | alice c r | t s z w | tag``.

    Centres, radii and alpha_n are exact rationals; t, s, z, w are decimals.
    """
    c = tr.config
    lines = [
        f"config variant={c.variant.value} alpha={c.alpha} beta={c.beta} rho0={c.rho0} "
        f"gamma={c.gamma} x0={c.x0} max_rounds={c.max_rounds}",
    ]
    for n, (r, d) in enumerate(zip(tr.complete_rounds(), tr.derived())):
        lines.append(
            f"round {n} | {_fmt(r.alpha_n)} | bob {r.bob_ball.center} {r.bob_ball.radius} | "
            f"alice {r.alice_ball.center} {r.alice_ball.radius} | "
            f"{d['t']!r} {d['s']!r} {_fmt(float(d['z']))} "
            f"{_fmt(None if d['w'] is None else float(d['w']))} | {r.tag or '-'}"
        )
    return lines


def parse_transcript(lines: list[str]) -> Transcript:
    lines = [ln.strip() for ln in lines if ln.strip() and not ln.startswith("#")]
    head = dict(kv.split("=", 1) for kv in lines[0].split()[1:])
    cfg = GameConfig(
        variant=Variant(head["variant"]),
        alpha=Q(head["alpha"]),
        beta=Q(head["beta"]),
        rho0=Q(head["rho0"]),
        gamma=Q(head["gamma"]),
        x0=Q(head["x0"]),
        max_rounds=int(head["max_rounds"]),
    )
    tr = Transcript(cfg, Ball(cfg.x0, cfg.rho0))
    for ln in lines[1:]:
        parts = [p.strip() for p in ln.split("|")]
        alpha_n = None if parts[1] == "-" else Q(parts[1])
        _, bc, br = parts[2].split()
        _, ac, ar = parts[3].split()
        tag = "" if parts[5] == "-" else parts[5]
        tr.rounds.append(Round(Ball(Q(bc), Q(br)), Ball(Q(ac), Q(ar)), alpha_n, tag))
    return tr
