"""Command-line front end: play, certify, orbit, dimension, reduce."""
from __future__ import annotations

import argparse
import collections
import configparser
import hashlib
import math
import os
import random
import sys
from fractions import Fraction
from typing import Optional

from . import __version__
from .diophantine import (
    IntervalTooWide,
    PrecisionExhausted,
    certify_outcome,
    continued_fraction,
    dani_orbit_profile,
    format_certificate,
    format_profile,
)
from .dimension import (
    Budget,
    DegenerateBeta,
    PackingFailure,
    analytic_lower_bound,
    box_counting_dim,
    build_cantor_tree,
    cover_leaves,
    cover_whole,
    dimension_report,
    format_report,
    format_tree,
    random_cover,
)
from .game import (
    ConfigError,
    GameConfig,
    GameError,
    Variant,
    format_transcript,
    outcome,
    parse_transcript,
    play,
    rapid_verdict,
)
from .lattice import (
    Grid,
    Lattice,
    LatticeError,
    Mat2,
    Vec2,
    gauss_reduce,
    lattice_of_real,
    shortest_grid_vector,
)
from .strategies import (
    AdversarialBob,
    CenterPolicy,
    CompositePolicy,
    ConstantBob,
    DefaultGridPolicy,
    MaxRadiusPolicy,
    RandomBob,
    SequenceBob,
    StrategyError,
    rapid_default_policy,
)

PRECISION = 53

EXIT_OK, EXIT_CONFIG, EXIT_POLICY, EXIT_WIDE, EXIT_BUDGET = 0, 2, 3, 4, 5

DEFAULTS = {
    "play": {
        "variant": "rapid", "alpha": "1/4", "beta": "1/4", "rho0": "1", "gamma": "1/2",
        "x0": "0", "rounds": "30", "max_rounds": "1000", "alice": "composite", "bob": "seq",
        "targets": "", "seed": None,
    },
    "certify": {"transcript": None, "gamma": None, "Q": "10000", "T": None, "steps": "200"},
    "orbit": {"x": None, "gamma": "0", "T": "10", "steps": "101", "depth": "12"},
    "dimension": {
        "alpha": "1/4", "beta": "1/100", "depth": None, "alice": "center", "covers": "0", "seed": "0",
    },
    "reduce": {"x": None, "basis": None, "translation": None},
}


class CliError(Exception):
    def __init__(self, code: int, msg: str):
        super().__init__(msg)
        self.code = code


def parse_rational(s: str, name: str = "value") -> Fraction:
    """'p/q' or a decimal string, read exactly."""
    try:
        return Fraction(s.strip())
    except (ValueError, ZeroDivisionError, AttributeError):
        raise CliError(EXIT_CONFIG, f"{name}: cannot parse {s!r} as a rational or decimal")


def parse_int(s: str, name: str) -> int:
    try:
        return int(s)
    except (TypeError, ValueError):
        raise CliError(EXIT_CONFIG, f"{name}: expected an integer, got {s!r}")


def parse_list(s: str, name: str, n: Optional[int] = None) -> list[Fraction]:
    vals = [parse_rational(p, name) for p in s.replace(" ", "").split(",") if p]
    if n is not None and len(vals) != n:
        raise CliError(EXIT_CONFIG, f"{name}: expected {n} comma-separated numbers")
    return vals


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="rapidgame", description=__doc__)
    p.add_argument("--version", action="version", version=f"rapidgame {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--config", help="INI file with a section per command")
        sp.add_argument("--out", help="output directory (default runs/<command>-<hash>)")
        sp.add_argument("--precision", type=int, help="binary precision P (only 53 is supported)")

    sp = sub.add_parser("play", help="play a game and write its transcript")
    common(sp)
    sp.add_argument("--variant", choices=[v.value for v in Variant])
    for k in ("alpha", "beta", "rho0", "gamma", "x0"):
        sp.add_argument(f"--{k}")
    sp.add_argument("--rounds")
    sp.add_argument("--max-rounds", dest="max_rounds")
    sp.add_argument("--alice", choices=["center", "default", "composite", "max-radius"])
    sp.add_argument("--bob", choices=["seq", "random", "adversarial", "constant"])
    sp.add_argument("--targets", help="comma-separated rationals for the adversarial Bob")
    sp.add_argument("--seed")

    sp = sub.add_parser("certify", help="certify the outcome of a transcript")
    common(sp)
    sp.add_argument("--transcript")
    sp.add_argument("--gamma")
    sp.add_argument("--Q")
    sp.add_argument("--T")
    sp.add_argument("--steps")

    sp = sub.add_parser("orbit", help="orbit profile of Lambda_x and Lambda_{x,gamma}")
    common(sp)
    sp.add_argument("--x")
    sp.add_argument("--gamma")
    sp.add_argument("--T")
    sp.add_argument("--steps")
    sp.add_argument("--depth", help="continued fraction depth to report")

    sp = sub.add_parser("dimension", help="dimension bound and Cantor tree statistics")
    common(sp)
    sp.add_argument("--alpha")
    sp.add_argument("--beta")
    sp.add_argument("--depth")
    sp.add_argument("--alice", choices=["center", "default", "composite"])
    sp.add_argument("--covers", help="number of random covers to check")
    sp.add_argument("--seed")

    sp = sub.add_parser("reduce", help="successive minima of a lattice or grid")
    common(sp)
    sp.add_argument("--x")
    sp.add_argument("--basis", help="m11,m12,m21,m22 (columns are basis vectors)")
    sp.add_argument("--translation", help="r1,r2")
    return p


def merged_config(args) -> dict:
    cmd = args.command
    cfg = dict(DEFAULTS[cmd])
    if args.config:
        cp = configparser.ConfigParser()
        cp.optionxform = str
        try:
            with open(args.config) as fh:
                cp.read_file(fh)
        except (OSError, configparser.Error) as e:
            raise CliError(EXIT_CONFIG, f"config file: {e}")
        if cp.has_section(cmd):
            for k, v in cp.items(cmd):
                key = k.replace("-", "_")
                if key not in cfg:
                    raise CliError(EXIT_CONFIG, f"config file: unknown key {k!r} in [{cmd}]")
                cfg[key] = v
    for k in cfg:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def config_hash(cmd: str, cfg: dict) -> str:
    text = "\n".join([cmd] + [f"{k}={cfg[k]}" for k in sorted(cfg) if cfg[k] is not None])
    return hashlib.sha256(text.encode()).hexdigest()[:12]


class Output:
    def __init__(self, cmd: str, cfg: dict, out: Optional[str]):
        self.hash = config_hash(cmd, cfg)
        self.dir = out or os.path.join("runs", f"{cmd}-{self.hash}")
        self.header = f"# rapidgame {__version__} config={self.hash} P={PRECISION}"
        self.echo = [f"command = {cmd}"] + [f"{k} = {cfg[k]}" for k in sorted(cfg) if cfg[k] is not None]
        self.ready = False

    def write(self, name: str, lines) -> str:
        if not self.ready:
            # created on first write so failed runs leave nothing behind
            os.makedirs(self.dir, exist_ok=True)
            self.ready = True
            self.write("config.txt", self.echo)
        path = os.path.join(self.dir, name)
        with open(path, "w", newline="\n") as fh:
            fh.write(self.header + "\n")
            for ln in lines:
                fh.write(ln + "\n")
        return path


def _alice(name: str, cfg: GameConfig):
    if name == "center":
        return CenterPolicy()
    if name == "max-radius":
        if cfg.variant is not Variant.STRONG:
            raise CliError(EXIT_CONFIG, "alice=max-radius is a strong-game policy")
        return MaxRadiusPolicy()
    if name == "default":
        if cfg.variant is Variant.RAPID:
            return rapid_default_policy(cfg.alpha, cfg.beta)
        return DefaultGridPolicy(cfg.alpha, cfg.beta)
    if name == "composite":
        if cfg.variant is not Variant.RAPID:
            raise CliError(EXIT_CONFIG, "alice=composite needs --variant rapid")
        return CompositePolicy()
    raise CliError(EXIT_CONFIG, f"unknown alice policy {name!r}")


def _bob(name: str, targets: str):
    if name == "seq":
        return SequenceBob()
    if name == "random":
        return RandomBob()
    if name == "constant":
        return ConstantBob()
    if name == "adversarial":
        return AdversarialBob(parse_list(targets, "targets") if targets else [])
    raise CliError(EXIT_CONFIG, f"unknown bob policy {name!r}")


def cmd_play(cfg: dict, out: Output) -> int:
    if cfg["seed"] is None:
        raise CliError(EXIT_CONFIG, "seed is required (all Bob policies are randomized)")
    seed = parse_int(cfg["seed"], "seed")
    rounds = parse_int(cfg["rounds"], "rounds")
    if rounds < 0:
        raise CliError(EXIT_CONFIG, "rounds must be non-negative")
    try:
        gc = GameConfig(
            Variant(cfg["variant"]),
            parse_rational(cfg["alpha"], "alpha"),
            parse_rational(cfg["beta"], "beta"),
            parse_rational(cfg["rho0"], "rho0"),
            parse_rational(cfg["gamma"], "gamma"),
            parse_int(cfg["max_rounds"], "max_rounds"),
            parse_rational(cfg["x0"], "x0"),
        )
    except ValueError as e:
        raise CliError(EXIT_CONFIG, str(e))
    try:
        alice = _alice(cfg["alice"], gc)
    except StrategyError as e:
        raise CliError(EXIT_POLICY, f"policy error: {e}")
    bob = _bob(cfg["bob"], cfg["targets"])
    try:
        tr = play(gc, alice, bob, rounds, seed)
    except ConfigError as e:
        raise CliError(EXIT_CONFIG, str(e))
    except (GameError, StrategyError, LatticeError) as e:
        raise CliError(EXIT_POLICY, f"policy error: {e}")
    out.write("transcript.txt", format_transcript(tr))
    lo, hi = outcome(tr)
    tags = collections.Counter(r.tag or "-" for r in tr.rounds)
    summary = [
        f"rounds: {len(tr.rounds)}",
        f"outcome_lo: {lo}",
        f"outcome_hi: {hi}",
        f"outcome_mid: {float((lo + hi) / 2)!r}",
        f"outcome_width: {float(hi - lo)!r}",
        "phases: " + (" ".join(f"{k}={tags[k]}" for k in sorted(tags)) or "-"),
    ]
    if gc.variant is Variant.RAPID:
        v = rapid_verdict(tr, bob.declared_threshold)
        summary += [
            f"declared_threshold: {bob.declared_threshold}",
            f"default_win_flag: {v.default_win_flag}",
            f"liminf_alpha_estimate: {v.liminf_alpha_estimate}",
        ]
    if isinstance(alice, CompositePolicy):
        summary.append(f"excursions: {len(alice.cycles)}")
        for c in alice.cycles:
            summary.append(
                f"cycle k={c.k} round={c.round} alpha_n={c.alpha_n} depth={c.depth!r} "
                f"recovery_round={'-' if c.recovery_round is None else c.recovery_round}"
            )
    out.write("summary.txt", summary)
    print("\n".join(summary))
    return EXIT_OK


def cmd_certify(cfg: dict, out: Output) -> int:
    if not cfg["transcript"]:
        raise CliError(EXIT_CONFIG, "--transcript is required")
    try:
        with open(cfg["transcript"]) as fh:
            tr = parse_transcript(fh.read().splitlines())
    except OSError as e:
        raise CliError(EXIT_CONFIG, f"transcript: {e}")
    except (ValueError, KeyError, IndexError) as e:
        raise CliError(EXIT_CONFIG, f"transcript: malformed ({e})")
    gamma = tr.config.gamma if cfg["gamma"] is None else parse_rational(cfg["gamma"], "gamma")
    Q = parse_int(cfg["Q"], "Q")
    if Q < 1:
        raise CliError(EXIT_CONFIG, "Q must be >= 1")
    T = None if cfg["T"] is None else float(parse_rational(cfg["T"], "T"))
    try:
        cert = certify_outcome(tr, gamma, Q, T, parse_int(cfg["steps"], "steps"))
    except IntervalTooWide as e:
        raise CliError(EXIT_WIDE, str(e))
    lines = format_certificate(cert)
    out.write("certificate.txt", lines)
    out.write("profile.csv", format_profile(cert.orbit_profile))
    print("\n".join(lines))
    return EXIT_OK


def cmd_orbit(cfg: dict, out: Output) -> int:
    if cfg["x"] is None:
        raise CliError(EXIT_CONFIG, "--x is required")
    x = parse_rational(cfg["x"], "x")
    gamma = parse_rational(cfg["gamma"], "gamma")
    T = float(parse_rational(cfg["T"], "T"))
    steps = parse_int(cfg["steps"], "steps")
    if T <= 0 or steps < 2:
        raise CliError(EXIT_CONFIG, "need T > 0 and steps >= 2")
    try:
        prof = dani_orbit_profile(x, gamma, T, steps)
    except OverflowError as e:
        raise CliError(EXIT_CONFIG, str(e))
    out.write("orbit.csv", format_profile(prof))
    try:
        cf = continued_fraction(x, parse_int(cfg["depth"], "depth"))
        cf_line = f"continued_fraction: [{cf.a0}; {', '.join(map(str, cf.partial_quotients))}]"
    except PrecisionExhausted as e:  # pragma: no cover - exact input
        cf_line = f"continued_fraction: {e}"
    tmin, lmin, _ = min(prof, key=lambda r: r[1])
    summary = [
        f"x: {x}",
        f"gamma: {gamma}",
        cf_line,
        f"min_lambda1: {lmin!r} at t={tmin!r}",
        f"min_delta_grid: {min(r[2] for r in prof)!r}",
    ]
    out.write("summary.txt", summary)
    print("\n".join(summary))
    return EXIT_OK


def cmd_dimension(cfg: dict, out: Output) -> int:
    alpha = parse_rational(cfg["alpha"], "alpha")
    beta = parse_rational(cfg["beta"], "beta")
    try:
        bound = analytic_lower_bound(alpha, beta)
    except DegenerateBeta as e:
        raise CliError(EXIT_CONFIG, str(e))
    except ValueError as e:
        raise CliError(EXIT_CONFIG, str(e))
    lines = [f"alpha: {alpha}", f"beta: {beta}", f"m: {math.floor(1 / beta)}", f"analytic_bound: {bound!r}"]
    if cfg["depth"] is not None:
        depth = parse_int(cfg["depth"], "depth")
        name = cfg["alice"]
        gc = GameConfig(Variant.RAPID, alpha, beta)
        alice = _alice(name, gc)
        try:
            tree = build_cantor_tree(alice, alpha, beta, depth, parse_int(cfg["seed"], "seed"))
        except Budget as e:
            raise CliError(EXIT_BUDGET, str(e))
        except (PackingFailure, StrategyError, GameError) as e:
            raise CliError(EXIT_POLICY, str(e))
        rng = random.Random(parse_int(cfg["seed"], "seed"))
        covers = [cover_leaves(tree), cover_whole(tree)]
        covers += [random_cover(tree, rng) for _ in range(parse_int(cfg["covers"], "covers"))]
        rep = dimension_report(tree, covers)
        bc = box_counting_dim(tree)
        lines = format_report(rep) + [f"covers_checked: {len(covers)}"]
        lines += [f"point log_inv_eps={x!r} log_count={y!r}" for x, y in bc.points]
        out.write("tree.csv", format_tree(tree))
    out.write("report.txt", lines)
    print("\n".join(lines))
    return EXIT_OK


def cmd_reduce(cfg: dict, out: Output) -> int:
    try:
        if cfg["basis"] is not None:
            m = parse_list(cfg["basis"], "basis", 4)
            lat = Lattice(Mat2(*m))
        elif cfg["x"] is not None:
            lat = lattice_of_real(parse_rational(cfg["x"], "x"))
        else:
            raise CliError(EXIT_CONFIG, "give --x or --basis")
        rep = gauss_reduce(lat)
    except LatticeError as e:
        raise CliError(EXIT_CONFIG, str(e))
    lines = [
        f"lambda1: {rep.lambda1!r}",
        f"lambda2: {rep.lambda2!r}",
        f"mu: {rep.mu!r}",
        f"v1: {rep.v1.v1!r} {rep.v1.v2!r}",
        f"v2: {rep.v2.v1!r} {rep.v2.v2!r}",
    ]
    if cfg["translation"] is not None:
        r = parse_list(cfg["translation"], "translation", 2)
        p, d = shortest_grid_vector(Grid(lat, Vec2(*r)))
        lines += [f"delta_grid: {d!r}", f"closest_grid_point: {p.v1!r} {p.v2!r}"]
    out.write("reduce.txt", lines)
    print("\n".join(lines))
    return EXIT_OK


COMMANDS = {
    "play": cmd_play,
    "certify": cmd_certify,
    "orbit": cmd_orbit,
    "dimension": cmd_dimension,
    "reduce": cmd_reduce,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.precision is not None and args.precision != PRECISION:
            raise CliError(EXIT_CONFIG, f"precision P={args.precision} unsupported; only P={PRECISION}")
        cfg = merged_config(args)
        out = Output(args.command, cfg, args.out)
        return COMMANDS[args.command](cfg, out)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
