import math
import os
from pathlib import Path

import pytest

from rapidgame.cli import main

PLAY = ["play", "--variant", "rapid", "--alpha", "1/4", "--beta", "1/4", "--gamma", "1/2",
        "--rounds", "30", "--alice", "composite", "--bob", "seq", "--seed", "7"]


def run(argv, out):
    return main(argv + ["--out", str(out)])


def files(d: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(d.iterdir())}


def test_play_writes_transcript_and_summary(tmp_path, capsys):
    assert run(PLAY, tmp_path / "a") == 0
    fs = files(tmp_path / "a")
    assert set(fs) == {"config.txt", "transcript.txt", "summary.txt"}
    for body in fs.values():
        assert body.startswith(b"# rapidgame 0.1.0 config=") and b" P=53\n" in body.splitlines(True)[0]
    assert "excursions:" in capsys.readouterr().out


def test_play_zero_rounds(tmp_path, capsys):
    assert run(["play", "--rounds", "0", "--seed", "1"], tmp_path) == 0
    out = capsys.readouterr().out
    assert "rounds: 0" in out and "outcome_lo: -1" in out and "outcome_hi: 1" in out


def test_exit_codes(tmp_path, capsys):
    assert run(["play", "--alpha", "2", "--seed", "1"], tmp_path / "x") == 2
    assert "alpha" in capsys.readouterr().err
    assert not (tmp_path / "x").exists()
    assert run(["play"], tmp_path / "y") == 2  # seed is mandatory
    assert run(["play", "--seed", "1", "--precision", "128"], tmp_path / "z") == 2
    assert run(["play", "--seed", "1", "--alpha", "1/2", "--alice", "default"], tmp_path / "p") == 3
    assert run(["dimension", "--beta", "1/8", "--depth", "9"], tmp_path / "b") == 5
    assert run(["play", "--seed", "1", "--rounds", "1"], tmp_path / "t") == 0
    tr = tmp_path / "t" / "transcript.txt"
    assert run(["certify", "--transcript", str(tr)], tmp_path / "w") == 4


def test_config_file_and_flag_override(tmp_path):
    ini = tmp_path / "run.ini"
    ini.write_text("[play]\nrounds = 5\nseed = 3\nbob = random\n")
    assert run(["play", "--config", str(ini)], tmp_path / "a") == 0
    assert run(["play", "--config", str(ini), "--rounds", "6"], tmp_path / "b") == 0
    a = (tmp_path / "a" / "transcript.txt").read_text().splitlines()
    b = (tmp_path / "b" / "transcript.txt").read_text().splitlines()
    assert len(a) == 2 + 5 and len(b) == 2 + 6
    # the last round has no w yet, so compare the rounds before it
    assert a[2:6] == b[2:6]
    ini.write_text("[play]\nbogus = 1\n")
    assert run(["play", "--config", str(ini), "--seed", "1"], tmp_path / "c") == 2


def test_reduce_example(tmp_path, capsys):
    assert run(["reduce", "--x", "0.5"], tmp_path) == 0
    vals = dict(l.split(": ", 1) for l in capsys.readouterr().out.splitlines())
    assert float(vals["lambda1"]) == pytest.approx(1)
    assert float(vals["lambda2"]) == pytest.approx(math.sqrt(5) / 2)
    assert float(vals["mu"]) <= 0.5 * (1 + math.sqrt(5) / 2)


def test_dimension_example(tmp_path, capsys):
    assert run(["dimension", "--alpha", "1/4", "--beta", "1/100"], tmp_path) == 0
    out = capsys.readouterr().out
    bound = float(out.split("analytic_bound: ")[1].split()[0])
    assert bound == pytest.approx(math.log(100) / math.log(800), abs=1e-12)


def test_orbit_example(tmp_path):
    assert run(["orbit", "--x", "0", "--T", "5", "--steps", "11"], tmp_path) == 0
    rows = (tmp_path / "orbit.csv").read_text().splitlines()[2:]
    for row in rows:
        t, l1, _ = map(float, row.split(","))
        assert l1 == pytest.approx(math.exp(-t), rel=1e-12)


def test_certify_end_to_end(tmp_path):
    assert run(PLAY, tmp_path / "p") == 0
    tr = tmp_path / "p" / "transcript.txt"
    assert run(["certify", "--transcript", str(tr), "--Q", "10000"], tmp_path / "c") == 0
    cert = (tmp_path / "c" / "certificate.txt").read_text()
    margin = float(cert.split("bad_gamma_margin: ")[1].split()[0])
    assert margin > 0
    assert (tmp_path / "c" / "profile.csv").read_text().splitlines()[1] == "t,lambda1,delta_grid"


@pytest.mark.parametrize(
    "argv",
    [
        PLAY,
        ["play", "--bob", "random", "--alice", "default", "--rounds", "20", "--seed", "2"],
        ["orbit", "--x", "5/13", "--gamma", "1/3", "--T", "6"],
        ["dimension", "--alpha", "1/4", "--beta", "1/4", "--depth", "3", "--covers", "5"],
        ["reduce", "--basis", "2,1,1,1", "--translation", "1/3,1/5"],
    ],
)
def test_reruns_are_byte_identical(tmp_path, argv):
    assert run(argv, tmp_path / "a") == 0
    assert run(argv, tmp_path / "b") == 0
    assert files(tmp_path / "a") == files(tmp_path / "b")


def test_default_output_dir(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(["reduce", "--x", "1/3"]) == 0
    (d,) = os.listdir(tmp_path / "runs")
    assert d.startswith("reduce-") and len(d) == len("reduce-") + 12
