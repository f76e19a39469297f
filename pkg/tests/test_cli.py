import json
import subprocess
import sys

import pytest

from ogspi.cli import EXIT_DIFF, EXIT_OK, EXIT_OPEN, EXIT_USAGE, main

OMEGA = r"(\w. w w) (\w. w w)"
M_DIV = rf"(\z. {OMEGA}) (x0 (\y. {OMEGA}))"
LEFT = f"<p1 |-> {M_DIV} ; p2 |-> {OMEGA} | names: x0, p1, p2>"
RIGHT = f"<p1 |-> {OMEGA} ; p2 |-> {M_DIV} | names: x0, p1, p2>"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_traces_as_json(capsys):
    code, out, _ = run(capsys, "traces", "--lts", "aogs", "--depth", "2", "--term", r"\x. x")
    assert code == EXIT_OK
    traces = json.loads(out)
    assert len(traces) == 3 and [] in traces


def test_swap_pair_is_equivalent(capsys):
    code, _, _ = run(capsys, "equiv", "--mode", "trace", "--lts", "cogs", "--depth", "5",
                     "--left", LEFT, "--right", RIGHT)
    assert code == EXIT_OK


def test_check_suite(capsys):
    code, out, _ = run(capsys, "check", "--suite", "beta-v", "--count", "4")
    assert code == EXIT_OK
    assert out.strip().splitlines()[-1].startswith("pass")


def test_distinguished_exit_code(capsys):
    code, out, _ = run(capsys, "equiv", "--mode", "enf", "--depth", "2",
                       "--left", r"\x. x", "--right", rf"\x. {OMEGA}")
    assert code == EXIT_DIFF
    assert "distinguished" in out


def test_inconclusive_exit_code(capsys):
    # both sides diverge but the fuel bound cannot tell
    code, _, _ = run(capsys, "equiv", "--mode", "enf", "--depth", "1", "--fuel", "3",
                     "--left", OMEGA, "--right", rf"(\x. x) ({OMEGA})")
    assert code == EXIT_OPEN


@pytest.mark.parametrize("argv", [
    ["parse", r"\x. ("],
    ["frobnicate"],
    ["check", "--suite", "no-such-suite"],
    ["traces", "--lts", "aogs", "--depth", "-1", "--term", "x0"],
    ["equiv", "--mode", "upto", "--left", "<x1 |-> \\y. y | names: x1>",
     "--right", "<x2 |-> \\y. y | names: x2>"],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == EXIT_USAGE
    assert err


def test_parse_and_step(capsys):
    code, out, _ = run(capsys, "parse", "--kind", "term", r"\x. x")
    assert code == EXIT_OK and out.strip() == "λx0. x0"
    code, out, _ = run(capsys, "step", "--lts", "aogs", "--term", r"\x. x")
    assert code == EXIT_OK and out.startswith("IOQ")


def test_encode(capsys):
    code, out, _ = run(capsys, "encode", "--term", "x0")
    assert code == EXIT_OK
    assert out.strip() == "(p0) p0^(x1).fwd_x<x1,x0>"


def _seed_of(capsys, *argv, pre=()):
    code, out, _ = run(capsys, *pre, "check", "--suite", "beta-v", "--count", "2",
                       "--format", "json", *argv)
    assert code == EXIT_OK
    return json.loads(out)["params"]["seed"]


def test_config_file_and_env(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("OGSPI_SEED", raising=False)
    assert _seed_of(capsys) == 1
    monkeypatch.setenv("OGSPI_SEED", "11")
    assert _seed_of(capsys) == 11
    cfg = tmp_path / "ogspi.conf"
    cfg.write_text("# defaults\nseed = 23\ncount = 2\n")
    assert _seed_of(capsys, pre=("--config-file", str(cfg))) == 23
    # explicit flags win over both
    assert _seed_of(capsys, "--seed", "5", pre=("--config-file", str(cfg))) == 5


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "ogspi.cli", "parse", "--kind", "process",
                        "a^(x).0 | a(y).0"], capture_output=True, text=True)
    assert r.returncode == 0
    assert "|" in r.stdout
