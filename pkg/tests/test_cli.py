import subprocess
import sys

import pytest

from paritypeel.cli import main
from paritypeel.pgformat import parse_pgsolver

from tests.conftest import COUNTEREXAMPLE_TEXT, FIG1_TEXT, NOPROGRESS_TEXT


@pytest.fixture
def gm(tmp_path):
    def write(text, name="game.gm"):
        path = tmp_path / name
        path.write_text(text)
        return str(path)

    return write


def test_solve_fig1(gm, capsys):
    assert main(["solve", gm(FIG1_TEXT)]) == 0
    out = capsys.readouterr().out.splitlines()
    assert out[0] == "even:"
    assert out[1] == "odd: 0,1,2,3"
    assert out[2] == "stats:"


def test_solve_with_oracle(gm, capsys):
    assert main(["solve", gm(FIG1_TEXT), "--oracle", "brute"]) == 0
    assert "oracle brute: MATCH" in capsys.readouterr().out
    assert main(["solve", gm(COUNTEREXAMPLE_TEXT), "--oracle", "zielonka"]) == 4
    assert "oracle zielonka: MISMATCH on 0,1,2,3" in capsys.readouterr().out


def test_solve_garbage(gm, capsys):
    assert main(["solve", gm("0 1 0 1;\n1 x")]) == 2
    err = capsys.readouterr().err
    assert "line 2, column 3" in err


def test_solve_missing_file(tmp_path, capsys):
    assert main(["solve", str(tmp_path / "nope.gm")]) == 2


def test_solve_no_progress(gm, capsys):
    assert main(["solve", gm(NOPROGRESS_TEXT)]) == 3
    out = capsys.readouterr().out
    assert "no progress" in out and "residual: 0,1,2,3,4" in out


def test_solve_check_claims(gm, capsys):
    assert main(["solve", gm(COUNTEREXAMPLE_TEXT), "--check-claims"]) == 4
    assert "claim NotADominion: FALSIFIED" in capsys.readouterr().out


def test_solve_trace_and_dot(gm, tmp_path, capsys):
    g4 = "0 1 0 1,3; 1 2 1 0,2; 2 0 0 3; 3 3 1 2;"
    trace, dot = tmp_path / "t.txt", tmp_path / "g.dot"
    assert main(["solve", gm(g4), "--trace", str(trace), "--dot", str(dot)]) == 0
    assert trace.read_text() == (
        "call 0 d=2 player=even ud=1,2 astar=0\n"
        "  iter 0 u=1,2 a=0,1,2,3 aprime=- removed=-\n"
        "  result 0,1,2,3\n"
    )
    assert dot.read_text().count("lightblue") == 4


def test_sparse_ids_reported_externally(gm, capsys):
    assert main(["solve", gm("10 0 0 20; 20 1 1 10;")]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "even: 10,20"


def test_max_convention(gm, capsys):
    text = "0 2 0 1; 1 1 1 0;"
    main(["solve", gm(text), "--convention", "max"])
    assert capsys.readouterr().out.splitlines()[0] == "even: 0,1"
    main(["solve", gm(text)])
    assert capsys.readouterr().out.splitlines()[1] == "odd: 0,1"


def test_trace_single_priority(gm, capsys):
    assert main(["trace", gm("0 1 0 1,3; 1 2 1 0,2; 2 0 0 3; 3 3 1 2;"), "-d", "3"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "call 0 d=3 player=odd ud=0,3 astar=1"


def test_gen_and_convert(tmp_path, capsys):
    out = tmp_path / "g.gm"
    assert main(["gen", "--n", "6", "--seed", "3", "-o", str(out)]) == 0
    g = parse_pgsolver(out.read_text())
    assert g.n == 6
    conv = tmp_path / "c.gm"
    assert main(["convert", str(out), "--from", "min", "--to", "max", "-o", str(conv)]) == 0
    h = parse_pgsolver(conv.read_text())
    assert all(a % 2 == b % 2 for a, b in zip(g.priority, h.priority))
    assert main(["gen", "--family", "two_cycle", "--size", "1"]) == 0
    assert capsys.readouterr().out == "parity 1;\n0 0 0 1;\n1 1 1 0;\n"


def test_difftest_command(tmp_path, capsys):
    assert main(["difftest", "--count", "0"]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "total=0 match=0 mismatch=0 noprogress=0"
    args = ["difftest", "--seed", "1", "--count", "100", "--n-range", "4:8"]
    first = main(args)
    out1 = capsys.readouterr().out
    assert main(args) == first
    assert capsys.readouterr().out == out1


def test_bench_command(capsys):
    assert main(["bench", "--family", "chain_of_cycles", "--sizes", "10,20", "--repeat", "2"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 3 and "attr/n^2" in lines[0]


def test_module_entry_point(gm):
    proc = subprocess.run(
        [sys.executable, "-m", "paritypeel", "solve", gm(FIG1_TEXT), "--oracle", "brute"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "odd: 0,1,2,3" in proc.stdout
