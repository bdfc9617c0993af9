import json

import pytest

from paritypeel.cli import main
from paritypeel.errors import NotReproducing
from paritypeel.game import WinnerPartition
from paritypeel.generators import family_game
from paritypeel.harness import (
    DiffConfig,
    DiffWitness,
    bench,
    check_game,
    difftest,
    format_bench,
    minimize_game,
    minimize_witness,
    reproduces,
)
from paritypeel.oracles import zielonka_solve
from paritypeel.pgformat import parse_pgsolver

from tests.conftest import COUNTEREXAMPLE_TEXT, NOPROGRESS_TEXT


def flip_high(threshold):
    """A deliberately broken solver: correct except for priorities >= threshold."""

    def solver(game):
        p = zielonka_solve(game)[0]
        bad = {v for v in range(game.n) if game.priority[v] >= threshold}
        return WinnerPartition((p.even - bad) | (p.odd & bad), (p.odd - bad) | (p.even & bad))

    return solver


def test_check_counterexample():
    g = parse_pgsolver(COUNTEREXAMPLE_TEXT)
    check = check_game(g)
    assert check.verdict == "MISMATCH"
    assert check.claims[:2] == ["PartitionMismatch", "NotADominion"]
    assert check.disagreeing == {0, 1, 2, 3}
    assert check.oracle == "brute"


def test_check_no_progress():
    check = check_game(parse_pgsolver(NOPROGRESS_TEXT))
    assert check.verdict == "NOPROGRESS"
    assert "NoProgress" in check.claims and check.partition is None


def test_check_match(g4):
    check = check_game(g4)
    assert check.verdict == "MATCH" and check.claims == []


def test_minimizer_shrinks_synthetic_fault():
    g = family_game("chain_of_cycles", 5)
    solver = flip_high(8)
    small = minimize_game(g, lambda h: reproduces(h, "PartitionMismatch", solver=solver))
    assert small.n <= 2
    assert reproduces(small, "PartitionMismatch", solver=solver)

    w = DiffWitness.from_check(g, "PartitionMismatch", check_game(g, solver=solver), "chain_of_cycles(5)")
    m = minimize_witness(w, solver=solver)
    assert m.minimized and m.parsed().n <= 2
    assert m.disagreeing


def test_minimized_witness_reproduces_and_is_fixpoint():
    g = parse_pgsolver(COUNTEREXAMPLE_TEXT)
    w = DiffWitness.from_check(g, "NotADominion", check_game(g), "fixture")
    m = minimize_witness(w)
    small = m.parsed()
    assert small.n <= g.n
    assert reproduces(small, "NotADominion")
    assert minimize_witness(m) is m


def test_stale_witness_rejected(g4):
    w = DiffWitness.from_check(g4, "PartitionMismatch", check_game(g4), "fixture")
    with pytest.raises(NotReproducing):
        minimize_witness(w)


def test_witness_files_self_reproduce(tmp_path, capsys):
    g = parse_pgsolver(COUNTEREXAMPLE_TEXT)
    check = check_game(g)
    for claim in check.claims:
        w = DiffWitness.from_check(g, claim, check, "fixture")
        path = w.write(str(tmp_path), "42")
        report = (tmp_path / claim / "42.report").read_text()
        assert f"claim: {claim}" in report
        assert f"reproduce: paritypeel solve {path} --oracle brute --check-claims" in report
        assert main(["solve", path, "--oracle", "brute", "--check-claims"]) == 4
    capsys.readouterr()


def test_difftest_deterministic(tmp_path):
    cfg = DiffConfig(seed=1, count=100, n_range=(4, 8), minimize=True)
    a = difftest(cfg, out=str(tmp_path / "a"))
    b = difftest(cfg, out=str(tmp_path / "b"), workers=2)
    assert a.line() == b.line() and a.claims_line() == b.claims_line()
    for name in ("summary.json", "manifest.txt"):
        assert (tmp_path / "a" / name).read_text() == (tmp_path / "b" / name).read_text()
    assert a.total == 100 == a.match + a.mismatch + a.noprogress
    manifest = (tmp_path / "a" / "manifest.txt").read_text().splitlines()
    assert len(manifest) == 100
    seed, digest, n, m, verdict = manifest[0].split()
    assert len(digest) == 12 and 4 <= int(n) <= 8 and verdict in ("MATCH", "MISMATCH", "NOPROGRESS")
    data = json.loads((tmp_path / "a" / "summary.json").read_text())
    assert data["total"] == 100


def test_difftest_witnesses_on_disk(tmp_path):
    out = tmp_path / "w"
    summary = difftest(DiffConfig(seed=1, count=300, n_range=(2, 8), minimize=True), out=str(out))
    assert summary.mismatch > 0
    written = [p for p in out.rglob("*.gm")]
    assert written
    for path in written[:5]:
        claim = path.parent.name
        assert reproduces(parse_pgsolver(path.read_text()), claim)
        assert (path.with_suffix(".report")).exists()


def test_difftest_empty():
    summary = difftest(DiffConfig(count=0))
    assert summary.line() == "total=0 match=0 mismatch=0 noprogress=0"
    assert summary.exit_code == 0


def test_bench_rows():
    rows = bench([10, 20], repeat=3, family="chain_of_cycles")
    assert [r.outer_iterations for r in rows] == [10, 20]
    assert all(r.seconds_min <= r.seconds_median for r in rows)
    table = format_bench(rows)
    assert table.splitlines()[0].split()[:2] == ["n", "m"]
    assert len(table.splitlines()) == 3


def test_bench_random_scaling():
    rows = bench([100, 200, 400], out_degree=(1, 4), max_priority=8)
    calls = [r.attractor_calls for r in rows if r.status == "ok"]
    assert calls == sorted(calls)
    assert all(r.ratio < 1.0 for r in rows)
