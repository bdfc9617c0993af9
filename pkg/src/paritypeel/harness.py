"""Differential testing of the peeling solver against the reference solvers.

Four claims are checked per game:

``PartitionMismatch``
    the solver's winner sets differ from the oracle's;
``NotADominion``
    a set removed by the solver is not a dominion of the credited player in
    the residual game it was taken from;
``MissedMinimalDominion``
    some inclusion-minimal dominion of a player is not contained in the
    dominion attractor at that player's highest priority;
``NoProgress``
    a solver round removed nothing from a non-empty game.
"""

from __future__ import annotations

import json
import os
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

from paritypeel.dominion import compute_dominion_attractor
from paritypeel.errors import NoProgress, NotReproducing
from paritypeel.game import EVEN, ODD, GameView, ParityGame, WinnerPartition, build_game, remove_self_loops
from paritypeel.generators import GenConfig, SplitMix64, derive_seed, family_game, random_game
from paritypeel.oracles import (
    BRUTE_FORCE_LIMIT,
    brute_force_solve,
    enumerate_minimal_dominions,
    strategy_space,
    zielonka_solve,
)
from paritypeel.pgformat import parse_pgsolver, serialize_pgsolver
from paritypeel.solver import solve

CLAIMS = ("PartitionMismatch", "NotADominion", "MissedMinimalDominion", "NoProgress")
BRUTE_MAX_N = 8
ENUMERATION_MAX_N = 8


def _ids(s) -> str:
    return ",".join(map(str, sorted(s)))


def oracle_partition(game: ParityGame, oracle: str = "auto", limit: int = BRUTE_FORCE_LIMIT):
    """Return ``(partition, name)``; ``auto`` uses brute force for small games."""
    if oracle == "auto":
        small = game.n <= BRUTE_MAX_N and strategy_space(game) <= limit
        oracle = "brute" if small else "zielonka"
    if oracle == "brute":
        return brute_force_solve(game, limit), "brute"
    return zielonka_solve(game)[0], "zielonka"


def missed_minimal_dominions(game: ParityGame, limit: int = ENUMERATION_MAX_N) -> list:
    """Minimal dominions not covered by the dominion attractor of their player.

    Runs on the self-loop-free residual of ``game``; returns a list of
    ``(player, dominion, attractor)`` in ids of ``game``. Games whose residual
    exceeds ``limit`` vertices are skipped (empty list).
    """
    pre = remove_self_loops(game)
    if pre.residual is None or pre.residual.n > limit:
        return []
    view = GameView.full(pre.residual)
    origin = pre.origin
    missed = []
    for player in (EVEN, ODD):
        top = view.max_priority_of(player)
        if top is None:
            continue
        region = compute_dominion_attractor(view, top).result
        for dom in enumerate_minimal_dominions(view, player, limit):
            if not dom <= region:
                missed.append((player, {origin[v] for v in dom}, {origin[v] for v in region}))
    return missed


@dataclass
class GameCheck:
    verdict: str
    claims: list
    partition: Optional[WinnerPartition]
    oracle_partition: WinnerPartition
    oracle: str
    details: list = field(default_factory=list)

    @property
    def disagreeing(self) -> frozenset:
        if self.partition is None:
            return frozenset()
        return self.partition.disagreement(self.oracle_partition)


def check_game(game: ParityGame, oracle: str = "auto", solver: Optional[Callable] = None,
               enumeration_limit: int = ENUMERATION_MAX_N) -> GameCheck:
    """Run the solver with every claim check and compare with an oracle.

    ``solver`` replaces the peeling solver by any ``game -> partition``
    callable; only the partition comparison applies to it.
    """
    expected, oracle_name = oracle_partition(game, oracle)
    claims, details = [], []
    partition = None
    if solver is not None:
        partition = solver(game)
    else:
        try:
            result = solve(game, check_claims=True)
            partition = result.partition
            for f in result.falsified:
                if f.claim not in claims:
                    claims.append(f.claim)
                details.append(f"{f.claim}: {f.explanation}")
        except NoProgress as exc:
            claims.append("NoProgress")
            details.append(f"NoProgress: residual of {len(exc.origin)} vertices {_ids(exc.origin)}")
        for player, dom, region in missed_minimal_dominions(game, enumeration_limit):
            if "MissedMinimalDominion" not in claims:
                claims.append("MissedMinimalDominion")
            details.append(
                f"MissedMinimalDominion: {player} dominion {_ids(dom)} not inside attractor {_ids(region) or '-'}"
            )
    if partition is not None and partition != expected:
        claims.insert(0, "PartitionMismatch")
        details.insert(0, f"PartitionMismatch: disagree on {_ids(partition.disagreement(expected))}")
    if "NoProgress" in claims:
        verdict = "NOPROGRESS"
    elif claims:
        verdict = "MISMATCH"
    else:
        verdict = "MATCH"
    return GameCheck(verdict, claims, partition, expected, oracle_name, details)


def reproduces(game: ParityGame, claim: str, oracle: str = "auto", solver: Optional[Callable] = None) -> bool:
    """Whether ``claim`` is still contradicted on ``game``."""
    if claim == "PartitionMismatch":
        if solver is not None:
            partition = solver(game)
        else:
            try:
                partition = solve(game).partition
            except NoProgress:
                return False
        return partition != oracle_partition(game, oracle)[0]
    if claim == "NotADominion":
        try:
            return bool(solve(game, check_claims=True).falsified)
        except NoProgress:
            return False
    if claim == "MissedMinimalDominion":
        return bool(missed_minimal_dominions(game))
    if claim == "NoProgress":
        try:
            solve(game)
        except NoProgress:
            return True
        return False
    raise ValueError(f"unknown claim {claim!r}")


# -- minimization -----------------------------------------------------------


def _rebuild(game: ParityGame, keep, succ):
    """Induced game on ``keep`` with successor lists ``succ``, cascading away
    vertices that lose every successor. Returns None when nothing is left."""
    keep = set(keep)
    while True:
        dead = {v for v in keep if not any(w in keep for w in succ[v])}
        if not dead:
            break
        keep -= dead
    if not keep:
        return None
    order = sorted(keep)
    index = {v: i for i, v in enumerate(order)}
    rows = [
        (game.priority[v], game.owner[v], [index[w] for w in succ[v] if w in keep], game.name(v))
        for v in order
    ]
    return build_game(rows)


def minimize_game(game: ParityGame, predicate: Callable[[ParityGame], bool]) -> ParityGame:
    """Greedy delta debugging down to a 1-minimal game.

    Moves are vertex deletion (with cascade) and deletion of a single edge
    whose source keeps another successor; a move is kept iff ``predicate``
    still holds.
    """
    if not predicate(game):
        raise NotReproducing("predicate does not hold on the input game")
    changed = True
    while changed:
        changed = False
        v = 0
        while v < game.n:
            succ = [list(s) for s in game.successors]
            cand = _rebuild(game, set(range(game.n)) - {v}, succ)
            if cand is not None and predicate(cand):
                game, changed = cand, True
            else:
                v += 1
        u = 0
        while u < game.n:
            shrunk = False
            if len(game.successors[u]) > 1:
                for w in game.successors[u]:
                    succ = [list(s) for s in game.successors]
                    succ[u].remove(w)
                    cand = _rebuild(game, range(game.n), succ)
                    if predicate(cand):
                        game, changed, shrunk = cand, True, True
                        break
            if not shrunk:
                u += 1
    return game


# -- witnesses --------------------------------------------------------------


@dataclass
class DiffWitness:
    game: str
    claim: str
    partition_new: Optional[WinnerPartition]
    partition_oracle: WinnerPartition
    disagreeing: frozenset
    provenance: str
    oracle: str = "auto"
    minimized: bool = False
    details: list = field(default_factory=list)

    @classmethod
    def from_check(cls, game: ParityGame, claim: str, check: GameCheck, provenance: str) -> "DiffWitness":
        return cls(
            game=serialize_pgsolver(game),
            claim=claim,
            partition_new=check.partition,
            partition_oracle=check.oracle_partition,
            disagreeing=check.disagreeing,
            provenance=provenance,
            oracle=check.oracle,
            details=[d for d in check.details if d.startswith(claim)],
        )

    def parsed(self) -> ParityGame:
        return parse_pgsolver(self.game)

    def command(self, path: str) -> str:
        oracle = self.oracle if self.oracle in ("brute", "zielonka") else "zielonka"
        return f"paritypeel solve {path} --oracle {oracle} --check-claims"

    def report(self, path: str = "<game>") -> str:
        def part(p):
            if p is None:
                return "none"
            return f"even={_ids(p.even) or '-'} odd={_ids(p.odd) or '-'}"

        lines = [
            f"claim: {self.claim}",
            f"provenance: {self.provenance}",
            f"minimized: {str(self.minimized).lower()}",
            f"oracle: {self.oracle}",
            f"partition_new: {part(self.partition_new)}",
            f"partition_oracle: {part(self.partition_oracle)}",
            f"disagreeing: {_ids(self.disagreeing) or '-'}",
            f"reproduce: {self.command(path)}",
        ]
        lines += [f"detail: {d}" for d in self.details]
        return "\n".join(lines) + "\n"

    def write(self, out_dir: str, stem: str) -> str:
        folder = os.path.join(out_dir, self.claim)
        os.makedirs(folder, exist_ok=True)
        path = os.path.join(folder, f"{stem}.gm")
        with open(path, "w") as fh:
            fh.write(self.game)
        with open(os.path.join(folder, f"{stem}.report"), "w") as fh:
            fh.write(self.report(path))
        return path


def minimize_witness(w: DiffWitness, solver: Optional[Callable] = None) -> DiffWitness:
    game = w.parsed()
    oracle = w.oracle if w.oracle in ("brute", "zielonka") else "auto"

    def predicate(g):
        return reproduces(g, w.claim, "auto" if oracle == "brute" else oracle, solver)

    if not predicate(game):
        raise NotReproducing(f"{w.claim} does not reproduce on the witness game")
    small = minimize_game(game, predicate)
    if small.structurally_equal(game):
        return w
    check = check_game(small, "auto" if oracle == "brute" else oracle, solver)
    out = DiffWitness.from_check(small, w.claim, check, w.provenance)
    out.minimized = True
    return out


# -- difftest ---------------------------------------------------------------


@dataclass
class DiffConfig:
    seed: int = 1
    count: int = 100
    n_range: tuple = (4, 8)
    deg_range: tuple = (1, 3)
    max_priority: int = 6
    self_loops: bool = False
    minimize: bool = False
    oracle: str = "auto"


def corpus_config(cfg: DiffConfig, index: int) -> GenConfig:
    """Generator config of the ``index``-th game; ``n`` and the generator seed
    are drawn from the game seed, out-degrees are clipped to what ``n`` allows."""
    game_seed = derive_seed(cfg.seed, index)
    rng = SplitMix64(game_seed)
    n = rng.between(*cfg.n_range)
    room = n if cfg.self_loops else n - 1
    hi = min(cfg.deg_range[1], room)
    lo = min(cfg.deg_range[0], hi)
    return GenConfig(n, (lo, hi), cfg.max_priority, rng.next(), cfg.self_loops)


@dataclass
class GameOutcome:
    index: int
    seed: int
    config: GenConfig
    n: int
    m: int
    verdict: str
    claims: list
    witnesses: list


def _run_one(job) -> GameOutcome:
    cfg, index = job
    game_seed = derive_seed(cfg.seed, index)
    gen = corpus_config(cfg, index)
    game = random_game(gen)
    check = check_game(game, cfg.oracle)
    witnesses = []
    provenance = (
        f"seed={game_seed} n={gen.n} deg={gen.out_degree[0]}:{gen.out_degree[1]} "
        f"max_priority={gen.max_priority} gen_seed={gen.seed} self_loops={int(gen.allow_self_loops)}"
    )
    for claim in check.claims:
        w = DiffWitness.from_check(game, claim, check, provenance)
        if cfg.minimize:
            w = minimize_witness(w)
        witnesses.append(w)
    return GameOutcome(index, game_seed, gen, game.n, game.m, check.verdict, list(check.claims), witnesses)


@dataclass
class DiffSummary:
    total: int = 0
    match: int = 0
    mismatch: int = 0
    noprogress: int = 0
    claims: dict = field(default_factory=lambda: {c: 0 for c in CLAIMS})
    outcomes: list = field(default_factory=list)

    def line(self) -> str:
        return f"total={self.total} match={self.match} mismatch={self.mismatch} noprogress={self.noprogress}"

    def claims_line(self) -> str:
        return "claims: " + " ".join(f"{c}={self.claims[c]}" for c in CLAIMS)

    @property
    def exit_code(self) -> int:
        return 0 if self.match == self.total else 4

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "match": self.match,
            "mismatch": self.mismatch,
            "noprogress": self.noprogress,
            "claims": self.claims,
            "games": [
                {"seed": o.seed, "n": o.n, "m": o.m, "verdict": o.verdict, "claims": o.claims}
                for o in self.outcomes
            ],
        }


def difftest(cfg: DiffConfig, out: Optional[str] = None, workers: int = 1) -> DiffSummary:
    """Check ``cfg.count`` seeded random games; results are merged in seed order
    so reports do not depend on ``workers``."""
    jobs = [(cfg, i) for i in range(cfg.count)]
    if workers > 1 and cfg.count > 1:
        with ProcessPoolExecutor(workers) as pool:
            outcomes = list(pool.map(_run_one, jobs, chunksize=max(1, cfg.count // (workers * 8))))
    else:
        outcomes = [_run_one(j) for j in jobs]

    summary = DiffSummary(outcomes=outcomes)
    for o in outcomes:
        summary.total += 1
        if o.verdict == "MATCH":
            summary.match += 1
        elif o.verdict == "NOPROGRESS":
            summary.noprogress += 1
        else:
            summary.mismatch += 1
        for c in o.claims:
            summary.claims[c] += 1

    if out is not None:
        os.makedirs(out, exist_ok=True)
        with open(os.path.join(out, "manifest.txt"), "a") as fh:
            for o in outcomes:
                fh.write(f"{o.seed} {o.config.digest()} {o.n} {o.m} {o.verdict}\n")
                for w in o.witnesses:
                    w.write(out, str(o.seed))
        with open(os.path.join(out, "summary.json"), "w") as fh:
            json.dump(summary.to_json(), fh, indent=1, sort_keys=True)
            fh.write("\n")
    return summary


# -- benchmarking -----------------------------------------------------------


@dataclass
class BenchRow:
    n: int
    m: int
    seconds_min: float
    seconds_median: float
    outer_iterations: int
    attractor_calls: int
    status: str

    @property
    def ratio(self) -> float:
        return self.attractor_calls / (self.n * self.n)


def bench(sizes, repeat: int = 1, family: Optional[str] = None, out_degree=(1, 4),
          max_priority: int = 8, seed: int = 1) -> list:
    rows = []
    for size in sizes:
        if family is not None:
            game = family_game(family, size)
        else:
            game = random_game(GenConfig(size, out_degree, max_priority, derive_seed(seed, size)))
        times, stats, status = [], None, "ok"
        for _ in range(repeat):
            start = time.perf_counter()
            try:
                stats = solve(game).stats
            except NoProgress:
                status = "noprogress"
            times.append(time.perf_counter() - start)
        rows.append(BenchRow(
            game.n, game.m, min(times), statistics.median(times),
            stats.outer_iterations if stats else 0,
            stats.attractor_calls if stats else 0,
            status,
        ))
    return rows


def format_bench(rows) -> str:
    head = f"{'n':>6} {'m':>7} {'t_min':>9} {'t_med':>9} {'outer':>6} {'attr':>8} {'attr/n^2':>9} status"
    lines = [head]
    for r in rows:
        lines.append(
            f"{r.n:>6} {r.m:>7} {r.seconds_min:>9.4f} {r.seconds_median:>9.4f} "
            f"{r.outer_iterations:>6} {r.attractor_calls:>8} {r.ratio:>9.4f} {r.status}"
        )
    return "\n".join(lines)
