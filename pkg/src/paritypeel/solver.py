"""The peeling solver built on the dominion attractor.

Each round takes the highest live priority ``d_hat`` (owned by player P by
parity) and the highest priority ``d_bar`` of the opponent's parity. The
opponent's dominion attractor ``A(G, d_bar)`` is removed first and the round
restarts if it was non-empty; otherwise ``A(G, d_hat)`` is credited to P.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from paritypeel.dominion import DominionTrace, compute_dominion_attractor, format_trace
from paritypeel.errors import NoProgress
from paritypeel.game import EVEN, ODD, GameView, Owner, ParityGame, WinnerPartition, remove_self_loops
from paritypeel.pgformat import serialize_pgsolver


@dataclass
class SolveStats:
    outer_iterations: int = 0
    dominion_attractor_calls: int = 0
    inner_iterations_total: int = 0
    max_inner_iterations: int = 0
    attractor_calls: int = 0
    removed_per_iteration: list = field(default_factory=list)

    def lines(self) -> list:
        return [
            f"outer_iterations: {self.outer_iterations}",
            f"dominion_attractor_calls: {self.dominion_attractor_calls}",
            f"inner_iterations_total: {self.inner_iterations_total}",
            f"max_inner_iterations: {self.max_inner_iterations}",
            f"attractor_calls: {self.attractor_calls}",
        ]


@dataclass
class FalsifiedClaim:
    """A claim about the dominion attractor contradicted on a concrete game.

    ``game`` is the canonical text of the solver's input; ``command`` is
    filled in once the game has been written to disk.
    """

    claim: str
    game: str
    explanation: str
    command: Optional[str] = None


@dataclass
class Removal:
    """One dominion-attractor call made by the solver, in residual ids."""

    round: int
    view: GameView
    trace: DominionTrace
    credited: Owner
    origin: list


@dataclass
class SolveResult:
    partition: WinnerPartition
    stats: SolveStats
    falsified: list = field(default_factory=list)
    removals: list = field(default_factory=list)

    def __iter__(self):
        return iter((self.partition, self.stats, self.falsified))

    def trace_text(self) -> str:
        return "\n".join(
            format_trace(r.trace, i, r.origin) for i, r in enumerate(self.removals)
        ) + ("\n" if self.removals else "")


def solve(game: ParityGame, check_claims: bool = False, keep_removals: Optional[bool] = None) -> SolveResult:
    """Solve ``game``; vertex sets in the result use the ids of ``game``.

    With ``check_claims`` every non-empty removed set is checked to be a
    dominion of the credited player (closed plus won in the subgame, decided by
    Zielonka); failures are collected as ``FalsifiedClaim`` records. Raises
    :class:`NoProgress` if a round removes nothing.
    """
    if keep_removals is None:
        keep_removals = check_claims
    pre = remove_self_loops(game)
    won = {EVEN: set(pre.partial.even), ODD: set(pre.partial.odd)}
    stats = SolveStats()
    result = SolveResult(WinnerPartition(), stats)
    if pre.residual is None:
        result.partition = WinnerPartition(won[EVEN], won[ODD])
        return result

    origin = pre.origin
    view = GameView.full(pre.residual)
    n = view.size

    def run(d, credited):
        trace = compute_dominion_attractor(view, d, check_loops=False)
        stats.dominion_attractor_calls += 1
        stats.inner_iterations_total += len(trace.iterations)
        stats.max_inner_iterations = max(stats.max_inner_iterations, len(trace.iterations))
        stats.attractor_calls += trace.attractor_calls
        if keep_removals:
            result.removals.append(Removal(stats.outer_iterations, view, trace, credited, origin))
        if trace.result:
            stats.removed_per_iteration.append((d, credited, len(trace.result)))
            won[credited].update(origin[v] for v in trace.result)
            if check_claims:
                _check_dominion(view, credited, trace, game, result.falsified, stats.outer_iterations)
        return trace.result

    while view.size:
        stats.outer_iterations += 1
        assert stats.outer_iterations <= n + 1, "outer loop exceeded n + 1 rounds"
        d_hat = view.max_priority()
        player = Owner.of_parity(d_hat)
        opp = player.opponent
        d_bar = view.max_priority_of(opp)
        if d_bar is not None:
            removed = run(d_bar, opp)
            if removed:
                view = view.restrict(removed)
                continue
        removed = run(d_hat, player)
        if not removed:
            residual, _ = view.to_game()
            raise NoProgress(
                serialize_pgsolver(residual),
                [origin[v] for v in sorted(view.vertices())],
                WinnerPartition(won[EVEN], won[ODD]),
                result.trace_text(),
            )
        view = view.restrict(removed)

    result.partition = WinnerPartition(won[EVEN], won[ODD])
    return result


def _check_dominion(view, credited, trace, game, sink, round_no):
    from paritypeel.oracles import is_dominion

    if is_dominion(view, credited, trace.result):
        return
    sink.append(
        FalsifiedClaim(
            claim="NotADominion",
            game=serialize_pgsolver(game),
            explanation=(
                f"round {round_no}: A(G,{trace.d}) removed {len(trace.result)} vertices "
                f"that are not a dominion for {credited} in the residual game"
            ),
        )
    )
