"""Reference solvers used to check the peeling solver.

Two independent exact solvers are provided: Zielonka's recursive algorithm
(adapted to min-parity, so it recurses on the lowest priority) and an
exhaustive enumeration of positional strategy pairs. Neither shares code with
the dominion attractor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from paritypeel.attractor import attract, is_trap
from paritypeel.errors import NotAPartition, TooLarge
from paritypeel.game import EVEN, ODD, GameView, Owner, ParityGame, WinnerPartition
from paritypeel.pgformat import Convention

BRUTE_FORCE_LIMIT = 2**20
ENUMERATION_LIMIT = 12


def _as_view(game: Union[ParityGame, GameView]) -> GameView:
    return game if isinstance(game, GameView) else GameView.full(game)


# -- Zielonka ---------------------------------------------------------------


def _zielonka(view: GameView):
    if view.size == 0:
        return {EVEN: set(), ODD: set()}, {EVEN: {}, ODD: {}}
    p = view.min_priority()
    player = Owner.of_parity(p)
    opp = player.opponent
    prio = view.game.priority
    top = {v for v in view.vertices() if prio[v] == p}
    attr = attract(view, player, top)
    sub_win, sub_strat = _zielonka(view.restrict(attr.set))

    if not sub_win[opp]:
        strat = dict(sub_strat[player])
        strat.update(attr.strategy)
        for v in top:
            if view.game.owner[v] == player:
                strat[v] = view.live_successors(v)[0]
        return {player: set(view.vertices()), opp: set()}, {player: strat, opp: {}}

    lost = attract(view, opp, sub_win[opp])
    rest_win, rest_strat = _zielonka(view.restrict(lost.set))
    opp_strat = dict(rest_strat[opp])
    opp_strat.update(sub_strat[opp])
    opp_strat.update(lost.strategy)
    win = {player: rest_win[player], opp: rest_win[opp] | lost.set}
    return win, {player: rest_strat[player], opp: opp_strat}


def zielonka_solve(view: Union[ParityGame, GameView]):
    """Return ``(partition, strategies)``; strategies maps each player to a dict.

    The strategy of a player is defined on that player's vertices inside its
    own winning region.
    """
    view = _as_view(view)
    win, strat = _zielonka(view)
    partition = WinnerPartition(win[EVEN], win[ODD])
    owner = view.game.owner
    strategies = {
        pl: {v: w for v, w in strat[pl].items() if v in partition[pl] and owner[v] == pl}
        for pl in (EVEN, ODD)
    }
    return partition, strategies


# -- positional brute force -------------------------------------------------


def strategy_space(game: ParityGame) -> int:
    return math.prod(len(s) for s in game.successors)


def _choice_table(game, vertices, count):
    """All positional strategies on ``vertices`` as a ``(count, n)`` successor table."""
    n = game.n
    table = np.tile(np.arange(n, dtype=np.int64), (count, 1))
    idx = np.arange(count, dtype=np.int64)
    stride = 1
    for v in vertices:
        succ = np.asarray(game.successors[v], dtype=np.int64)
        table[:, v] = succ[(idx // stride) % len(succ)]
        stride *= len(succ)
    return table


def brute_force_solve(
    game: ParityGame,
    limit: int = BRUTE_FORCE_LIMIT,
    convention: Convention = Convention.MIN,
) -> WinnerPartition:
    """Exhaustive check of every positional strategy pair.

    ``v`` is won by Even iff some Even strategy makes the lasso from ``v`` end
    in an Even-winning cycle against every Odd strategy. Under the max
    convention the cycle's highest priority decides instead of the lowest.
    """
    estimate = strategy_space(game)
    if estimate > limit:
        raise TooLarge(estimate, limit)
    n = game.n
    prio = np.asarray(game.priority, dtype=np.int64)
    evens = [v for v in range(n) if game.owner[v] == EVEN]
    odds = [v for v in range(n) if game.owner[v] == ODD]
    n_even = math.prod(len(game.successors[v]) for v in evens)
    n_odd = math.prod(len(game.successors[v]) for v in odds)

    odd_table = _choice_table(game, odds, n_odd)
    odd_cols = np.asarray(odds, dtype=np.int64)
    even_cols = np.asarray(evens, dtype=np.int64)
    even_table = _choice_table(game, evens, n_even)
    reduce = np.minimum if convention == Convention.MIN else np.maximum

    chunk = max(1, (1 << 22) // max(1, n_odd * n))
    won = np.zeros(n, dtype=bool)
    for start in range(0, n_even, chunk):
        block = even_table[start : start + chunk]
        rows = block.shape[0]
        # succ[e, o, v]: Even's choices from the block, Odd's from odd_table
        succ = np.empty((rows, n_odd, n), dtype=np.int64)
        succ[:, :, even_cols] = block[:, None, even_cols]
        succ[:, :, odd_cols] = odd_table[None, :, odd_cols]
        flat = succ.reshape(rows * n_odd, n)
        pos = np.broadcast_to(np.arange(n), flat.shape).copy()
        for _ in range(n):
            pos = np.take_along_axis(flat, pos, axis=1)
        best = prio[pos]
        cur = pos
        for _ in range(n - 1):
            cur = np.take_along_axis(flat, cur, axis=1)
            best = reduce(best, prio[cur])
        even_wins = (best % 2 == 0).reshape(rows, n_odd, n).all(axis=1)
        won |= even_wins.any(axis=0)
    even = {v for v in range(n) if won[v]}
    return WinnerPartition(even, set(range(n)) - even)


# -- lassos -----------------------------------------------------------------


@dataclass
class Lasso:
    stem: list
    cycle: list

    def winner(self, priority, convention: Convention = Convention.MIN) -> Owner:
        pick = min if convention == Convention.MIN else max
        return Owner.of_parity(pick(priority[v] for v in self.cycle))


def lasso_from(choice, start: int) -> Lasso:
    """The unique play from ``start`` in the functional graph ``choice``."""
    seen = {}
    path = []
    v = start
    while v not in seen:
        seen[v] = len(path)
        path.append(v)
        v = choice[v]
    return Lasso(path[: seen[v]], path[seen[v] :])


def consistent_lassos(game: ParityGame, strategy: dict, player: Owner, start: int):
    """Yield the lasso from ``start`` for every opponent positional strategy
    (restricted to vertices reachable under ``strategy``)."""
    reach, stack = {start}, [start]
    while stack:
        v = stack.pop()
        nxt = [strategy[v]] if game.owner[v] == player else game.successors[v]
        for w in nxt:
            if w not in reach:
                reach.add(w)
                stack.append(w)
    free = sorted(v for v in reach if game.owner[v] != player)
    for picks in itertools.product(*(game.successors[v] for v in free)):
        choice = dict(strategy)
        choice.update(zip(free, picks))
        yield lasso_from(choice, start)


# -- dominions --------------------------------------------------------------


def is_dominion(view: GameView, player: Owner, region) -> bool:
    """``region`` is closed for ``player`` and entirely won by it in the subgame."""
    region = frozenset(region)
    if not region or not is_trap(view, player.opponent, region):
        return False
    partition, _ = zielonka_solve(view.restrict_to(region))
    return partition[player] == region


def enumerate_minimal_dominions(
    game: Union[ParityGame, GameView], player: Owner, limit: int = ENUMERATION_LIMIT
) -> list:
    """All inclusion-minimal ``player`` dominions, smallest first.

    Candidates are restricted to ``player``'s winning region since every
    dominion lies inside it; subsets are scanned in order of size.
    """
    view = _as_view(game)
    if view.size > limit:
        raise TooLarge(view.size, limit)
    partition, _ = zielonka_solve(view)
    pool = sorted(partition[player])
    found = []
    for size in range(1, len(pool) + 1):
        for combo in itertools.combinations(pool, size):
            cand = frozenset(combo)
            if any(d <= cand for d in found):
                continue
            if is_dominion(view, player, cand):
                found.append(cand)
    for d in found:
        assert not any(e < d for e in found)
    return found


# -- verification -----------------------------------------------------------


@dataclass
class VerificationReport:
    failures: list = field(default_factory=list)
    oracle: Optional[str] = None

    @property
    def ok(self) -> bool:
        return not self.failures

    def __str__(self):
        if self.ok:
            return f"pass (oracle={self.oracle})"
        parts = [f"{name}: {','.join(map(str, sorted(vs)))}" for name, vs in self.failures]
        return "fail; " + "; ".join(parts)


def reference_partition(game: ParityGame, limit: int = BRUTE_FORCE_LIMIT, prefer: str = "auto"):
    """Solve with brute force when it fits ``limit`` (or is requested), else Zielonka."""
    if prefer == "brute" or (prefer == "auto" and strategy_space(game) <= limit):
        return brute_force_solve(game, limit), "brute"
    return zielonka_solve(game)[0], "zielonka"


def verify_partition(
    game: ParityGame, p: WinnerPartition, limit: int = BRUTE_FORCE_LIMIT
) -> VerificationReport:
    if not p.covers(game.n):
        raise NotAPartition("winner sets overlap or do not cover the game")
    view = GameView.full(game)
    report = VerificationReport()
    for player, region in ((EVEN, p.even), (ODD, p.odd)):
        # player's region must be a trap for the opponent
        bad = {v for v in region if _escapes(view, player.opponent, region, v)}
        if bad:
            report.failures.append((f"{player}-region-not-closed", bad))
    expected, report.oracle = reference_partition(game, limit)
    diff = p.disagreement(expected)
    if diff:
        report.failures.append(("oracle-mismatch", diff))
    return report


def _escapes(view, trapped, region, v) -> bool:
    inside = [w for w in view.live_successors(v) if w in region]
    if view.game.owner[v] == trapped:
        return len(inside) != view.out_degree[v]
    return not inside
