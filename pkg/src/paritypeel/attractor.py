"""Classic player attractors and trap predicates over a :class:`GameView`."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from paritypeel.errors import TargetNotLive
from paritypeel.game import GameView, Owner


@dataclass(frozen=True)
class AttractorResult:
    """Attractor set with the attracting player's strategy and entry waves.

    ``waves[v]`` is the induction step at which ``v`` joined (0 for targets);
    every strategy edge leads to a vertex of strictly smaller wave.
    """

    set: frozenset
    strategy: dict
    waves: dict


def attract(view: GameView, player: Owner, targets: Iterable[int]) -> AttractorResult:
    """Vertices from which ``player`` can force the token into ``targets``.

    Backward FIFO worklist; opponent vertices join once their live out-degree
    counter drops to zero. Linear in the live part of the game.
    """
    game = view.game
    live = view.live
    owner = game.owner
    preds = game.predecessors
    degree = view.out_degree

    waves = {}
    queue = deque()
    for t in targets:
        if not live[t]:
            raise TargetNotLive(t)
        if t not in waves:
            waves[t] = 0
            queue.append(t)

    strategy = {}
    remaining = {}
    while queue:
        v = queue.popleft()
        wave = waves[v] + 1
        for u in preds[v]:
            if u in waves or not live[u]:
                continue
            if owner[u] == player:
                strategy[u] = v
            else:
                left = remaining.get(u, degree[u]) - 1
                if left:
                    remaining[u] = left
                    continue
            waves[u] = wave
            queue.append(u)
    return AttractorResult(frozenset(waves), strategy, waves)


def is_trap(view: GameView, player: Owner, w: Iterable[int]) -> bool:
    """True iff ``player`` cannot leave ``w`` while the opponent can stay in it."""
    w = w if isinstance(w, (set, frozenset)) else set(w)
    game = view.game
    live = view.live
    for v in w:
        inside = [u for u in game.successors[v] if live[u] and u in w]
        if game.owner[v] == player:
            if len(inside) != view.out_degree[v]:
                return False
        elif not inside:
            return False
    return True


def is_closed(view: GameView, player: Owner, w: Iterable[int]) -> bool:
    """``player`` can keep every play inside ``w``: the set is an opponent trap."""
    return is_trap(view, player.opponent, w)
