"""The dominion attractor A(G, d) and its building blocks.

For a priority ``d`` owned (by parity) by player P:

* ``U_d``  - live vertices of P's parity with priority at most ``d``;
* ``A*``   - vertices of the other parity at priority ``k <= d`` that P
  attracts into ``U_{k-1}``;
* ``A'``   - the opponent attractor of the low-priority vertices of an
  attractor ``A`` that are neither in ``A*`` nor in ``U_d``.

Starting from ``U^0 = U_d`` the base set is peeled,
``U^{k+1} = U^k \\ Attr_opp((V \\ A^k) | A'(A^k))`` with ``A^k = Attr_P(U^k)``,
until it stops shrinking; the last ``A^k`` is the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from paritypeel.attractor import attract
from paritypeel.errors import NotAPriorityOfGame, SelfLoopPresent
from paritypeel.game import GameView, Owner


@dataclass
class Iteration:
    u: frozenset
    a: frozenset
    aprime: frozenset
    removed: frozenset


@dataclass
class DominionTrace:
    d: int
    player: Owner
    u_d: frozenset
    astar: frozenset
    iterations: list = field(default_factory=list)
    result: frozenset = frozenset()
    attractor_calls: int = 0


def compute_u_d(view: GameView, d: int) -> frozenset:
    prio = view.game.priority
    parity = d & 1
    return frozenset(
        v for v in view.vertices() if prio[v] <= d and prio[v] & 1 == parity
    )


def _astar(view: GameView, d: int):
    player = Owner.of_parity(d)
    prio = view.game.priority
    present = view.priorities()
    result = set()
    calls = 0
    for k in range(1 - (d & 1), d + 1, 2):
        # U_{-1} is empty, so k = 0 never contributes.
        if k == 0 or k not in present:
            continue
        base = compute_u_d(view, k - 1)
        if not base:
            continue
        calls += 1
        attracted = attract(view, player, base).set
        result.update(v for v in attracted if prio[v] == k)
    return frozenset(result), calls


def compute_astar(view: GameView, d: int) -> frozenset:
    return _astar(view, d)[0]


def _aprime_seed(view, d, a, astar, u_d):
    prio = view.game.priority
    return {v for v in a if prio[v] < d and v not in astar and v not in u_d}


def compute_aprime(view: GameView, d: int, a, astar, u_d=None) -> frozenset:
    if u_d is None:
        u_d = compute_u_d(view, d)
    seed = _aprime_seed(view, d, a, astar, u_d)
    if not seed:
        return frozenset()
    return attract(view, Owner.of_parity(d).opponent, seed).set


def compute_dominion_attractor(view: GameView, d: int, check_loops: bool = True) -> DominionTrace:
    if d not in view.priorities():
        raise NotAPriorityOfGame(d)
    game = view.game
    if check_loops:
        for v in view.vertices():
            if v in game.successors[v]:
                raise SelfLoopPresent(v)

    player = Owner.of_parity(d)
    opponent = player.opponent
    live = view.vertices()
    u_d = compute_u_d(view, d)
    astar, calls = _astar(view, d)
    trace = DominionTrace(d=d, player=player, u_d=u_d, astar=astar)

    u = u_d
    a = attract(view, player, u).set if u else frozenset()
    calls += 1 if u else 0
    while True:
        seed = _aprime_seed(view, d, a, astar, u_d)
        aprime = attract(view, opponent, seed).set if seed else frozenset()
        escape = (live - a) | aprime
        calls += (1 if seed else 0) + (1 if escape else 0)
        lost = attract(view, opponent, escape).set if escape else frozenset()
        removed = u & lost
        trace.iterations.append(Iteration(u, a, aprime, removed))
        if not removed:
            break
        u = u - removed
        a_next = attract(view, player, u).set if u else frozenset()
        calls += 1 if u else 0
        assert a_next <= a, "dominion attractor grew between iterations"
        a = a_next
    trace.result = a
    trace.attractor_calls = calls
    return trace


def format_trace(trace: DominionTrace, index: int = 0, origin=None) -> str:
    """Line-oriented dump; ids are listed ascending and comma separated.

    ``origin`` optionally maps view ids to the ids that should be printed.
    """

    def ids(s):
        if origin is not None:
            s = (origin[v] for v in s)
        return ",".join(map(str, sorted(s))) or "-"

    lines = [
        f"call {index} d={trace.d} player={trace.player} "
        f"ud={ids(trace.u_d)} astar={ids(trace.astar)}"
    ]
    for k, it in enumerate(trace.iterations):
        lines.append(
            f"  iter {k} u={ids(it.u)} a={ids(it.a)} "
            f"aprime={ids(it.aprime)} removed={ids(it.removed)}"
        )
    lines.append(f"  result {ids(trace.result)}")
    return "\n".join(lines)
