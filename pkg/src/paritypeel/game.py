"""Parity game data model, subgame views and self-loop preprocessing.

Winning convention throughout the package is min-parity: a play is won by
Even iff the lowest priority seen infinitely often is even.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from paritypeel.errors import BadId, DeadEnd, DeadEndCreated, EmptyGame


class Owner(enum.IntEnum):
    EVEN = 0
    ODD = 1

    @property
    def opponent(self) -> "Owner":
        return Owner(1 - self)

    @classmethod
    def of_parity(cls, priority: int) -> "Owner":
        return cls(priority & 1)

    def __str__(self):
        return self.name.lower()


EVEN = Owner.EVEN
ODD = Owner.ODD


@dataclass(frozen=True, eq=False)
class ParityGame:
    """Immutable game graph with dense ids ``0..n-1``.

    Build instances with :func:`build_game`; the constructor does no checking.
    ``external_ids`` records the ids a parsed file used, if they were not dense.
    """

    priority: tuple
    owner: tuple
    successors: tuple
    predecessors: tuple
    names: tuple = ()
    external_ids: Optional[tuple] = None

    @property
    def n(self) -> int:
        return len(self.priority)

    @property
    def m(self) -> int:
        return sum(len(s) for s in self.successors)

    def edges(self):
        for u, succ in enumerate(self.successors):
            for v in succ:
                yield u, v

    def self_loops(self) -> list:
        return [v for v, succ in enumerate(self.successors) if v in succ]

    def name(self, v: int) -> Optional[str]:
        return self.names[v] if self.names else None

    def external_id(self, v: int) -> int:
        return self.external_ids[v] if self.external_ids else v

    def structurally_equal(self, other: "ParityGame") -> bool:
        return (
            self.priority == other.priority
            and tuple(map(int, self.owner)) == tuple(map(int, other.owner))
            and tuple(tuple(sorted(s)) for s in self.successors)
            == tuple(tuple(sorted(s)) for s in other.successors)
        )

    def __repr__(self):
        return f"ParityGame(n={self.n}, m={self.m})"


def build_game(rows: Sequence) -> ParityGame:
    """Assemble a validated game from ``(priority, owner, successors[, name])`` rows.

    Duplicate successors are dropped (first occurrence wins), self-loops are kept.
    """
    if not rows:
        raise EmptyGame()
    n = len(rows)
    priority, owner, successors, names = [], [], [], []
    predecessors = [[] for _ in range(n)]
    any_name = False
    for v, row in enumerate(rows):
        prio, own, succ = row[0], row[1], row[2]
        name = row[3] if len(row) > 3 else None
        if int(prio) < 0:
            raise ValueError(f"vertex {v} has negative priority {prio}")
        deduped = list(dict.fromkeys(int(w) for w in succ))
        if not deduped:
            raise DeadEnd(v)
        for w in deduped:
            if not 0 <= w < n:
                raise BadId(v, w)
            predecessors[w].append(v)
        priority.append(int(prio))
        owner.append(Owner(int(own)))
        successors.append(tuple(deduped))
        names.append(name)
        any_name = any_name or name is not None
    return ParityGame(
        priority=tuple(priority),
        owner=tuple(owner),
        successors=tuple(successors),
        predecessors=tuple(tuple(p) for p in predecessors),
        names=tuple(names) if any_name else (),
    )


def induced_game(game: ParityGame, keep: Iterable[int]) -> tuple:
    """Return ``(subgame, origin)`` for the subgame induced by ``keep``.

    ``origin[i]`` is the id in ``game`` of vertex ``i`` of the subgame. The
    caller guarantees that every kept vertex retains a successor.
    """
    origin = sorted(keep)
    index = {v: i for i, v in enumerate(origin)}
    rows = []
    for v in origin:
        succ = [index[w] for w in game.successors[v] if w in index]
        rows.append((game.priority[v], game.owner[v], succ, game.name(v)))
    return build_game(rows), origin


class GameView:
    """A live-vertex mask over a :class:`ParityGame`.

    Views are treated as immutable; :meth:`restrict` returns a new view.
    ``out_degree[v]`` counts successors of ``v`` inside the live set.
    """

    __slots__ = ("game", "live", "out_degree", "size", "_prio_count", "_vertices")

    def __init__(self, game, live, out_degree, prio_count=None):
        self.game = game
        self.live = live
        self.out_degree = out_degree
        self.size = sum(live)
        if prio_count is None:
            prio_count = Counter(game.priority[v] for v in range(game.n) if live[v])
        self._prio_count = prio_count
        self._vertices = None

    @classmethod
    def full(cls, game: ParityGame) -> "GameView":
        return cls(
            game,
            bytearray(b"\x01") * game.n,
            [len(s) for s in game.successors],
            Counter(game.priority),
        )

    def vertices(self) -> frozenset:
        if self._vertices is None:
            live = self.live
            self._vertices = frozenset(v for v in range(self.game.n) if live[v])
        return self._vertices

    def __contains__(self, v) -> bool:
        return 0 <= v < self.game.n and bool(self.live[v])

    def __len__(self):
        return self.size

    def live_successors(self, v: int) -> list:
        live = self.live
        return [w for w in self.game.successors[v] if live[w]]

    def priorities(self) -> set:
        return {p for p, c in self._prio_count.items() if c}

    def restrict(self, removed: Iterable[int]) -> "GameView":
        """Subgame on ``live \\ removed``; raises DeadEndCreated on a dead end."""
        removed = [v for v in set(removed)]
        if not removed:
            return self
        game = self.game
        live = bytearray(self.live)
        out_degree = list(self.out_degree)
        prio_count = Counter(self._prio_count)
        for v in removed:
            if not live[v]:
                raise ValueError(f"vertex {v} is not live")
            live[v] = 0
            prio_count[game.priority[v]] -= 1
        for v in removed:
            for u in game.predecessors[v]:
                out_degree[u] -= 1
        for v in removed:
            for u in game.predecessors[v]:
                if live[u] and out_degree[u] <= 0:
                    raise DeadEndCreated(u)
        return GameView(game, live, out_degree, prio_count)

    def restrict_to(self, keep: Iterable[int]) -> "GameView":
        keep = set(keep)
        return self.restrict(v for v in self.vertices() if v not in keep)

    def max_priority(self) -> Optional[int]:
        live = [p for p, c in self._prio_count.items() if c]
        return max(live) if live else None

    def max_priority_of(self, player: Owner) -> Optional[int]:
        live = [p for p, c in self._prio_count.items() if c and p % 2 == player]
        return max(live) if live else None

    def min_priority(self) -> Optional[int]:
        live = [p for p, c in self._prio_count.items() if c]
        return min(live) if live else None

    def check_left_total(self):
        for v in self.vertices():
            if self.out_degree[v] < 1:
                raise DeadEndCreated(v)

    def to_game(self) -> tuple:
        """Materialize the view as ``(game, origin)`` with dense ids."""
        return induced_game(self.game, self.vertices())

    def __repr__(self):
        return f"GameView(live={self.size}/{self.game.n})"


def restrict(view: GameView, removed: Iterable[int]) -> GameView:
    return view.restrict(removed)


def max_priority(view: GameView) -> Optional[int]:
    return view.max_priority()


def max_priority_of(view: GameView, player: Owner) -> Optional[int]:
    return view.max_priority_of(player)


@dataclass
class WinnerPartition:
    even: frozenset = frozenset()
    odd: frozenset = frozenset()

    def __post_init__(self):
        self.even = frozenset(self.even)
        self.odd = frozenset(self.odd)

    def __getitem__(self, player: Owner) -> frozenset:
        return self.even if player == EVEN else self.odd

    def winner(self, v: int) -> Optional[Owner]:
        if v in self.even:
            return EVEN
        if v in self.odd:
            return ODD
        return None

    def is_disjoint(self) -> bool:
        return not (self.even & self.odd)

    def covers(self, n: int) -> bool:
        return self.is_disjoint() and (self.even | self.odd) == frozenset(range(n))

    def disagreement(self, other: "WinnerPartition") -> frozenset:
        return (self.even ^ other.even) | (self.odd ^ other.odd)


@dataclass
class Preprocessed:
    """Result of :func:`remove_self_loops`.

    ``residual`` is the self-loop-free remainder (``None`` when everything was
    decided), ``origin`` maps its ids back to the input game and ``partial``
    holds the vertices already decided, in input ids.
    """

    residual: Optional[ParityGame]
    origin: list
    partial: WinnerPartition = field(default_factory=WinnerPartition)


def remove_self_loops(game: ParityGame) -> Preprocessed:
    from paritypeel.attractor import attract

    loops = game.self_loops()
    if not loops:
        return Preprocessed(game, list(range(game.n)))

    view = GameView.full(game)
    won = {EVEN: set(), ODD: set()}
    for v in loops:
        if v not in view:
            continue
        own = game.owner[v]
        if game.priority[v] % 2 == own:
            region = attract(view, own, {v}).set
            won[own] |= region
            view = view.restrict(region)
            continue
        # Looping forever loses for the owner: the loop is never worth taking.
        out_degree = list(view.out_degree)
        out_degree[v] -= 1
        view = GameView(view.game, view.live, out_degree, view._prio_count)
        if out_degree[v] == 0:
            region = attract(view, own.opponent, {v}).set
            won[own.opponent] |= region
            view = view.restrict(region)

    partial = WinnerPartition(won[EVEN], won[ODD])
    if view.size == 0:
        return Preprocessed(None, [], partial)
    origin = sorted(view.vertices())
    index = {u: i for i, u in enumerate(origin)}
    rows = []
    for u in origin:
        succ = [index[w] for w in game.successors[u] if w in index and w != u]
        rows.append((game.priority[u], game.owner[u], succ, game.name(u)))
    return Preprocessed(build_game(rows), origin, partial)
