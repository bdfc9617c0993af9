"""Seeded random games and deterministic game families.

Randomness comes from SplitMix64 so corpora can be regenerated bit-exactly
by any implementation::

    state = (state + 0x9E3779B97F4A7C15) mod 2**64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) mod 2**64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) mod 2**64
    return z ^ (z >> 31)

``below(k)`` is ``next() % k``. Per vertex, in id order, ``random_game``
draws: priority ``below(maxPriority + 1)``, owner ``below(2)``, out-degree
``lo + below(hi - lo + 1)``, then that many successors by a partial
Fisher-Yates shuffle of the candidate list ``[0..n-1]`` (minus the vertex
itself unless self-loops are allowed): for ``i`` in ``0..k-1`` swap
``cand[i]`` with ``cand[i + below(len(cand) - i)]``.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from paritypeel.errors import Unsatisfiable, UnknownFamily
from paritypeel.game import EVEN, ODD, ParityGame, build_game

MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK
        return z ^ (z >> 31)

    def below(self, k: int) -> int:
        return self.next() % k

    def between(self, lo: int, hi: int) -> int:
        return lo + self.below(hi - lo + 1)

    def split(self) -> "SplitMix64":
        return SplitMix64(self.next())


def derive_seed(base: int, index: int) -> int:
    """Seed of the ``index``-th game of a corpus started from ``base``."""
    rng = SplitMix64(base ^ ((index * 0xD1B54A32D192ED03) & MASK))
    return rng.next()


@dataclass(frozen=True)
class GenConfig:
    n: int
    out_degree: tuple = (1, 3)
    max_priority: int = 5
    seed: int = 0
    allow_self_loops: bool = False

    def validate(self):
        lo, hi = self.out_degree
        if self.n < 1:
            raise Unsatisfiable("n must be at least 1")
        if lo < 1 or hi < lo:
            raise Unsatisfiable(f"bad out-degree range {self.out_degree}")
        if self.max_priority < 0:
            raise Unsatisfiable("max priority must be non-negative")
        room = self.n if self.allow_self_loops else self.n - 1
        if room < 1:
            raise Unsatisfiable("a single vertex needs a self-loop")
        if hi > room:
            raise Unsatisfiable(f"out-degree {hi} exceeds the {room} available successors")

    def digest(self) -> str:
        """Short hash of the configuration without its seed."""
        key = f"{self.n}:{self.out_degree[0]}-{self.out_degree[1]}:{self.max_priority}:{int(self.allow_self_loops)}"
        return hashlib.sha1(key.encode()).hexdigest()[:12]


def random_game(cfg: GenConfig) -> ParityGame:
    cfg.validate()
    rng = SplitMix64(cfg.seed)
    lo, hi = cfg.out_degree
    rows = []
    for v in range(cfg.n):
        prio = rng.below(cfg.max_priority + 1)
        owner = rng.below(2)
        k = rng.between(lo, hi)
        cand = [u for u in range(cfg.n) if cfg.allow_self_loops or u != v]
        for i in range(k):
            j = i + rng.below(len(cand) - i)
            cand[i], cand[j] = cand[j], cand[i]
        rows.append((prio, owner, cand[:k]))
    return build_game(rows)


def two_cycle(size: int) -> ParityGame:
    """Single cycle ``0 -> 1 -> ... -> 2*size-1 -> 0``; vertex ``i`` has
    priority ``i`` and owner ``i mod 2``. ``size=1`` is the Even/Odd 2-cycle."""
    n = 2 * size
    return build_game([(i, i % 2, [(i + 1) % n]) for i in range(n)])


def chain_of_cycles(size: int) -> ParityGame:
    """``size`` 2-cycles ``(2i, 2i+1)`` linked by forward edges ``2i+1 -> 2i+2``.

    Vertex ``j`` has priority ``j`` and owner ``j mod 2``. Odd can flee each
    block forward but Even wins every block it stays in, so the game is Even's
    everywhere and the peeling solver removes one block per round, last first.
    """
    n = 2 * size
    rows = []
    for i in range(size):
        a, b = 2 * i, 2 * i + 1
        rows.append((a, EVEN, [b]))
        rows.append((b, ODD, [a] + ([b + 1] if b + 1 < n else [])))
    return build_game(rows)


def complete_bipartite(size: int) -> ParityGame:
    """Even vertices ``0..size-1``, Odd vertices ``size..2*size-1``; every
    Even vertex points at every Odd vertex and back. Vertex ``i`` has priority ``i``."""
    evens = list(range(size))
    odds = list(range(size, 2 * size))
    rows = [(v, EVEN, odds) for v in evens] + [(v, ODD, evens) for v in odds]
    return build_game(rows)


FAMILIES = {
    "two_cycle": two_cycle,
    "chain_of_cycles": chain_of_cycles,
    "complete_bipartite": complete_bipartite,
}


def family_game(name: str, size: int) -> ParityGame:
    if name not in FAMILIES:
        raise UnknownFamily(name)
    if size < 1:
        raise ValueError("size must be at least 1")
    return FAMILIES[name](size)
