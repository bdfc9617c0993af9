"""Parity game solving by dominion-attractor peeling, with reference oracles
and a differential-testing harness."""

from paritypeel.game import EVEN, ODD, GameView, Owner, ParityGame, WinnerPartition, build_game, remove_self_loops
from paritypeel.solver import SolveResult, SolveStats, solve

__all__ = [
    "EVEN",
    "ODD",
    "GameView",
    "Owner",
    "ParityGame",
    "SolveResult",
    "SolveStats",
    "WinnerPartition",
    "build_game",
    "remove_self_loops",
    "solve",
]
