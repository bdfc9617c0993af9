import sys

import pytest

from paritypeel.game import build_game

FIG1_ROWS = [(1, 0, [1, 3]), (2, 1, [0, 2]), (0, 0, [3]), (3, 1, [2, 3])]
G4_ROWS = [(1, 0, [1, 3]), (2, 1, [0, 2]), (0, 0, [3]), (3, 1, [2])]
FIG1_TEXT = 'parity 3; 0 1 0 1,3; 1 2 1 0,2; 2 0 0 3; 3 3 1 2,3 "sink";'

# Smallest counterexample found by difftest: all vertices Odd-owned, every
# cycle has an even minimum, yet the solver credits everything to Odd.
COUNTEREXAMPLE_TEXT = "parity 3;\n0 2 1 2,3;\n1 1 1 0;\n2 0 1 1;\n3 3 1 0;\n"

# Both dominion attractors are empty on this self-loop-free game.
NOPROGRESS_TEXT = "parity 4;\n0 4 1 4;\n1 2 1 2;\n2 3 1 0,1;\n3 7 0 2,4;\n4 5 1 3;\n"


@pytest.fixture
def fig1():
    return build_game(FIG1_ROWS)


@pytest.fixture
def g4():
    return build_game(G4_ROWS)


@pytest.fixture
def cycle2():
    return build_game([(0, 0, [1]), (1, 1, [0])])


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("tests.test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in sorted(acceptance.RESULTS, key=lambda s: int(s.split()[2])):
            terminalreporter.write_line(line)
