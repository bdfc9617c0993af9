import pytest
from hypothesis import given, settings

from paritypeel.dominion import (
    compute_aprime,
    compute_astar,
    compute_dominion_attractor,
    compute_u_d,
    format_trace,
)
from paritypeel.errors import NotAPriorityOfGame, SelfLoopPresent
from paritypeel.game import EVEN, GameView, Owner

from tests.strategies import games, naive_attractor


def naive_dominion_attractor(game, d):
    """The fixpoint written directly from its set definitions."""
    live = set(range(game.n))
    p = game.priority
    me = Owner.of_parity(d)

    def u_(k):
        return {v for v in live if p[v] <= k and p[v] % 2 == k % 2} if k >= 0 else set()

    astar = set()
    for k in range(0, d + 1):
        if k % 2 != d % 2:
            astar |= {v for v in naive_attractor(game, live, me, u_(k - 1)) if p[v] == k}
    ud = u_(d)
    u = set(ud)
    while True:
        a = naive_attractor(game, live, me, u)
        seed = {v for v in a - (astar | ud) if p[v] < d}
        aprime = naive_attractor(game, live, me.opponent, seed)
        nu = u - naive_attractor(game, live, me.opponent, (live - a) | aprime)
        if nu == u:
            return a
        u = nu


def test_u_d(g4):
    view = GameView.full(g4)
    assert compute_u_d(view, 3) == {0, 3}
    assert compute_u_d(view, 2) == {1, 2}
    assert compute_u_d(view, 0) == {2}


def test_astar(g4):
    view = GameView.full(g4)
    # k = 1: U_0 = {2}, Even attracts everything, priority-1 part is {0}
    assert compute_astar(view, 2) == {0}
    # k = 2: U_1 = {0}, Odd attracts {0, 1}, priority-2 part is {1}
    assert compute_astar(view, 3) == {1}
    assert compute_astar(view, 0) == frozenset()


def test_aprime(g4, cycle2):
    view = GameView.full(g4)
    assert compute_aprime(view, 2, {0, 1, 2, 3}, {0}) == frozenset()
    assert compute_aprime(view, 2, compute_u_d(view, 2), {0}) == frozenset()
    assert compute_aprime(GameView.full(cycle2), 0, {0, 1}, set()) == frozenset()
    # seed {2} (priority 0 < 3, outside A* and U_3); Even then attracts all
    assert compute_aprime(view, 3, {0, 1, 2, 3}, {1}) == {0, 1, 2, 3}


def test_g4_even_dominion(g4):
    trace = compute_dominion_attractor(GameView.full(g4), 2)
    assert trace.player is EVEN
    assert trace.result == {0, 1, 2, 3}
    assert len(trace.iterations) == 1
    assert trace.iterations[0].u == {1, 2}


def test_g4_odd_dominion_is_empty(g4):
    trace = compute_dominion_attractor(GameView.full(g4), 3)
    assert [it.u for it in trace.iterations] == [{0, 3}, frozenset()]
    assert trace.result == frozenset()


def test_two_cycle(cycle2):
    trace = compute_dominion_attractor(GameView.full(cycle2), 0)
    it = trace.iterations[0]
    assert it.u == {0} and it.a == {0, 1} and it.aprime == frozenset()
    assert trace.result == {0, 1}


def test_errors(fig1, g4):
    with pytest.raises(SelfLoopPresent):
        compute_dominion_attractor(GameView.full(fig1), 3)
    with pytest.raises(NotAPriorityOfGame):
        compute_dominion_attractor(GameView.full(g4), 5)


def test_trace_format(g4):
    text = format_trace(compute_dominion_attractor(GameView.full(g4), 3))
    assert text == (
        "call 0 d=3 player=odd ud=0,3 astar=1\n"
        "  iter 0 u=0,3 a=0,1,2,3 aprime=0,1,2,3 removed=0,3\n"
        "  iter 1 u=- a=- aprime=- removed=-\n"
        "  result -"
    )


@settings(max_examples=300)
@given(games(min_n=2, max_n=9, self_loops=False))
def test_matches_naive_definition_and_invariants(g):
    view = GameView.full(g)
    for d in view.priorities():
        trace = compute_dominion_attractor(view, d)
        assert trace.result == naive_dominion_attractor(g, d)
        us = [it.u for it in trace.iterations]
        attrs = [it.a for it in trace.iterations]
        assert all(b < a for a, b in zip(us, us[1:]))
        assert all(b <= a for a, b in zip(attrs, attrs[1:]))
        assert len(trace.iterations) <= len(trace.u_d) + 1 <= g.n + 1
        assert trace.result == trace.iterations[-1].a
        assert not trace.iterations[-1].removed
        assert trace.attractor_calls <= 3 * len(trace.iterations) + d
