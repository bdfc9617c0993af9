"""Hypothesis strategies and naive reference helpers shared by the tests."""

from hypothesis import strategies as st

from paritypeel.game import Owner, build_game


@st.composite
def games(draw, min_n=1, max_n=8, max_priority=6, self_loops=True):
    n = draw(st.integers(min_n, max_n))
    if n == 1 and not self_loops:
        n = 2
    rows = []
    for v in range(n):
        pool = [u for u in range(n) if self_loops or u != v]
        succ = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=3, unique=True))
        rows.append((draw(st.integers(0, max_priority)), draw(st.integers(0, 1)), succ))
    return build_game(rows)


def naive_attractor(game, live, player, targets):
    """Attractor by literally iterating the inductive definition."""
    attr = set(targets)
    while True:
        nxt = set(attr)
        for v in live:
            if v in attr:
                continue
            succ = [w for w in game.successors[v] if w in live]
            if game.owner[v] == player and any(w in attr for w in succ):
                nxt.add(v)
            elif game.owner[v] != player and all(w in attr for w in succ):
                nxt.add(v)
        if nxt == attr:
            return attr
        attr = nxt


def opponent(player):
    return Owner(player).opponent
