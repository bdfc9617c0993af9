"""PGSolver text format, winner-convention conversion and DOT export.

Grammar accepted by :func:`parse_pgsolver` (whitespace, including newlines,
is free between tokens; there is no comment syntax)::

    game   := header? vertex+
    header := "parity" INT ";"
    vertex := INT INT ("0" | "1") INT ("," INT)* STRING? ";"

Fields of a vertex are id, priority, owner (0 = Even, 1 = Odd), successors
and an optional double-quoted name. Ids may be sparse; they are remapped to
dense ids in order of appearance and the originals kept in
``ParityGame.external_ids``.
"""

from __future__ import annotations

import enum
import re
from typing import Optional

from paritypeel.errors import (
    DanglingSuccessor,
    DuplicateVertex,
    EmptyGame,
    PGSolverSyntaxError,
)
from paritypeel.game import EVEN, ParityGame, WinnerPartition, build_game


class Convention(enum.Enum):
    MIN = "min"
    MAX = "max"


_TOKEN = re.compile(r'\s*(?:(\d+)|([A-Za-z_]+)|("(?:[^"\\]|\\.)*")|([;,])|(\S))')


def _tokens(text):
    """Yield ``(kind, value, line, column)``; kind is int/word/str/punct."""
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def locate(offset):
        lo, hi = 0, len(line_starts) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if line_starts[mid] <= offset:
                lo = mid
            else:
                hi = mid - 1
        return lo + 1, offset - line_starts[lo] + 1

    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        start = m.start(m.lastindex)
        line, col = locate(start)
        if m.group(1) is not None:
            yield "int", int(m.group(1)), line, col
        elif m.group(2) is not None:
            yield "word", m.group(2), line, col
        elif m.group(3) is not None:
            yield "str", _unescape(m.group(3)[1:-1]), line, col
        elif m.group(4) is not None:
            yield m.group(4), m.group(4), line, col
        else:
            raise PGSolverSyntaxError(line, col, "a token")
    line, col = locate(len(text))
    yield "eof", None, line, col


def _unescape(s):
    return re.sub(r"\\(.)", r"\1", s)


def _escape(s):
    return s.replace("\\", "\\\\").replace('"', '\\"')


class _Parser:
    def __init__(self, text):
        self.tokens = _tokens(text)
        self.cur = next(self.tokens)

    def advance(self):
        tok = self.cur
        self.cur = next(self.tokens)
        return tok

    def expect(self, kind, what):
        if self.cur[0] != kind:
            raise PGSolverSyntaxError(self.cur[2], self.cur[3], what)
        return self.advance()[1]


def parse_pgsolver(text: str, convention: Convention = Convention.MIN) -> ParityGame:
    """Parse PGSolver text; max-convention input is converted to min-parity."""
    p = _Parser(text)
    if p.cur[0] == "word":
        if p.cur[1] != "parity":
            raise PGSolverSyntaxError(p.cur[2], p.cur[3], "'parity' or a vertex id")
        p.advance()
        p.expect("int", "the maximal vertex id")
        p.expect(";", "';'")

    rows = []
    seen = {}
    while p.cur[0] != "eof":
        vid = p.expect("int", "a vertex id")
        prio = p.expect("int", "a priority")
        line, col = p.cur[2], p.cur[3]
        own = p.expect("int", "an owner (0 or 1)")
        if own not in (0, 1):
            raise PGSolverSyntaxError(line, col, "an owner (0 or 1)")
        succ = [p.expect("int", "a successor id")]
        while p.cur[0] == ",":
            p.advance()
            succ.append(p.expect("int", "a successor id"))
        name = p.advance()[1] if p.cur[0] == "str" else None
        p.expect(";", "';'")
        if vid in seen:
            raise DuplicateVertex(vid)
        seen[vid] = len(rows)
        rows.append((vid, prio, own, succ, name))

    if not rows:
        raise EmptyGame()
    specs = []
    for vid, prio, own, succ, name in rows:
        for s in succ:
            if s not in seen:
                raise DanglingSuccessor(s)
        specs.append((prio, own, [seen[s] for s in succ], name))
    game = build_game(specs)
    ids = tuple(r[0] for r in rows)
    if ids != tuple(range(len(rows))):
        game = _with(game, external_ids=ids)
    if convention == Convention.MAX:
        game = convert_convention(game, Convention.MAX, Convention.MIN)
    return game


def _with(game, **changes):
    fields = dict(
        priority=game.priority,
        owner=game.owner,
        successors=game.successors,
        predecessors=game.predecessors,
        names=game.names,
        external_ids=game.external_ids,
    )
    fields.update(changes)
    return ParityGame(**fields)


def serialize_pgsolver(game: ParityGame) -> str:
    """Canonical text: header, vertices in id order, successors ascending."""
    lines = [f"parity {game.n - 1};"]
    for v in range(game.n):
        succ = ",".join(map(str, sorted(game.successors[v])))
        line = f"{v} {game.priority[v]} {int(game.owner[v])} {succ}"
        name = game.name(v)
        if name is not None:
            line += f' "{_escape(name)}"'
        lines.append(line + ";")
    return "\n".join(lines) + "\n"


def convert_convention(game: ParityGame, source: Convention, target: Convention) -> ParityGame:
    """Flip priorities ``p -> M' - p`` with ``M'`` the smallest even bound >= max.

    Parities are kept and the order reversed, so the winner of every play
    under ``source`` equals its winner under ``target``.
    """
    if source == target:
        raise ValueError("source and target conventions are the same")
    top = max(game.priority)
    top += top & 1
    return _with(game, priority=tuple(top - p for p in game.priority))


def export_dot(game: ParityGame, partition: Optional[WinnerPartition] = None) -> str:
    """Graphviz text: diamonds for Even, boxes for Odd, labels are priorities."""
    colors = {0: "lightblue", 1: "lightsalmon"}
    out = ["digraph parity_game {"]
    for v in range(game.n):
        shape = "diamond" if game.owner[v] == EVEN else "box"
        attrs = [f'label="{game.priority[v]}"', f"shape={shape}"]
        name = game.name(v)
        if name is not None:
            attrs.append(f'xlabel="{_escape(name)}"')
        if partition is not None:
            winner = partition.winner(v)
            if winner is not None:
                attrs.append(f'style=filled fillcolor="{colors[int(winner)]}"')
        out.append(f"  v{v} [{' '.join(attrs)}];")
    for u, v in sorted(game.edges()):
        out.append(f"  v{u} -> v{v};")
    out.append("}")
    return "\n".join(out) + "\n"
