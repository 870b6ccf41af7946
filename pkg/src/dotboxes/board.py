"""Exact Dots & Boxes rules: board state, moves, captures, scoring, text format.

Coordinates: a board has W x H unit boxes.  Box (bx, by) has corners at grid
dots (bx, by) .. (bx+1, by+1).  A horizontal edge ("H", x, y) is the segment
from dot (x, y) to (x+1, y); it separates box (x, y-1) above from box (x, y)
below.  A vertical edge ("V", x, y) runs from dot (x, y) to (x, y+1) and
separates box (x-1, y) from box (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Iterator, Optional

Box = tuple[int, int]

PLAYER_A = "A"
PLAYER_B = "B"

HORIZONTAL = "H"
VERTICAL = "V"


class BoardError(ValueError):
    """Illegal board construction or illegal move."""


class FormatError(ValueError):
    """Malformed board text; carries a 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True, order=True)
class Edge:
    orient: str  # "H" or "V"
    x: int
    y: int

    def __repr__(self) -> str:
        return f"{self.orient} {self.x} {self.y}"


def edge_in_bounds(e: Edge, w: int, h: int) -> bool:
    if e.orient == HORIZONTAL:
        return 0 <= e.x < w and 0 <= e.y <= h
    if e.orient == VERTICAL:
        return 0 <= e.x <= w and 0 <= e.y < h
    return False


def edge_universe(w: int, h: int) -> list[Edge]:
    """All edges of a W x H board in canonical order (H block then V block,
    row-major)."""
    out = []
    for y in range(h + 1):
        for x in range(w):
            out.append(Edge(HORIZONTAL, x, y))
    for y in range(h):
        for x in range(w + 1):
            out.append(Edge(VERTICAL, x, y))
    return out


def edge_count(w: int, h: int) -> int:
    return 2 * w * h + w + h


def canonical_key(e: Edge) -> tuple[int, int, int]:
    return (0 if e.orient == HORIZONTAL else 1, e.y, e.x)


def box_edges(b: Box) -> tuple[Edge, Edge, Edge, Edge]:
    bx, by = b
    return (
        Edge(HORIZONTAL, bx, by),
        Edge(HORIZONTAL, bx, by + 1),
        Edge(VERTICAL, bx, by),
        Edge(VERTICAL, bx + 1, by),
    )


def edge_boxes(e: Edge, w: int, h: int) -> list[Box]:
    """Boxes incident to an edge (1 on the border, 2 in the interior)."""
    out = []
    if e.orient == HORIZONTAL:
        if e.y - 1 >= 0:
            out.append((e.x, e.y - 1))
        if e.y < h:
            out.append((e.x, e.y))
    else:
        if e.x - 1 >= 0:
            out.append((e.x - 1, e.y))
        if e.x < w:
            out.append((e.x, e.y))
    return out


@dataclass(frozen=True)
class MoveOutcome:
    captured: tuple[Box, ...]
    extra_turn: bool


@dataclass(frozen=True)
class GameState:
    width: int
    height: int
    drawn: frozenset[Edge]
    owners: frozenset[tuple[Box, str]]  # (box, player) pairs, capture-tracked only
    score_a: int
    score_b: int
    handicap_a: int
    handicap_b: int
    to_move: str

    def owner_map(self) -> dict[Box, str]:
        return dict(self.owners)

    def boxes(self) -> Iterator[Box]:
        for by in range(self.height):
            for bx in range(self.width):
                yield (bx, by)

    def undrawn_count(self, b: Box) -> int:
        return sum(1 for e in box_edges(b) if e not in self.drawn)

    def is_complete(self, b: Box) -> bool:
        return self.undrawn_count(b) == 0


def new_board(
    w: int,
    h: int,
    drawn: Iterable[Edge] = (),
    score_a: int = 0,
    score_b: int = 0,
    to_move: str = PLAYER_A,
) -> GameState:
    """Build a starting position.  Pre-drawn boxes are unowned scenery; the
    given scores are recorded as handicap."""
    if w < 1 or h < 1:
        raise BoardError(f"board must be at least 1x1, got {w}x{h}")
    if score_a < 0 or score_b < 0:
        raise BoardError("scores must be non-negative")
    if to_move not in (PLAYER_A, PLAYER_B):
        raise BoardError(f"bad player {to_move!r}")
    seen = set()
    for e in drawn:
        if not edge_in_bounds(e, w, h):
            raise BoardError(f"edge out of bounds: {e!r} on {w}x{h}")
        if e in seen:
            raise BoardError(f"duplicate edge: {e!r}")
        seen.add(e)
    return GameState(
        width=w,
        height=h,
        drawn=frozenset(seen),
        owners=frozenset(),
        score_a=score_a,
        score_b=score_b,
        handicap_a=score_a,
        handicap_b=score_b,
        to_move=to_move,
    )


def available_moves(s: GameState) -> list[Edge]:
    """Undrawn edges in canonical order."""
    return [e for e in edge_universe(s.width, s.height) if e not in s.drawn]


def apply_move(s: GameState, e: Edge) -> tuple[GameState, MoveOutcome]:
    if not edge_in_bounds(e, s.width, s.height):
        raise BoardError(f"edge out of bounds: {e!r}")
    if e in s.drawn:
        raise BoardError(f"edge already drawn: {e!r}")
    drawn = s.drawn | {e}
    captured = tuple(
        b
        for b in edge_boxes(e, s.width, s.height)
        if all(be in drawn for be in box_edges(b))
    )
    mover = s.to_move
    score_a, score_b = s.score_a, s.score_b
    owners = s.owners
    if captured:
        owners = owners | {(b, mover) for b in captured}
        if mover == PLAYER_A:
            score_a += len(captured)
        else:
            score_b += len(captured)
    terminal = len(drawn) == edge_count(s.width, s.height)
    next_player = mover if (captured or terminal) else (
        PLAYER_B if mover == PLAYER_A else PLAYER_A
    )
    ns = replace(
        s,
        drawn=frozenset(drawn),
        owners=owners,
        score_a=score_a,
        score_b=score_b,
        to_move=next_player,
    )
    return ns, MoveOutcome(captured=captured, extra_turn=bool(captured))


def is_terminal(s: GameState) -> bool:
    return len(s.drawn) == edge_count(s.width, s.height)


def winner(s: GameState) -> str:
    """'A', 'B', or 'draw'.  Error on non-terminal states."""
    if not is_terminal(s):
        raise BoardError("winner() on non-terminal state")
    if s.score_a > s.score_b:
        return PLAYER_A
    if s.score_b > s.score_a:
        return PLAYER_B
    return "draw"


FORMAT_HEADER = "dots-and-boxes v1"


def serialize_board(s: GameState) -> str:
    lines = [
        FORMAT_HEADER,
        f"size {s.width} {s.height}",
        f"score A {s.score_a}",
        f"score B {s.score_b}",
        f"turn {s.to_move}",
    ]
    for e in sorted(s.drawn, key=canonical_key):
        lines.append(f"drawn {e.orient} {e.x} {e.y}")
    return "\n".join(lines) + "\n"


def parse_board(text: str) -> GameState:
    """Parse the v1 board format.  Ownership is not representable in the
    format, so parsed scores are recorded as handicap."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def expect(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise FormatError(f"missing {what}", idx + 1)
        return lines[idx]

    if expect(0, "header") != FORMAT_HEADER:
        raise FormatError(f"bad header {lines[0]!r}", 1)
    m = expect(1, "size line").split()
    if len(m) != 3 or m[0] != "size":
        raise FormatError("expected `size W H`", 2)
    try:
        w, h = int(m[1]), int(m[2])
    except ValueError:
        raise FormatError("size values must be integers", 2) from None
    if w < 1 or h < 1:
        raise FormatError(f"bad size {w}x{h}", 2)
    scores = {}
    for idx, who in ((2, "A"), (3, "B")):
        m = expect(idx, f"score {who} line").split()
        if len(m) != 3 or m[0] != "score" or m[1] != who:
            raise FormatError(f"expected `score {who} <int>`", idx + 1)
        try:
            scores[who] = int(m[2])
        except ValueError:
            raise FormatError("score must be an integer", idx + 1) from None
        if scores[who] < 0:
            raise FormatError("score must be non-negative", idx + 1)
    m = expect(4, "turn line").split()
    if len(m) != 2 or m[0] != "turn" or m[1] not in (PLAYER_A, PLAYER_B):
        raise FormatError("expected `turn A` or `turn B`", 5)
    to_move = m[1]
    drawn = []
    seen = set()
    for i, line in enumerate(lines[5:], start=6):
        m = line.split()
        if len(m) != 4 or m[0] != "drawn" or m[1] not in (HORIZONTAL, VERTICAL):
            raise FormatError(f"expected `drawn H|V x y`, got {line!r}", i)
        try:
            e = Edge(m[1], int(m[2]), int(m[3]))
        except ValueError:
            raise FormatError("edge coordinates must be integers", i) from None
        if not edge_in_bounds(e, w, h):
            raise FormatError(f"edge out of bounds: {e!r}", i)
        if e in seen:
            raise FormatError(f"duplicate edge: {e!r}", i)
        seen.add(e)
        drawn.append(e)
    return new_board(w, h, drawn, scores["A"], scores["B"], to_move)


def strip_history(s: GameState) -> GameState:
    """Project a state onto what the text format can represent: ownership is
    forgotten and current scores become handicap."""
    return replace(
        s,
        owners=frozenset(),
        handicap_a=s.score_a,
        handicap_b=s.score_b,
    )
