"""Box-grid geometry helpers shared by the position generator and the gadget
templates: rectangle ring loops, box paths, and the edges they induce."""

from __future__ import annotations

from .board import Box, Edge, HORIZONTAL, VERTICAL


def shared_edge(a: Box, b: Box) -> Edge:
    ax, ay = a
    bx, by = b
    if ax == bx and abs(ay - by) == 1:
        return Edge(HORIZONTAL, ax, max(ay, by))
    if ay == by and abs(ax - bx) == 1:
        return Edge(VERTICAL, max(ax, bx), ay)
    raise ValueError(f"boxes not adjacent: {a} {b}")


def border_edge(b: Box, side: str) -> Edge:
    """Edge between a box and the outer face; side in n/s/w/e."""
    x, y = b
    if side == "n":
        return Edge(HORIZONTAL, x, y)
    if side == "s":
        return Edge(HORIZONTAL, x, y + 1)
    if side == "w":
        return Edge(VERTICAL, x, y)
    if side == "e":
        return Edge(VERTICAL, x + 1, y)
    raise ValueError(f"bad side {side!r}")


def rect_ring(x0: int, y0: int, w: int, h: int) -> list[Box]:
    """Perimeter boxes of a w x h block, clockwise from the NW corner."""
    if w < 2 or h < 2:
        raise ValueError("ring needs w, h >= 2")
    out: list[Box] = []
    for x in range(x0, x0 + w):
        out.append((x, y0))
    for y in range(y0 + 1, y0 + h):
        out.append((x0 + w - 1, y))
    for x in range(x0 + w - 2, x0 - 1, -1):
        out.append((x, y0 + h - 1))
    for y in range(y0 + h - 2, y0, -1):
        out.append((x0, y))
    return out


def check_loop(loop: list[Box]) -> list[Box]:
    """Validate that the boxes form a simple closed loop of adjacent boxes."""
    n = len(loop)
    if n < 4:
        raise ValueError(f"loop too short: {n}")
    if len(set(loop)) != n:
        raise ValueError("loop repeats a box")
    for i in range(n):
        shared_edge(loop[i], loop[(i + 1) % n])  # raises if not adjacent
    return loop


def loop_edges(loop) -> list[Edge]:
    n = len(loop)
    return [shared_edge(loop[i], loop[(i + 1) % n]) for i in range(n)]


def path_edges(path) -> list[Edge]:
    return [shared_edge(path[i], path[i + 1]) for i in range(len(path) - 1)]


def col_run(x: int, y0: int, y1: int) -> tuple[Box, ...]:
    """Boxes (x, y0) .. (x, y1) inclusive."""
    step = 1 if y1 >= y0 else -1
    return tuple((x, y) for y in range(y0, y1 + step, step))


def row_run(y: int, x0: int, x1: int) -> tuple[Box, ...]:
    step = 1 if x1 >= x0 else -1
    return tuple((x, y) for x in range(x0, x1 + step, step))


def translate_boxes(boxes, dx: int, dy: int):
    return tuple((x + dx, y + dy) for x, y in boxes)


def translate_edge(e: Edge, dx: int, dy: int) -> Edge:
    return Edge(e.orient, e.x + dx, e.y + dy)
