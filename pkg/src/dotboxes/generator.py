"""Construct loony-endgame positions from ring/chain structure descriptions,
plus a seeded family of such positions for oracle testing.

A structure spec lives on a board where every edge is drawn except the ones
the structures need.  Boxes outside the structures are complete from the
start and count for nobody.
"""

from __future__ import annotations

import random

from dataclasses import dataclass

from .board import Box, Edge, GameState, edge_universe, new_board
from .geometry import border_edge, loop_edges, path_edges, rect_ring, shared_edge


@dataclass(frozen=True)
class ChainSpec:
    path: tuple[Box, ...]
    # each end: a junction box, or ("outer", side) anchored at the path end
    end_a: object
    end_b: object


def structure_position(
    w: int,
    h: int,
    loops=(),
    chains=(),
    to_move: str = "A",
) -> GameState:
    undrawn: set[Edge] = set()
    for loop in loops:
        undrawn.update(loop_edges(loop))
    for ch in chains:
        undrawn.update(path_edges(list(ch.path)))
        for end, anchor in ((ch.end_a, ch.path[0]), (ch.end_b, ch.path[-1])):
            if isinstance(end, tuple) and end and end[0] == "outer":
                undrawn.add(border_edge(anchor, end[1]))
            else:
                undrawn.add(shared_edge(anchor, end))
    drawn = [e for e in edge_universe(w, h) if e not in undrawn]
    return new_board(w, h, drawn, to_move=to_move)


# ring rectangles by box count: 2*(w+h) - 4
RING_SHAPES = {
    8: [(3, 3)],
    10: [(4, 3), (3, 4)],
    12: [(4, 4), (5, 3), (3, 5)],
    14: [(6, 3), (5, 4), (4, 5)],
}


def ring_at(x0: int, y0: int, size: int, variant: int = 0) -> list[Box]:
    shapes = RING_SHAPES[size]
    w, h = shapes[variant % len(shapes)]
    return rect_ring(x0, y0, w, h)


def single_loop(size: int = 8) -> GameState:
    ring = ring_at(0, 0, size)
    w = max(b[0] for b in ring) + 1
    h = max(b[1] for b in ring) + 1
    return structure_position(w, h, loops=[ring])


def two_loops() -> GameState:
    return structure_position(
        7, 3, loops=[rect_ring(0, 0, 3, 3), rect_ring(4, 0, 3, 3)]
    )


def dumbbell(chain_len: int = 4, s1: int = 8, s2: int = 8, v1: int = 0, v2: int = 0) -> GameState:
    """Two rings joined by a chain through two degree-3 junctions: the chain
    attaches to the middle of each ring's facing side."""
    r1 = ring_at(0, 0, s1, v1)
    w1 = max(b[0] for b in r1) + 1
    h1 = max(b[1] for b in r1) + 1
    x2 = w1 + chain_len
    r2 = ring_at(x2, 0, s2, v2)
    h2 = max(b[1] for b in r2) - min(b[1] for b in r2) + 1
    ya = h1 // 2
    yb = h2 // 2
    # the chain runs along row ya; both rings must have a box on that row
    j1 = (w1 - 1, ya)
    j2 = (x2, yb)
    path = tuple((x, ya) for x in range(w1, x2))
    if ya != yb:
        raise ValueError("ring shapes misaligned for a straight chain")
    w = x2 + (max(b[0] for b in r2) - x2 + 1)
    h = max(h1, h2)
    return structure_position(w, h, loops=[r1, r2], chains=[ChainSpec(path, j1, j2)])


def ring_with_chord(ring_w: int = 6, detour: int = 0) -> GameState:
    """A ring with a chord chain between its two bottom corners, giving a
    theta: two degree-3 junctions, three paths, max one disjoint cycle."""
    ring = rect_ring(0, 0, ring_w, 3)
    j1 = (0, 2)
    j2 = (ring_w - 1, 2)
    if detour == 0:
        path = tuple((x, 3) for x in range(0, ring_w))
    else:
        # dip one row deeper in the middle for a longer chord
        path = tuple([(0, 3)] + [(x, 4) for x in range(0, ring_w)] + [(ring_w - 1, 3)])
    return structure_position(
        ring_w + 1, 5 + detour, loops=[ring],
        chains=[ChainSpec(path, j1, j2)],
    )


def generate_loony_positions(count: int, seed: int = 2024) -> list[GameState]:
    """Seeded family of loony positions: at least one cycle,
    junction-terminated chains of length >= 4, cycles of length >= 8,
    at most 22 structure boxes."""
    rng = random.Random(seed)
    out: list[GameState] = []
    makers = []

    def rings_maker(sizes, variants, dx, dy):
        def make():
            loops = []
            x = dx
            for sz, v in zip(sizes, variants):
                ring = ring_at(x, dy, sz, v)
                loops.append(ring)
                x = max(bx for bx, _ in ring) + 2
            w = x + 1
            h = dy + max(max(by for _, by in r) for r in loops) + 2
            return structure_position(w, h, loops=loops)

        return make

    # disjoint ring combos within 22 boxes
    for sizes in ([8], [10], [12], [14], [8, 8], [8, 10], [8, 12], [8, 14], [10, 10], [10, 12]):
        for variants in ([0] * len(sizes), [1] * len(sizes)):
            ok = all(v < len(RING_SHAPES[s]) for s, v in zip(sizes, variants))
            if not ok:
                continue
            for dx in (0, 1, 2, 3):
                for dy in (0, 1):
                    makers.append(rings_maker(tuple(sizes), tuple(variants), dx, dy))
    # dumbbells: 8+8 rings plus chain 4..6; 8+10 with chain 4
    for chain_len in (4, 5, 6):
        makers.append(lambda cl=chain_len: dumbbell(cl))
    makers.append(lambda: dumbbell(4, 8, 10, 0, 0))
    # chords (theta positions); ring_w 7 would exceed the 22-box budget
    makers.append(lambda: ring_with_chord(6))
    makers.append(lambda: ring_with_chord(6, detour=1))

    rng.shuffle(makers)
    i = 0
    while len(out) < count:
        out.append(makers[i % len(makers)]())
        i += 1
    return out[:count]
