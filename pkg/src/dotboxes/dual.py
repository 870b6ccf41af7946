"""Dual graph of a position and its chain/cycle decomposition.

Nodes are boxes plus one OUTER node for the unbounded face; there is one
dual edge per undrawn board edge.  The degree of a box equals its count of
undrawn sides.  Maximal components of degree-2 boxes are either chains
(ending at junction boxes, at OUTER, or at boxes of degree < 2 in
non-endgame states) or closed cycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Box,
    Edge,
    GameState,
    edge_boxes,
    edge_universe,
)

OUTER = "OUTER"


@dataclass(frozen=True)
class DualGraph:
    width: int
    height: int
    adj: dict  # node -> tuple of (neighbor node, board Edge)
    degree: dict  # node -> int

    def box_degree(self, b: Box) -> int:
        return self.degree.get(b, 0)


def build_dual(s: GameState) -> DualGraph:
    adj: dict = {OUTER: []}
    for b in s.boxes():
        adj[b] = []
    for e in edge_universe(s.width, s.height):
        if e in s.drawn:
            continue
        bs = edge_boxes(e, s.width, s.height)
        if len(bs) == 2:
            u, v = bs
        else:
            u, v = bs[0], OUTER
        adj[u].append((v, e))
        adj[v].append((u, e))
    degree = {n: len(lst) for n, lst in adj.items()}
    return DualGraph(s.width, s.height, {n: tuple(l) for n, l in adj.items()}, degree)


@dataclass(frozen=True)
class Chain:
    boxes: tuple[Box, ...]  # in path order
    ends: tuple  # the two attachment nodes (junction box, OUTER, or low-degree box)
    edges: tuple[Edge, ...]  # attachment edge, interior edges, attachment edge

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class Cycle:
    boxes: tuple[Box, ...]  # cyclic order, canonical rotation/direction
    edges: tuple[Edge, ...]  # edges[i] joins boxes[i] and boxes[i+1 mod n]

    def __len__(self) -> int:
        return len(self.boxes)


@dataclass(frozen=True)
class Decomposition:
    chains: tuple[Chain, ...]
    cycles: tuple[Cycle, ...]
    junctions: frozenset[Box]


def _canon_cycle(boxes: list[Box], edges: list[Edge]) -> Cycle:
    n = len(boxes)
    i = boxes.index(min(boxes))
    fb = boxes[i:] + boxes[:i]
    fe = edges[i:] + edges[:i]
    if n > 2 and fb[-1] < fb[1]:
        # reverse direction: boxes [b0, bn-1, ..., b1]; edge j joins new j,j+1
        rb = [fb[0]] + fb[1:][::-1]
        re = fe[::-1]
        return Cycle(tuple(rb), tuple(re))
    return Cycle(tuple(fb), tuple(fe))


def decompose(g: DualGraph) -> Decomposition:
    """Partition the degree-2 boxes into maximal chains and cycles."""
    junctions = frozenset(
        b for b in g.degree if b != OUTER and g.degree[b] >= 3
    )
    deg2 = sorted(b for b in g.degree if b != OUTER and g.degree[b] == 2)
    deg2_set = set(deg2)
    seen: set = set()
    chains: list[Chain] = []
    cycles: list[Cycle] = []
    for start in deg2:
        if start in seen:
            continue
        seen.add(start)
        nbrs = g.adj[start]
        # walk one way first to detect a closed loop
        boxes = [start]
        edges = []
        node, edge = nbrs[0]
        edges.append(edge)
        closed = False
        while node in deg2_set:
            if node == start:
                closed = True
                break
            boxes.append(node)
            seen.add(node)
            nxt = [(m, em) for m, em in g.adj[node] if em != edge]
            node, edge = nxt[0]
            edges.append(edge)
        if closed:
            cycles.append(_canon_cycle(boxes, edges))
            continue
        end_a, edges_a = node, edges
        # walk the other way
        boxes_b = []
        edges_b = []
        node, edge = nbrs[1]
        edges_b.append(edge)
        while node in deg2_set:
            boxes_b.append(node)
            seen.add(node)
            nxt = [(m, em) for m, em in g.adj[node] if em != edge]
            node, edge = nxt[0]
            edges_b.append(edge)
        end_b = node
        path = boxes_b[::-1] + boxes
        all_edges = edges_b[::-1] + edges_a
        ends = (end_b, end_a)
        chains.append(Chain(tuple(path), ends, tuple(all_edges)))
    chains.sort(key=lambda c: min(c.boxes))
    cycles.sort(key=lambda c: c.boxes[0])
    return Decomposition(tuple(chains), tuple(cycles), junctions)


CAPTURE = "capture"
SAFE = "safe"
SHORT_CHAIN_MIDDLE = "short_chain_middle"
LOONY = "loony"


def classify_move(s: GameState, e: Edge) -> str:
    """One of capture / safe / short_chain_middle / loony.

    A move is loony when it opens a long chain (3+ boxes) or a cycle for the
    opponent, or opens a 2-chain by a non-middle edge.  The middle edge of an
    isolated 2-chain gets its own class.  Opening a 1-chain is safe.
    """
    from .board import BoardError, box_edges

    if e in s.drawn:
        raise BoardError(f"edge already drawn: {e!r}")
    bs = edge_boxes(e, s.width, s.height)
    if not bs and not edge_boxes(e, s.width, s.height):
        raise BoardError(f"edge out of bounds: {e!r}")
    for b in bs:
        if s.undrawn_count(b) == 1:
            return CAPTURE
    g = build_dual(s)
    # find the degree-2 structure the move touches
    deg2_endpoints = [b for b in bs if g.degree[b] == 2]
    if not deg2_endpoints:
        return SAFE
    d = decompose(g)
    target = deg2_endpoints[0]
    for cyc in d.cycles:
        if target in cyc.boxes:
            return LOONY
    for ch in d.chains:
        if target in ch.boxes:
            if len(ch) >= 3:
                return LOONY
            if len(ch) == 2:
                # middle edge joins the chain's two boxes
                if all(b in ch.boxes for b in bs) and len(bs) == 2:
                    return SHORT_CHAIN_MIDDLE
                return LOONY
            return SAFE  # opening a 1-chain
    return SAFE


def classify_all(s: GameState) -> dict[Edge, str]:
    """Classification for every available move from one decomposition pass."""
    from .board import available_moves

    g = build_dual(s)
    d = decompose(g)
    structure_of: dict = {}
    for cyc in d.cycles:
        for b in cyc.boxes:
            structure_of[b] = ("cycle", len(cyc), None)
    for ch in d.chains:
        for b in ch.boxes:
            structure_of[b] = ("chain", len(ch), ch)
    out: dict[Edge, str] = {}
    for e in available_moves(s):
        bs = edge_boxes(e, s.width, s.height)
        if any(g.degree.get(b, 0) == 1 for b in bs):
            out[e] = CAPTURE
            continue
        deg2 = [b for b in bs if g.degree.get(b, 0) == 2]
        if not deg2:
            out[e] = SAFE
            continue
        kind, size, ch = structure_of[deg2[0]]
        if kind == "cycle" or size >= 3:
            out[e] = LOONY
        elif size == 2:
            if len(bs) == 2 and all(b in ch.boxes for b in bs):
                out[e] = SHORT_CHAIN_MIDDLE
            else:
                out[e] = LOONY
        else:
            out[e] = SAFE
    return out


def is_loony_endgame(s: GameState) -> bool:
    """True when every available move is loony (and moves remain)."""
    from .board import available_moves

    moves = available_moves(s)
    if not moves:
        return False
    g = build_dual(s)
    # quick reject: any capturable or safe-degree box pattern
    for b in s.boxes():
        deg = g.degree.get(b, 0)
        if deg == 1:
            return False  # capture available
    d = decompose(g)
    for ch in d.chains:
        if len(ch) <= 2:
            return False  # safe or short-chain-middle move exists
    # every undrawn edge must touch a degree-2 box that is part of a long
    # chain or cycle; an edge between two junctions (or junction/outer) is
    # safe, as drawing it creates no capturable box
    deg2_boxes = {b for b in g.degree if b != OUTER and g.degree[b] == 2}
    for e in moves:
        bs = edge_boxes(e, s.width, s.height)
        if not any(b in deg2_boxes for b in bs):
            return False
    return True
