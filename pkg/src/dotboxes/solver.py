"""Exact minimax oracle.

Net-value negamax over the undrawn-edge bitmask.  The net value (mover boxes
minus opponent boxes over the rest of the game) depends only on the set of
undrawn edges, never on scores already banked or on whose name the mover
carries, so the transposition table is keyed by the mask alone.  Captures
keep the turn, which in negamax terms means no sign flip and a window shift.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Edge,
    GameState,
    apply_move,
    available_moves,
    edge_universe,
    is_terminal,
)

INF = 10**9


class SearchBudgetExceeded(RuntimeError):
    """Node budget exhausted; instance beyond oracle scale."""


@dataclass(frozen=True)
class SolveResult:
    net_value: int
    principal_variation: tuple[Edge, ...]
    nodes: int


class _Position:
    """Bitmask view of a position: bit i set = edge i undrawn."""

    def __init__(self, s: GameState):
        self.edges = edge_universe(s.width, s.height)
        self.index = {e: i for i, e in enumerate(self.edges)}
        # per-edge incident box ids, per-box edge mask
        boxes = list(s.boxes())
        box_id = {b: i for i, b in enumerate(boxes)}
        self.box_masks = []
        for b in boxes:
            from .board import box_edges

            m = 0
            for e in box_edges(b):
                m |= 1 << self.index[e]
            self.box_masks.append(m)
        from .board import edge_boxes

        self.edge_boxes = [
            tuple(box_id[b] for b in edge_boxes(e, s.width, s.height))
            for e in self.edges
        ]
        mask = 0
        for e in self.edges:
            if e not in s.drawn:
                mask |= 1 << self.index[e]
        self.start_mask = mask

    def captures(self, mask: int, ei: int) -> int:
        bit = 1 << ei
        n = 0
        for bi in self.edge_boxes[ei]:
            if self.box_masks[bi] & mask == bit:
                n += 1
        return n

    def opens_box(self, mask: int, ei: int) -> bool:
        """True when drawing the edge leaves some adjacent box at degree 1."""
        bit = 1 << ei
        rest = mask & ~bit
        for bi in self.edge_boxes[ei]:
            m = self.box_masks[bi] & rest
            if m and (m & (m - 1)) == 0:
                return True
        return False


class _Search:
    def __init__(self, pos: _Position, budget: int, use_tt: bool = True):
        self.pos = pos
        self.budget = budget
        self.nodes = 0
        self.tt: dict[int, tuple[int, int, int]] = {} if use_tt else None

    def ordered_moves(self, mask: int) -> list[tuple[int, int]]:
        """(edge index, capture count), captures first, then quiet moves,
        then moves that hand a box to the opponent; canonical within class."""
        caps = []
        quiet = []
        loony = []
        m = mask
        while m:
            low = m & -m
            ei = low.bit_length() - 1
            m ^= low
            c = self.pos.captures(mask, ei)
            if c:
                caps.append((ei, c))
            elif self.pos.opens_box(mask, ei):
                loony.append((ei, 0))
            else:
                quiet.append((ei, 0))
        return caps + quiet + loony

    def negamax(self, mask: int, alpha: int, beta: int) -> int:
        if mask == 0:
            return 0
        self.nodes += 1
        if self.nodes > self.budget:
            raise SearchBudgetExceeded(f"node budget {self.budget} exhausted")
        a0 = alpha
        if self.tt is not None:
            hit = self.tt.get(mask)
            if hit is not None:
                flag, val, _ = hit
                if flag == 0:
                    return val
                if flag == 1:
                    alpha = max(alpha, val)
                elif flag == -1:
                    beta = min(beta, val)
                if alpha >= beta:
                    return val
        best = -INF
        best_move = -1
        for ei, c in self.ordered_moves(mask):
            child = mask & ~(1 << ei)
            if c:
                v = c + self.negamax(child, alpha - c, beta - c)
            else:
                v = -self.negamax(child, -beta, -alpha)
            if v > best:
                best = v
                best_move = ei
            if best > alpha:
                alpha = best
            if alpha >= beta:
                break
        if self.tt is not None:
            if best <= a0:
                flag = -1  # upper bound
            elif best >= beta:
                flag = 1  # lower bound
            else:
                flag = 0  # exact
            self.tt[mask] = (flag, best, best_move)
        return best


DEFAULT_BUDGET = 50_000_000


def solve(s: GameState, node_budget: int = DEFAULT_BUDGET) -> SolveResult:
    """Exact net value for the player to move, with a principal variation."""
    if node_budget < 1:
        raise ValueError("node budget must be positive")
    pos = _Position(s)
    search = _Search(pos, node_budget)
    value = search.negamax(pos.start_mask, -INF, INF)
    pv: list[Edge] = []
    mask = pos.start_mask
    while mask:
        best_v = -INF
        best_ei = -1
        m = mask
        while m:
            low = m & -m
            ei = low.bit_length() - 1
            m ^= low
            c = pos.captures(mask, ei)
            child = mask & ~(1 << ei)
            v = c + search.negamax(child, -INF, INF) if c else -search.negamax(
                child, -INF, INF
            )
            if v > best_v:
                best_v = v
                best_ei = ei
        pv.append(pos.edges[best_ei])
        mask &= ~(1 << best_ei)
    return SolveResult(net_value=value, principal_variation=tuple(pv), nodes=search.nodes)


def solve_value_plain(s: GameState, node_budget: int = DEFAULT_BUDGET) -> int:
    """Reference search without memoization (alpha-beta only)."""
    pos = _Position(s)
    search = _Search(pos, node_budget, use_tt=False)
    return search.negamax(pos.start_mask, -INF, INF)


def net_to_mover_boxes(s: GameState, net: int) -> int:
    """Convert a net value to mover boxes over the remaining game."""
    remaining = sum(1 for b in s.boxes() if s.undrawn_count(b) >= 1)
    assert (remaining + net) % 2 == 0, "parity mismatch"
    return (remaining + net) // 2


def perft(s: GameState, depth: int) -> int:
    """Count legal move sequences of the given length."""
    if depth == 0:
        return 1
    if is_terminal(s):
        return 0
    total = 0
    for e in available_moves(s):
        ns, _ = apply_move(s, e)
        total += perft(ns, depth - 1)
    return total
