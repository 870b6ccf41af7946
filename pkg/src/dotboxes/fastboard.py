"""Mutable array-backed board for policy playouts.

The immutable GameState engine is the contract surface; this mirror exists
so full-instance matches and deviation probes run fast.  Edge ids are pure
arithmetic over the canonical order (horizontal block row-major, then
vertical block), so no per-edge object tables are built even on boards with
hundreds of thousands of edges.  Move logs replay exactly through
board.apply_move (the match harness spot-checks that).
"""

from __future__ import annotations

from .board import Edge, GameState, HORIZONTAL, VERTICAL


class FastBoard:
    def __init__(self, s: GameState):
        w, h = s.width, s.height
        self.width = w
        self.height = h
        self.h_count = w * (h + 1)
        self.edge_count = self.h_count + h * (w + 1)
        nb = w * h
        self.box_count = nb
        self.box_edge_ids = []
        hc = self.h_count
        for by in range(h):
            for bx in range(w):
                self.box_edge_ids.append(
                    (
                        by * w + bx,  # top
                        (by + 1) * w + bx,  # bottom
                        hc + by * (w + 1) + bx,  # left
                        hc + by * (w + 1) + bx + 1,  # right
                    )
                )
        self.undrawn = bytearray(b"\x01" * self.edge_count)
        for e in s.drawn:
            self.undrawn[self.edge_id(e)] = 0
        self.deg = [0] * nb
        for bi in range(nb):
            self.deg[bi] = sum(
                self.undrawn[ei] for ei in self.box_edge_ids[bi]
            )
        self.owner = [-1] * nb
        self.scores = [s.score_a, s.score_b]
        self.to_move = 0 if s.to_move == "A" else 1
        self.remaining = sum(self.undrawn)
        self.log: list[int] = []
        self.structure_boxes = [bi for bi in range(nb) if self.deg[bi] > 0]
        self.deg1 = {bi for bi in self.structure_boxes if self.deg[bi] == 1}

    # --- id arithmetic ----------------------------------------------------

    def edge_id(self, e: Edge) -> int:
        if e.orient == HORIZONTAL:
            return e.y * self.width + e.x
        return self.h_count + e.y * (self.width + 1) + e.x

    def edge_at(self, ei: int) -> Edge:
        if ei < self.h_count:
            return Edge(HORIZONTAL, ei % self.width, ei // self.width)
        r = ei - self.h_count
        return Edge(VERTICAL, r % (self.width + 1), r // (self.width + 1))

    def edge_box_ids(self, ei: int) -> tuple:
        w = self.width
        if ei < self.h_count:
            x, y = ei % w, ei // w
            if y == 0:
                return ((y * w + x),)
            if y == self.height:
                return (((y - 1) * w + x),)
            return ((y - 1) * w + x, y * w + x)
        r = ei - self.h_count
        x, y = r % (w + 1), r // (w + 1)
        if x == 0:
            return ((y * w),)
        if x == w:
            return ((y * w + x - 1),)
        return (y * w + x - 1, y * w + x)

    def box_id(self, b) -> int:
        return b[1] * self.width + b[0]

    def box_at(self, bi: int):
        return (bi % self.width, bi // self.width)

    # --- play -------------------------------------------------------------

    def clone(self) -> "FastBoard":
        fb = object.__new__(FastBoard)
        fb.width = self.width
        fb.height = self.height
        fb.h_count = self.h_count
        fb.edge_count = self.edge_count
        fb.box_count = self.box_count
        fb.box_edge_ids = self.box_edge_ids
        fb.undrawn = bytearray(self.undrawn)
        fb.deg = list(self.deg)
        fb.owner = list(self.owner)
        fb.scores = list(self.scores)
        fb.to_move = self.to_move
        fb.remaining = self.remaining
        fb.log = list(self.log)
        fb.structure_boxes = self.structure_boxes
        fb.deg1 = set(self.deg1)
        return fb

    def play(self, ei: int) -> int:
        """Draw edge ei; returns number of boxes captured."""
        if not self.undrawn[ei]:
            raise ValueError(f"edge already drawn: {self.edge_at(ei)!r}")
        self.undrawn[ei] = 0
        self.remaining -= 1
        captured = 0
        for bi in self.edge_box_ids(ei):
            self.deg[bi] -= 1
            if self.deg[bi] == 0:
                self.owner[bi] = self.to_move
                self.deg1.discard(bi)
                captured += 1
            elif self.deg[bi] == 1:
                self.deg1.add(bi)
        if captured:
            self.scores[self.to_move] += captured
        elif self.remaining > 0:
            self.to_move ^= 1
        self.log.append(ei)
        return captured

    def play_edge(self, e: Edge) -> int:
        return self.play(self.edge_id(e))

    def last_edge_of(self, bi: int) -> int:
        for ei in self.box_edge_ids[bi]:
            if self.undrawn[ei]:
                return ei
        raise ValueError(f"box {self.box_at(bi)} has no undrawn edge")

    def first_capture(self) -> int:
        """Canonical-first capturing edge id, or -1."""
        if not self.deg1:
            return -1
        return min(self.last_edge_of(bi) for bi in self.deg1)

    def capture_moves(self) -> list[int]:
        """Edge ids that complete at least one box, canonical order."""
        return sorted({self.last_edge_of(bi) for bi in self.deg1})

    def greedy_cascade(self) -> tuple[set[int], set[int]]:
        """(box ids eaten, edge ids drawn) under exhaustive greedy capture,
        without mutating the board."""
        eaten: set[int] = set()
        drawn: set[int] = set()
        local: dict[int, int] = {}

        def degree(bi):
            return local.get(bi, self.deg[bi])

        frontier = list(self.deg1)
        while frontier:
            bi = frontier.pop()
            if bi in eaten or degree(bi) != 1:
                continue
            ei = next(
                x
                for x in self.box_edge_ids[bi]
                if self.undrawn[x] and x not in drawn
            )
            drawn.add(ei)
            for nb in self.edge_box_ids(ei):
                local[nb] = degree(nb) - 1
                if local[nb] == 0:
                    eaten.add(nb)
                elif local[nb] == 1:
                    frontier.append(nb)
        return eaten, drawn

    def structures(self):
        """Chains and cycles over degree-2 boxes, as in dual.decompose but on
        the mutable arrays; returns (chains, cycles) of (boxes, edge ids)."""
        deg = self.deg
        und = self.undrawn
        deg2 = [bi for bi in self.structure_boxes if deg[bi] == 2]
        deg2_set = set(deg2)
        seen: set[int] = set()
        chains = []
        cycles = []
        for start in deg2:
            if start in seen:
                continue
            seen.add(start)
            nbrs = []
            for ei in self.box_edge_ids[start]:
                if not und[ei]:
                    continue
                others = [x for x in self.edge_box_ids(ei) if x != start]
                nbrs.append((others[0] if others else -1, ei))
            boxes = [start]
            eids = []
            node, eid = nbrs[0]
            eids.append(eid)
            closed = False
            while node in deg2_set:
                if node == start:
                    closed = True
                    break
                boxes.append(node)
                seen.add(node)
                nxt = None
                for x in self.box_edge_ids[node]:
                    if und[x] and x != eid:
                        others = [m for m in self.edge_box_ids(x) if m != node]
                        nxt = (others[0] if others else -1, x)
                        break
                node, eid = nxt
                eids.append(eid)
            if closed:
                cycles.append((tuple(boxes), tuple(eids)))
                continue
            boxes_b = []
            eids_b = []
            node, eid = nbrs[1]
            eids_b.append(eid)
            while node in deg2_set:
                boxes_b.append(node)
                seen.add(node)
                nxt = None
                for x in self.box_edge_ids[node]:
                    if und[x] and x != eid:
                        others = [m for m in self.edge_box_ids(x) if m != node]
                        nxt = (others[0] if others else -1, x)
                        break
                node, eid = nxt
                eids_b.append(eid)
            chains.append(
                (tuple(boxes_b[::-1] + boxes), tuple(eids_b[::-1] + eids))
            )
        return chains, cycles

    def replay_matches(self, s: GameState) -> bool:
        """Check this board's log replays through the immutable engine."""
        from .board import apply_move

        st = s
        for ei in self.log:
            st, _ = apply_move(st, self.edge_at(ei))
        return (
            st.score_a == self.scores[0]
            and st.score_b == self.scores[1]
        )
