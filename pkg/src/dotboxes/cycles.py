"""Simple-cycle enumeration over box nodes and exact maximum disjoint-cycle
selection (branch and bound over the enumerated list)."""

from __future__ import annotations

from dataclasses import dataclass

from .board import Box
from .dual import OUTER, Cycle, DualGraph, _canon_cycle


class CycleCapExceeded(RuntimeError):
    """Cycle enumeration hit the configured cap; instance too large for
    exact analysis."""


DEFAULT_CAP = 100_000


def enumerate_cycles(g: DualGraph, cap: int = DEFAULT_CAP) -> list[Cycle]:
    """All simple cycles over box nodes (OUTER excluded), each reported once
    up to rotation and reflection, in canonical order."""
    if cap < 1:
        raise ValueError("cap must be positive")
    box_adj: dict = {}
    for node, lst in g.adj.items():
        if node == OUTER:
            continue
        box_adj[node] = [(m, e) for m, e in lst if m != OUTER]
    cycles: list[Cycle] = []
    count = 0
    for v in sorted(box_adj):
        path = [v]
        path_edges = []
        on_path = {v}

        def dfs(u):
            nonlocal count
            for m, e in box_adj[u]:
                if m != v and (m < v or m in on_path):
                    continue
                if m == v:
                    if len(path) >= 3 and path[1] < path[-1]:
                        count += 1
                        if count > cap:
                            raise CycleCapExceeded(
                                f"more than {cap} simple cycles"
                            )
                        cycles.append(
                            _canon_cycle(list(path), path_edges + [e])
                        )
                    continue
                path.append(m)
                path_edges.append(e)
                on_path.add(m)
                dfs(m)
                path.pop()
                path_edges.pop()
                on_path.remove(m)

        dfs(v)
    cycles.sort(key=lambda c: c.boxes)
    return cycles


@dataclass(frozen=True)
class CycleSelection:
    cycles: tuple[Cycle, ...]

    def box_set(self) -> frozenset[Box]:
        out: set[Box] = set()
        for c in self.cycles:
            out.update(c.boxes)
        return frozenset(out)


def max_disjoint_from_list(cycles: list[Cycle]) -> tuple[int, tuple[int, ...]]:
    """Exact maximum set of pairwise box-disjoint cycles from an explicit
    list; returns (count, chosen indices).  Deterministic: first maximum
    found when branching in canonical order, include-branch first."""
    n = len(cycles)
    box_sets = [frozenset(c.boxes) for c in cycles]
    conflicts: list[set[int]] = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if box_sets[i] & box_sets[j]:
                conflicts[i].add(j)
                conflicts[j].add(i)

    def solve(cands: frozenset[int]) -> tuple[int, tuple[int, ...]]:
        if not cands:
            return 0, ()
        # peel off vertices with no conflict among candidates: always take
        free = [i for i in cands if not (conflicts[i] & cands)]
        if free:
            rest = cands - set(free)
            cnt, sel = solve(rest)
            return cnt + len(free), tuple(sorted(sel + tuple(free)))
        # split into connected conflict components
        comp = _component(next(iter(sorted(cands))), cands, conflicts)
        if len(comp) < len(cands):
            c1, s1 = solve(frozenset(comp))
            c2, s2 = solve(cands - comp)
            return c1 + c2, tuple(sorted(s1 + s2))
        # branch on the lowest-index candidate
        pivot = min(cands)
        with_cnt, with_sel = solve(cands - {pivot} - conflicts[pivot])
        without_cnt, without_sel = solve(cands - {pivot})
        if with_cnt + 1 >= without_cnt:
            return with_cnt + 1, tuple(sorted((pivot,) + with_sel))
        return without_cnt, without_sel

    import sys

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10_000))
    try:
        cnt, sel = solve(frozenset(range(n)))
    finally:
        sys.setrecursionlimit(old)
    return cnt, sel


def _component(start: int, cands: frozenset, conflicts: list[set[int]]) -> set:
    comp = {start}
    frontier = [start]
    while frontier:
        u = frontier.pop()
        for v in conflicts[u] & cands:
            if v not in comp:
                comp.add(v)
                frontier.append(v)
    return comp


def max_disjoint_cycles(
    g: DualGraph, cap: int = DEFAULT_CAP
) -> tuple[int, CycleSelection]:
    cycles = enumerate_cycles(g, cap)
    cnt, sel = max_disjoint_from_list(cycles)
    return cnt, CycleSelection(tuple(cycles[i] for i in sel))
