"""Loony-endgame theory: endgame stats, the controlled value
4c + T - 2k - 4, and a deterministic controlled-play simulator.

The simulator plays out the standard script: the player to move (the opener,
not in control) opens every structure outside the chosen disjoint-cycle set
first, then the chosen cycles; the controller claims all but two boxes of a
chain (four of a cycle) and declines the rest, except on the final structure,
which is taken whole.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import (
    Box,
    Edge,
    GameState,
    apply_move,
    available_moves,
    box_edges,
    canonical_key,
    edge_boxes,
)
from .cycles import (
    DEFAULT_CAP,
    CycleSelection,
    enumerate_cycles,
    max_disjoint_cycles,
)
from .dual import OUTER, build_dual, decompose, is_loony_endgame


class EndgameError(ValueError):
    """Precondition violation in endgame analysis."""


@dataclass(frozen=True)
class EndgameStats:
    c: int  # maximum number of vertex-disjoint cycles
    k: int  # boxes of degree > 2
    T: int  # total degree of those boxes
    ell: int  # chain openings in the simulated controlled plan


def junction_stats(s: GameState) -> tuple[int, int]:
    """(k, T) over boxes of degree > 2."""
    g = build_dual(s)
    k = 0
    t = 0
    for b in s.boxes():
        d = g.degree.get(b, 0)
        if d > 2:
            k += 1
            t += d
    return k, t


def has_outer_chains(s: GameState) -> bool:
    g = build_dual(s)
    return g.degree[OUTER] > 0


def compute_stats(s: GameState, cap: int = DEFAULT_CAP) -> tuple[EndgameStats, CycleSelection]:
    c, sel = max_disjoint_cycles(build_dual(s), cap)
    k, t = junction_stats(s)
    _, _, log, ell = _simulate(s, sel)
    return EndgameStats(c=c, k=k, T=t, ell=ell), sel


def controlled_value(s: GameState, cap: int = DEFAULT_CAP) -> int:
    """Maximum boxes the player to move (not in control) can claim.

    Junction-terminated positions use 4c + T - 2k - 4 directly; positions
    with chains ending at the outer face use the primitive count
    4c + 2*ell - 4 with ell taken from the simulated plan.
    """
    if not is_loony_endgame(s):
        raise EndgameError("not a loony endgame")
    g = build_dual(s)
    c, sel = max_disjoint_cycles(g, cap)
    if c == 0:
        raise EndgameError(
            "no cycle in configuration; controlled value requires a final cycle"
        )
    if has_outer_chains(s):
        _, _, _, ell = _simulate(s, sel)
        return 4 * c + 2 * ell - 4
    k, t = junction_stats(s)
    return 4 * c + t - 2 * k - 4


def chain_final_value(stats: EndgameStats) -> int:
    """Diagnostic: opener boxes when the last structure opened is a chain,
    4c + 2*ell - 2.  Valid for configurations without cycles (c = 0) where
    the controlled-value formula does not apply."""
    return 4 * stats.c + 2 * stats.ell - 2


def simulate_controlled_play(
    s: GameState, sel: CycleSelection
) -> tuple[int, int, list[Edge]]:
    """Deterministic controlled playout; returns (opener boxes, controller
    boxes, move log).  The mover in `s` is the opener."""
    opener_boxes, controller_boxes, log, _ = _simulate(s, sel)
    return opener_boxes, controller_boxes, log


def _simulate(
    s: GameState, sel: CycleSelection
) -> tuple[int, int, list[Edge], int]:
    if not is_loony_endgame(s):
        raise EndgameError("not a loony endgame")
    sel_box_sets = [frozenset(c.boxes) for c in sel.cycles]
    for i, a in enumerate(sel_box_sets):
        for b in sel_box_sets[i + 1 :]:
            if a & b:
                raise EndgameError("selected cycles are not disjoint")
    for c in sel.cycles:
        if any(e in s.drawn for e in c.edges):
            raise EndgameError("selection inconsistent with position")
    all_sel_boxes = frozenset().union(*sel_box_sets) if sel_box_sets else frozenset()
    opener = s.to_move
    state = s
    log: list[Edge] = []
    ell = 0

    def play(e: Edge) -> None:
        nonlocal state
        state, _ = apply_move(state, e)
        log.append(e)

    while True:
        g = build_dual(state)
        d = decompose(g)
        openable_chains = [
            ch for ch in d.chains if not (set(ch.boxes) & all_sel_boxes)
        ]
        nonsel_cycles = [
            cy
            for cy in d.cycles
            if frozenset(cy.boxes) not in sel_box_sets
        ]
        remaining_sel = [
            cy for cy in sel.cycles if all(e not in state.drawn for e in cy.edges)
        ]
        if openable_chains:
            target = min(openable_chains, key=lambda ch: min(ch.boxes))
            opening = min(target.edges, key=canonical_key)
            ell += 1
        elif nonsel_cycles:
            target = min(nonsel_cycles, key=lambda cy: cy.boxes[0])
            opening = min(target.edges, key=canonical_key)
        elif remaining_sel:
            target = min(remaining_sel, key=lambda cy: cy.boxes)
            pure = all(
                g.degree.get(b, 0) == 2 for b in target.boxes
            )
            if not pure:
                raise EndgameError(
                    "selection inconsistent: selected cycle still blocked"
                )
            opening = min(target.edges, key=canonical_key)
        else:
            break
        assert state.to_move == opener
        play(opening)
        _controller_eat(play, lambda: state)
        # opener claims whatever the controller declined
        while True:
            cap_edge = _first_capture(state)
            if cap_edge is None:
                break
            assert state.to_move == opener
            play(cap_edge)

    if available_moves(state):
        raise EndgameError("simulation stalled before the board was finished")
    o = state.score_a if opener == "A" else state.score_b
    c = state.score_b if opener == "A" else state.score_a
    o -= s.score_a if opener == "A" else s.score_b
    c -= s.score_b if opener == "A" else s.score_a
    return o, c, log, ell


def _first_capture(state: GameState):
    """Canonical-first edge that completes at least one box, or None."""
    best = None
    for b in sorted(state.boxes()):
        undrawn = [e for e in box_edges(b) if e not in state.drawn]
        if len(undrawn) == 1:
            e = undrawn[0]
            if best is None or canonical_key(e) < canonical_key(best):
                best = e
    return best


def _greedy_cascade(state: GameState) -> tuple[set[Box], set[Edge]]:
    """Boxes eaten and edges drawn if all available captures are taken
    greedily to exhaustion."""
    drawn = set(state.drawn)
    eaten: set[Box] = set()
    edges: set[Edge] = set()

    def undrawn_of(b: Box):
        return [e for e in box_edges(b) if e not in drawn]

    frontier = [b for b in state.boxes() if len(undrawn_of(b)) == 1]
    while frontier:
        b = frontier.pop()
        u = undrawn_of(b)
        if len(u) != 1 or b in eaten:
            continue
        e = u[0]
        drawn.add(e)
        edges.add(e)
        for nb in edge_boxes(e, state.width, state.height):
            if len(undrawn_of(nb)) == 0 and nb not in eaten:
                eaten.add(nb)
            elif len(undrawn_of(nb)) == 1:
                frontier.append(nb)
    return eaten, edges


def _controller_eat(play, get_state) -> None:
    """Controller's reply to an opening: eat greedily, then either decline
    (leave 2 of a chain, 4 of a cycle) or take everything if this is the
    last structure."""
    while True:
        state = get_state()
        eaten, cascade_edges = _greedy_cascade(state)
        if not eaten:
            return
        total_undrawn = len(available_moves(state))
        takes_all_board = len(cascade_edges) == total_undrawn
        incident: set[Edge] = set()
        for b in eaten:
            for e in box_edges(b):
                if e not in state.drawn:
                    incident.add(e)
        is_chain_remnant = len(incident) >= len(eaten)
        target = 2 if is_chain_remnant else 4
        if takes_all_board or len(eaten) < target:
            # final structure (or too small to decline): take everything
            while True:
                e = _first_capture(get_state())
                if e is None:
                    return
                play(e)
            return
        if len(eaten) == target:
            # decline: play the remnant edge that captures nothing
            decline = None
            st = get_state()
            for e in sorted(incident, key=canonical_key):
                would_capture = False
                for b in edge_boxes(e, st.width, st.height):
                    undrawn = [x for x in box_edges(b) if x not in st.drawn]
                    if undrawn == [e]:
                        would_capture = True
                        break
                if not would_capture:
                    decline = e
                    break
            if decline is None:
                # degenerate remnant; take everything available
                e = _first_capture(get_state())
                if e is None:
                    return
                play(e)
                continue
            play(decline)
            return
        # still above target: take one box and re-evaluate
        e = _first_capture(get_state())
        if e is None:
            return
        play(e)
