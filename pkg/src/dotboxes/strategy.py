"""Prescribed policies for both players, match simulation, and deviation
probes.

Trudy (player A, to move first on compiled instances) sets variables true by
opening the designated side chain; Fred answers by eating the opened chain
whole and spending a non-loony pair elsewhere, keeping the live pair count
even at the start of every Trudy turn.  Once no pairs remain the game is a
loony endgame with Fred in control: Trudy opens chains first and her chosen
disjoint cycles last, Fred claims all but two boxes of a chain (four of a
cycle) and declines the rest, except on the final structure.

Variable picks on both sides maximize the picker's side of the endgame cycle
count (an exact minimax over the remaining pick game), which subsumes the
win/lose value of the variable game: Trudy's margin is +1 exactly when no
clause is left uncovered.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache

from .board import Edge, GameState
from .compiler import CompiledInstance
from .fastboard import FastBoard
from .formula import Formula


class PolicyError(RuntimeError):
    """A policy returned an illegal move."""


# ---------------------------------------------------------------------------
# assignment payoff: effective satisfied-clause count after optimal flips


def _min_flips(formula: Formula, trues: frozenset[int]) -> int:
    """Minimum number of signal flips Trudy needs so every clause reads
    true: a flipped false variable feeds all its clauses at the cost of one
    cycle; per-clause wire or or-gadget flips are never a net gain."""
    unsat = [cl for cl in formula.clauses if not (cl & trues)]
    if not unsat:
        return 0
    candidates = sorted({v for cl in unsat for v in cl})
    best = len(unsat)  # flip one wire per unsat clause
    for mask in range(1, 1 << len(candidates)):
        chosen = {candidates[i] for i in range(len(candidates)) if mask >> i & 1}
        uncovered = sum(1 for cl in unsat if not (cl & chosen))
        best = min(best, len(chosen) + uncovered)
    return best


def assignment_payoff(formula: Formula, trues: frozenset[int]) -> int:
    """Trudy's clause-cycle total for a final assignment."""
    return formula.m - _min_flips(formula, trues)


def pick_variable(
    formula: Formula,
    trues: frozenset[int],
    falses: frozenset[int],
    mover_is_trudy: bool,
) -> int:
    """Exact minimax pick over the remaining variables; Trudy maximizes the
    assignment payoff, Fred minimizes.  Lowest-index optimal pick."""

    n = formula.n

    def free(t, fa):
        return [v for v in range(1, n + 1) if v not in t and v not in fa]

    @lru_cache(maxsize=None)
    def value(t: frozenset, fa: frozenset, trudy: bool) -> int:
        rest = free(t, fa)
        if not rest:
            return assignment_payoff(formula, t)
        if trudy:
            return max(value(t | {v}, fa, False) for v in rest)
        return min(value(t, fa | {v}, True) for v in rest)

    rest = free(trues, falses)
    if not rest:
        raise PolicyError("no variables left to pick")
    if mover_is_trudy:
        best = max(value(trues | {v}, falses, False) for v in rest)
        for v in rest:
            if value(trues | {v}, falses, False) == best:
                return v
    best = min(value(trues, falses | {v}, True) for v in rest)
    for v in rest:
        if value(trues, falses | {v}, True) == best:
            return v
    raise AssertionError


# ---------------------------------------------------------------------------
# board-derived game phase facts


class _Gadgetry:
    """Pre-resolved edge/box ids for one compiled instance."""

    def __init__(self, inst: CompiledInstance, fb: FastBoard):
        ann = inst.annotations
        self.ann = ann
        self.formula = inst.plan.formula
        self.vars = sorted(ann.nonloony)
        self.pair_edges = {
            v: tuple(fb.edge_id(e) for e in ann.nonloony[v]) for v in self.vars
        }
        self.pair_box = {
            v: fb.box_id(ann.pair_box[v]) for v in self.vars
        }
        self.set_true_edge = {
            v: fb.edge_id(ann.set_true_edge[v]) for v in self.vars
        }
        self.pair_junctions = {}
        for v in self.vars:
            y1, y2 = ann.nonloony[v]
            r = self.pair_box[v]
            js = set()
            for e in (y1, y2):
                for bi in fb.edge_box_ids(fb.edge_id(e)):
                    if bi != r:
                        js.add(bi)
            self.pair_junctions[v] = tuple(js)
        self.selection_cache: dict = {}

    def live_pairs(self, fb: FastBoard) -> list[int]:
        out = []
        for v in self.vars:
            e1, e2 = self.pair_edges[v]
            if not (fb.undrawn[e1] and fb.undrawn[e2]):
                continue
            if fb.deg[self.pair_box[v]] != 2:
                continue
            if all(fb.deg[j] >= 3 for j in self.pair_junctions[v]):
                out.append(v)
        return out

    def assignment(self, fb: FastBoard) -> dict[int, bool]:
        """True for variables whose pair is still intact (set true or not yet
        set), False once the pair edges were spent."""
        out = {}
        for v in self.vars:
            e1, e2 = self.pair_edges[v]
            out[v] = bool(fb.undrawn[e1] and fb.undrawn[e2])
        return out


def endgame_selection(inst: CompiledInstance, gad: _Gadgetry, fb: FastBoard):
    """Trudy's disjoint-cycle choice as box loops of box ids, derived from
    the annotations and the achieved assignment (with variable-level flips
    when they buy uncovered clauses); only loops intact on the actual board
    are kept, so the policy stays total after deviations."""
    assign = gad.assignment(fb)
    key = tuple(sorted(assign.items()))
    cached = gad.selection_cache.get(key)
    if cached is None:
        cached = _raw_selection(inst, gad, fb, assign)
        gad.selection_cache[key] = cached
    kept = []
    used: set[int] = set()
    for ids, edge_ids in cached:
        if not all(fb.undrawn[ei] for ei in edge_ids):
            continue
        if any(i in used for i in ids):
            continue
        used.update(ids)
        kept.append(ids)
    return kept


def _raw_selection(inst: CompiledInstance, gad: _Gadgetry, fb: FastBoard, assign):
    ann = inst.annotations
    formula = gad.formula
    trues = frozenset(v for v, val in assign.items() if val)
    # variable-level flips: choose the subset realizing the payoff
    unsat = [cl for cl in formula.clauses if not (cl & trues)]
    flip: set[int] = set()
    if unsat:
        candidates = sorted(
            {v for cl in unsat for v in cl if not assign[v]}
        )
        best = (len(unsat), 0, frozenset())
        for mask in range(1 << len(candidates)):
            chosen = frozenset(
                candidates[i] for i in range(len(candidates)) if mask >> i & 1
            )
            uncovered = sum(1 for cl in unsat if not (cl & chosen))
            key = (uncovered + len(chosen), len(chosen), chosen)
            if key < best:
                best = key
        flip = set(best[2])
    out_val = {v: assign[v] or v in flip for v in gad.vars}

    loops: list[tuple] = []
    for v in gad.vars:
        cyc = ann.var_cycles[v]
        if assign[v]:
            loops += [cyc["C1"], cyc["C3"]]
        elif v in flip:
            loops += [cyc["C12"]]
        else:
            loops += [cyc["C12"], cyc["C4"]]

    wire_val: dict[str, bool] = {}
    for wid, src in ann.wire_source.items():
        if src[0] == "var":
            wire_val[wid] = out_val[src[1]]
    for gid in sorted(ann.or_cycles):
        w1, w2 = ann.or_inputs[gid]
        v1, v2 = wire_val[w1], wire_val[w2]
        c = ann.or_cycles[gid]
        if v1:
            loops.append(c["in_a"])
        elif v2:
            loops.append(c["in_b"])
        else:
            loops.append(c["out_c"])
        out_wid = ann.or_output.get(gid)
        if out_wid is not None:
            wire_val[out_wid] = v1 or v2

    for wid, val in wire_val.items():
        for seg in ann.segments_of_wire.get(wid, ()):
            rings = ann.segment_rings[seg]
            start = 0 if val else 1
            for i in range(start, len(rings), 2):
                loops.append(rings[i])

    petal_for = {
        (True, True): "petal_nw",
        (True, False): "petal_sw",
        (False, True): "petal_ne",
        (False, False): "petal_se",
    }
    for gid, lines in ann.crossover_lines.items():
        c = ann.crossover_cycles[gid]
        v1 = wire_val[lines["line1"]]
        v2 = wire_val[lines["line2"]]
        loops += (
            [c["w_port"], c["e_mid"]] if v1 else [c["w_mid"], c["e_port"]]
        )
        loops += (
            [c["n_port"], c["s_mid"]] if v2 else [c["n_mid"], c["s_port"]]
        )
        loops.append(c[petal_for[(v1, v2)]])

    for j in range(formula.m):
        if wire_val[ann.clause_wire[j]]:
            loops.append(ann.clause_cycle[j])

    out = []
    for loop in loops:
        ids = tuple(fb.box_id(b) for b in loop)
        n = len(ids)
        edge_ids = tuple(
            _loop_edge_id(fb, ids[i], ids[(i + 1) % n]) for i in range(n)
        )
        out.append((ids, edge_ids))
    return out


def _loop_edge_id(fb: FastBoard, b1: int, b2: int) -> int:
    for ei in fb.box_edge_ids[b1]:
        if b2 in fb.edge_box_ids(ei):
            return ei
    raise PolicyError("loop boxes not adjacent")


# ---------------------------------------------------------------------------
# policies


@dataclass
class Policy:
    name: str
    choose: object  # callable (FastBoard) -> edge id


def trudy_policy(inst: CompiledInstance, plan=None, gad: "_Gadgetry" = None) -> Policy:
    """Prescribed Trudy.  `plan` is an explicit set of variables to set true
    (filled up with minimax picks when exhausted) or None for pure minimax.
    Passing a shared _Gadgetry reuses its raw-selection cache across many
    playouts of the same instance; the opening worklist is per policy (it
    depends on the actual board, which deviations can reshape)."""
    gad_holder = {"g": gad}
    worklists: dict = {}
    mem = {"at": -1, "plan": []}

    def choose(fb: FastBoard) -> int:
        gad = gad_holder.get("g")
        if gad is None:
            gad = _Gadgetry(inst, fb)
            gad_holder["g"] = gad
        if mem["at"] == len(fb.log) and mem["plan"]:
            ei = mem["plan"].pop(0)
            if fb.undrawn[ei]:
                mem["at"] = len(fb.log) + 1
                return ei
            mem["plan"] = []
        live = gad.live_pairs(fb)
        if fb.deg1:
            if not live:
                return fb.first_capture()  # endgame opener: take everything
            # variable phase: the pair box is claimed outright (a one-box
            # cascade), but an opened long structure is answered by taking
            # control: all but two (four) boxes, then the declining move
            eat = _plan_eating(fb, take_all=False)
            if not eat:
                return fb.first_capture()
            mem["plan"] = eat[1:]
            mem["at"] = len(fb.log) + 1
            return eat[0]
        if live:
            assign = gad.assignment(fb)
            trues = frozenset(
                v for v in gad.vars if assign[v] and v not in live
            )
            falses = frozenset(v for v in gad.vars if not assign[v])
            planned = [v for v in sorted(plan or ()) if v in live]
            if planned:
                v = planned[0]
            else:
                v = pick_variable(gad.formula, trues, falses, True)
                if v not in live:
                    v = live[0]
            return gad.set_true_edge[v]
        return _open_next(inst, gad, fb, worklists)

    return Policy(name="trudy-prescribed", choose=choose)


def _open_next(inst, gad, fb: FastBoard, worklists: dict) -> int:
    """Trudy's next opening: all chains outside the selection first, then
    the selected cycles.  The structure inventory is computed once when the
    loony endgame begins (junctions in this construction always resolve onto
    a cycle, so chains never merge and the initial list stays exhaustive);
    entries are skipped once touched, and a full recomputation backstops any
    off-script position."""
    key = tuple(sorted(gad.assignment(fb).items()))
    wl = worklists.get(key)
    if wl is None:
        selection = endgame_selection(inst, gad, fb)
        sel_boxes = set()
        for loop in selection:
            sel_boxes.update(loop)
        chains, cycles = fb.structures()
        entries = []
        for ch in sorted(
            (c for c in chains if not (set(c[0]) & sel_boxes)),
            key=lambda c: min(c[0]),
        ):
            entries.append(("chain", ch[0], ch[1]))
        sel_sets = {frozenset(l) for l in selection}
        for cy in sorted(
            (c for c in cycles if frozenset(c[0]) not in sel_sets),
            key=lambda c: min(c[0]),
        ):
            entries.append(("chain", cy[0], cy[1]))  # stray cycle: open early
        for loop in sorted(selection, key=min):
            n = len(loop)
            eids = tuple(
                _loop_edge_id(fb, loop[i], loop[(i + 1) % n]) for i in range(n)
            )
            entries.append(("cycle", loop, eids))
        wl = entries
        worklists[key] = wl
    for kind, boxes, eids in wl:
        if not all(fb.undrawn[ei] for ei in eids):
            continue
        if kind == "cycle" and not all(fb.deg[b] == 2 for b in boxes):
            continue
        return min(eids)
    return _open_next_full(fb, endgame_selection(inst, gad, fb))


def _open_next_full(fb: FastBoard, selection) -> int:
    """Slow path for off-script positions: recompute the decomposition."""
    sel_boxes = set()
    for loop in selection:
        sel_boxes.update(loop)
    chains, cycles = fb.structures()
    openable = [ch for ch in chains if not (set(ch[0]) & sel_boxes)]
    if openable:
        target = min(openable, key=lambda ch: min(ch[0]))
        return min(target[1])
    sel_sets = [frozenset(l) for l in selection]
    nonsel = [cy for cy in cycles if frozenset(cy[0]) not in sel_sets]
    if nonsel:
        target = min(nonsel, key=lambda cy: min(cy[0]))
        return min(target[1])
    intact = [
        loop
        for loop in selection
        if all(fb.deg[b] == 2 for b in loop)
    ]
    if intact:
        loop = min(intact, key=min)
        n = len(loop)
        return min(
            _loop_edge_id(fb, loop[i], loop[(i + 1) % n]) for i in range(n)
        )
    # nothing structured left: play the lowest undrawn edge
    for ei in range(fb.edge_count):
        if fb.undrawn[ei]:
            return ei
    raise PolicyError("no moves left")


def _plan_eating(fb: FastBoard, take_all: bool) -> list[int]:
    """The controller's whole eating run, planned in one pass: canonical
    captures down to the remnant, then the declining edge (all of it when
    `take_all` or when this is the board's final structure)."""
    eaten, drawn = fb.greedy_cascade()
    incident = set()
    for bi in eaten:
        for ei in fb.box_edge_ids[bi]:
            if fb.undrawn[ei]:
                incident.add(ei)
    target = 2 if len(incident) >= len(eaten) else 4
    finishes_board = len(drawn) == fb.remaining
    local = dict()
    deg1 = set(fb.deg1)

    def degree(bi):
        return local.get(bi, fb.deg[bi])

    undrawn_local = set()
    plan = []
    left = set(eaten)

    def capture_edge_of(bi):
        for ei in fb.box_edge_ids[bi]:
            if fb.undrawn[ei] and ei not in undrawn_local:
                return ei
        return None

    while deg1:
        if (
            not take_all
            and not finishes_board
            and len(left) == target
        ):
            # decline: the remnant edge that closes no box
            for ei in sorted(incident - undrawn_local):
                if all(degree(bi) != 1 for bi in fb.edge_box_ids(ei)):
                    plan.append(ei)
                    return plan
            break  # no declining edge; fall through to taking the rest
        ei = min(capture_edge_of(bi) for bi in deg1)
        plan.append(ei)
        undrawn_local.add(ei)
        for bi in fb.edge_box_ids(ei):
            local[bi] = degree(bi) - 1
            if local[bi] == 0:
                deg1.discard(bi)
                left.discard(bi)
            elif local[bi] == 1:
                deg1.add(bi)
    return plan


def fred_policy(inst: CompiledInstance, gad: "_Gadgetry" = None) -> Policy:
    gad_holder = {"g": gad}
    mem = {"at": -1, "plan": []}

    def choose(fb: FastBoard) -> int:
        gad = gad_holder.get("g")
        if gad is None:
            gad = _Gadgetry(inst, fb)
            gad_holder["g"] = gad
        if mem["at"] == len(fb.log) and mem["plan"]:
            ei = mem["plan"].pop(0)
            if fb.undrawn[ei]:
                mem["at"] = len(fb.log) + 1
                return ei
            mem["plan"] = []
        live = gad.live_pairs(fb)
        if fb.deg1:
            plan = _plan_eating(fb, take_all=len(live) % 2 == 1)
            mem["plan"] = plan[1:]
            mem["at"] = len(fb.log) + 1
            return plan[0]
        if live:
            assign = gad.assignment(fb)
            trues = frozenset(
                v for v in gad.vars if assign[v] and v not in live
            )
            falses = frozenset(v for v in gad.vars if not assign[v])
            v = pick_variable(gad.formula, trues, falses, False)
            if v not in live:
                v = live[0]
            return gad.pair_edges[v][0]
        # off-script: open the cheapest structure
        chains, cycles = fb.structures()
        if chains:
            target = min(chains, key=lambda ch: (len(ch[0]), min(ch[0])))
            return min(target[1])
        if cycles:
            target = min(cycles, key=lambda cy: (len(cy[0]), min(cy[0])))
            return min(target[1])
        for ei in range(fb.edge_count):
            if fb.undrawn[ei]:
                return ei
        raise PolicyError("no moves left")

    return Policy(name="fred-prescribed", choose=choose)


# ---------------------------------------------------------------------------
# matches


@dataclass
class MatchResult:
    score_a: int
    score_b: int
    winner: str
    move_log: list[Edge]
    phase_boundary: int  # move index at which the loony endgame began
    assignment: dict[int, bool]
    parity_ok: bool


def play_match(
    inst: CompiledInstance,
    p_trudy: Policy = None,
    p_fred: Policy = None,
    check_parity: bool = True,
    replay: bool = False,
) -> MatchResult:
    p_trudy = p_trudy or trudy_policy(inst)
    p_fred = p_fred or fred_policy(inst)
    fb = FastBoard(inst.state)
    gad = _Gadgetry(inst, fb)
    boundary = None
    assignment = None
    parity_ok = True
    while fb.remaining:
        live = gad.live_pairs(fb)
        if fb.to_move == 0 and check_parity and not fb.deg1:
            if len(live) % 2 == 1:
                parity_ok = False
        if boundary is None and not live and not fb.deg1:
            boundary = len(fb.log)
            assignment = gad.assignment(fb)
        mover = p_trudy if fb.to_move == 0 else p_fred
        ei = mover.choose(fb)
        if not fb.undrawn[ei]:
            raise PolicyError(f"{mover.name} returned a drawn edge")
        fb.play(ei)
    if boundary is None:
        boundary = len(fb.log)
        assignment = gad.assignment(fb)
    if replay and not fb.replay_matches(inst.state):
        raise PolicyError("move log failed engine replay")
    a, bscore = fb.scores
    winner = "A" if a > bscore else ("B" if bscore > a else "draw")
    return MatchResult(
        score_a=a,
        score_b=bscore,
        winner=winner,
        move_log=[fb.edge_at(i) for i in fb.log],
        phase_boundary=boundary,
        assignment=assignment,
        parity_ok=parity_ok,
    )


# ---------------------------------------------------------------------------
# deviation probes


@dataclass
class ProbeReport:
    deviator: str
    baseline: int
    states_probed: int
    alternatives_tried: int
    improvements: list  # (move index, Edge, score gain)

    @property
    def max_gain(self) -> int:
        return max((g for _, _, g in self.improvements), default=0)


def _finish(inst, fb, p_trudy, p_fred) -> tuple[int, int]:
    while fb.remaining:
        mover = p_trudy if fb.to_move == 0 else p_fred
        fb.play(mover.choose(fb))
    return fb.scores[0], fb.scores[1]


def representative_moves(fb: FastBoard) -> list[int]:
    """Deterministic deviation candidates at a state: every capture, every
    edge of every short structure (where middle and end openings genuinely
    differ), and the canonical edge of each long chain or cycle (the
    controller's all-but-two reply makes openings of one long structure
    interchangeable)."""
    out = set(fb.capture_moves())
    chains, cycles = fb.structures()
    for boxes, eids in chains + cycles:
        es = sorted(eids)
        if len(boxes) <= 3:
            out.update(es)
        else:
            out.add(es[0])
    return sorted(out)


_PROBE_CTX: dict = {}


def _probe_worker(task):
    """Run all alternatives of one trajectory state; forked workers inherit
    the instance through _PROBE_CTX."""
    inst = _PROBE_CTX["inst"]
    side = _PROBE_CTX["side"]
    baseline = _PROBE_CTX["baseline"]
    step, prefix, alts = task
    base_fb = FastBoard(inst.state)
    for ei in prefix:
        base_fb.play(ei)
    shared = _Gadgetry(inst, base_fb)
    out = []
    for alt in alts:
        trial = base_fb.clone()
        trial.play(alt)
        a, b = _finish(
            inst,
            trial,
            trudy_policy(inst, gad=shared),
            fred_policy(inst, gad=shared),
        )
        mine = a if side == 0 else b
        if mine > baseline:
            out.append((step, alt, mine - baseline))
    return len(alts), out


def deviation_probe(
    inst: CompiledInstance,
    deviator: str = "Fred",
    depth: int = 1,
    samples: int = 0,
    seed: int = 7,
    alternatives: str = "representative",
    workers: int = None,
    max_states: int = None,
) -> ProbeReport:
    """Try single-move deviations at every prescribed-trajectory state where
    the deviator moves (prescribed play resumes afterwards), plus `samples`
    random multi-step deviation playouts; report any deviation that strictly
    improves the deviator's final score.

    With alternatives="all" every undrawn edge is tried at every state; the
    default probes captures, short structures whole, and three edges per
    long structure, which covers the distinct opening shapes."""
    import multiprocessing as mp
    import os

    side = 0 if deviator.lower().startswith("t") else 1
    base = play_match(inst, check_parity=False)
    baseline = base.score_a if side == 0 else base.score_b
    improvements = []
    states = 0
    tried = 0

    # collect one task per probed trajectory state
    tasks = []
    fb = FastBoard(inst.state)
    prev_mover = None
    for step, edge in enumerate(base.move_log):
        prescribed = fb.edge_id(edge)
        turn_start = prev_mover != fb.to_move
        prev_mover = fb.to_move
        prescribed_captures = any(
            fb.deg[bi] == 1 for bi in fb.edge_box_ids(prescribed)
        )
        decision_state = turn_start or not prescribed_captures
        if (
            fb.to_move == side
            and (decision_state or alternatives == "all")
            and (max_states is None or states < max_states)
        ):
            states += 1
            if alternatives == "all":
                alts = [
                    ei for ei in range(fb.edge_count) if fb.undrawn[ei]
                ]
            else:
                alts = representative_moves(fb)
            alts = [a for a in alts if a != prescribed]
            tasks.append((step, tuple(fb.log), alts))
        fb.play(prescribed)

    _PROBE_CTX.update(inst=inst, side=side, baseline=baseline)
    if workers is None:
        workers = min(2, os.cpu_count() or 1)
    if workers > 1 and len(tasks) > 8 and hasattr(os, "fork"):
        with mp.get_context("fork").Pool(workers) as pool:
            for n_alts, found in pool.imap_unordered(_probe_worker, tasks):
                tried += n_alts
                improvements.extend(found)
    else:
        for task in tasks:
            n_alts, found = _probe_worker(task)
            tried += n_alts
            improvements.extend(found)
    improvements = [
        (step, fb.edge_at(alt) if isinstance(alt, int) else alt, gain)
        for step, alt, gain in sorted(improvements)
    ]

    rng = random.Random(seed)
    shared = _Gadgetry(inst, FastBoard(inst.state))
    for _ in range(samples):
        trial = FastBoard(inst.state)
        pt = trudy_policy(inst, gad=shared)
        pf = fred_policy(inst, gad=shared)
        deviations_left = depth
        while trial.remaining:
            mover = pt if trial.to_move == 0 else pf
            if (
                trial.to_move == side
                and deviations_left > 0
                and rng.random() < 0.25
            ):
                options = representative_moves(trial)
                trial.play(rng.choice(options))
                deviations_left -= 1
            else:
                trial.play(mover.choose(trial))
        mine = trial.scores[0] if side == 0 else trial.scores[1]
        tried += 1
        if mine > baseline:
            improvements.append((-1, None, mine - baseline))
    return ProbeReport(
        deviator=deviator,
        baseline=baseline,
        states_probed=states,
        alternatives_tried=tried,
        improvements=improvements,
    )
