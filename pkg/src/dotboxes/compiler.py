"""Compile a positive CNF formula into a Dots & Boxes instance.

Layout: variable gadgets in a row at the top, one horizontal routing channel
per variable-to-clause wire below them, then per-clause or-tree columns, then
the clause rings.  Wires are chains of 6x6 rings descending from variable
fan-out ports, running along their channel, and descending into or-tree
input ports; where a channel crosses another wire's vertical descent a
crossover gadget is spliced into both wires.  Every wire segment between two
gadget interfaces keeps an even ring count (odd counts are fixed by merging
two straight rings into one double-length ring).

The crossover's two lines exit one pitch off-axis from where they enter
(line 1 drops a row southward for an eastbound wire, line 2 steps a column
westward), so vertical descents are planned bottom-up from their target
column and horizontal runs track their row as they pass through crossings.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .board import (
    Box,
    Edge,
    GameState,
    canonical_key,
    edge_universe,
    new_board,
)
from .dual import build_dual
from .formula import Formula, pad_even
from .gadgets import (
    CLAUSE,
    CROSSOVER,
    OR,
    OR_IN2_X,
    RING,
    PITCH,
    PORT_PITCH,
    VARIABLE,
    WIRE,
    GadgetTemplate,
    template,
)
from .geometry import (
    loop_edges,
    rect_ring,
    translate_boxes,
    translate_edge,
)


class LayoutError(RuntimeError):
    """The router could not realize the plan (collision or parity dead end)."""


# vertical geometry constants (box rows)
VAR_Y = 0
VAR_PORT_Y = 18  # C4 bottom row of every variable gadget
VAR_GAP = 39  # between variable gadgets: adjacent port columns 45 apart
CHANNEL_TOP = VAR_PORT_Y + 25  # first channel row (first crossover clears the ports)
CHANNEL_PITCH = 40  # room for one crossover above/below the run
OR_CLEAR = 20  # gap between the channel band and the or band
OR_V_PITCH = 35  # or gadget height 16 + connecting wire
OR_DIAG = 65  # eastward step per or-tree level


@dataclass
class PlacedGadget:
    gid: str
    kind: str
    template: GadgetTemplate
    offset: tuple[int, int]
    boxes: frozenset[Box]
    edges: frozenset[Edge]
    cycles: dict  # name -> box loop (board coords)
    meta: dict = field(default_factory=dict)


@dataclass
class WireSegment:
    gid: str
    rings: list  # box loops, ordered from source to sink
    src: str  # gadget id / port feeding this segment
    dst: str


@dataclass
class LayoutPlan:
    formula: Formula
    var_x: dict[int, int]
    fanout: dict[int, int]
    wires: list  # (wire id, var, clause index, literal position, src port, dst port)
    or_columns: dict  # clause index -> x origin
    channels: dict  # wire id -> channel row (None for straight drops)
    crossings: list  # (horizontal wire id, vertical wire id, column, row)


@dataclass
class CompiledInstance:
    state: GameState
    gadgets: dict[str, PlacedGadget]
    segments: list
    plan: LayoutPlan
    stats: dict
    handicap: tuple[int, int]
    annotations: "Annotations"


@dataclass
class Annotations:
    """Per-gadget cycles and variable move anchors, in board coordinates."""

    nonloony: dict[int, tuple[Edge, Edge]]  # variable -> pair edges
    set_true_edge: dict[int, Edge]
    set_false_edge: dict[int, Edge]
    pair_box: dict[int, Box]
    var_cycles: dict[int, dict]  # variable -> {C1, C2, C3, C4, C12 loops}
    segment_rings: dict[str, list]  # segment id -> ordered ring loops
    wire_of_segment: dict[str, str]
    segments_of_wire: dict[str, list]  # wire id -> ordered segment ids
    crossover_cycles: dict[str, dict]  # gid -> name -> loop
    crossover_lines: dict[str, dict]  # gid -> {line1: wire id, line2: wire id}
    or_cycles: dict[str, dict]  # gid -> {in_a, in_b, out_c}
    or_inputs: dict[str, tuple[str, str]]  # gid -> feeding wire ids
    or_output: dict[str, str]  # gid -> outgoing wire id
    clause_cycle: dict[int, tuple]  # clause index -> ring loop
    clause_wire: dict[int, str]  # clause index -> feeding wire id
    wire_source: dict[str, tuple]  # wire id -> ("var", v) | ("or", gid)
    wire_sink: dict[str, tuple]  # wire id -> ("or", gid, "in1"|"in2") | ("clause", j)


def plan_layout(f: Formula) -> LayoutPlan:
    """Static placement plan; f must already have an even variable count."""
    if f.n % 2 != 0:
        raise LayoutError("plan_layout expects a padded (even-n) formula")
    fanout = {v: 0 for v in range(1, f.n + 1)}
    for cl in f.clauses:
        for v in cl:
            fanout[v] += 1
    var_x = {}
    x = 0
    for v in range(1, f.n + 1):
        var_x[v] = x
        width = RING if fanout[v] <= 1 else RING + (fanout[v] - 1) * PORT_PITCH
        x += width + VAR_GAP
    # clause columns start right of the variable row to keep column sets
    # apart; or-trees grow diagonally so every input descent has its own
    # well-separated column
    or_columns = {}
    cx = x + 65
    for j, cl in enumerate(f.clauses):
        or_columns[j] = cx
        levels = max(len(cl) - 1, 0)
        cx += OR_DIAG * levels + 100
    wires = []
    used_port = {v: 0 for v in fanout}
    for j, cl in enumerate(f.clauses):
        for pos, v in enumerate(sorted(cl)):
            wid = f"w.v{v}.c{j}.p{pos}"
            wires.append((wid, v, j, pos, used_port[v]))
            used_port[v] += 1
    channels = {}
    row = CHANNEL_TOP
    # same-variable wires must stack with higher fan-out ports above, so a
    # wire's channel run never crosses a sibling's descent next door
    for wid, v, j, pos, port in sorted(
        wires, key=lambda w: (-w[4], w[2], w[3])
    ):
        channels[wid] = row
        row += CHANNEL_PITCH
    return LayoutPlan(
        formula=f,
        var_x=var_x,
        fanout=fanout,
        wires=wires,
        or_columns=or_columns,
        channels=channels,
        crossings=[],
    )


class _Builder:
    """Accumulates placed structures with overlap accounting."""

    def __init__(self):
        self.undrawn: set[Edge] = set()
        self.box_owner: dict[Box, str] = {}
        self.shared_ok: set[Box] = set()
        self.gadgets: dict[str, PlacedGadget] = {}
        self.segments: list[WireSegment] = []

    def claim_boxes(self, owner: str, boxes, share=()):
        share = set(share)
        for b in boxes:
            prev = self.box_owner.get(b)
            if prev is None:
                self.box_owner[b] = owner
            elif b in share or b in self.shared_ok:
                self.shared_ok.add(b)
            else:
                raise LayoutError(f"box collision at {b}: {prev} vs {owner}")
        self.shared_ok.update(share)

    def add_gadget(self, gid: str, t: GadgetTemplate, offset, share=()):
        from .gadgets import instantiate

        boxes, edges, _ = instantiate(t, offset)
        self.claim_boxes(gid, boxes, share)
        self.undrawn.update(edges)
        cyc = {
            name: translate_boxes(loop, *offset) for name, loop in t.cycles
        }
        pg = PlacedGadget(
            gid=gid,
            kind=t.kind,
            template=t,
            offset=offset,
            boxes=boxes,
            edges=edges,
            cycles=cyc,
        )
        self.gadgets[gid] = pg
        return pg

    def add_ring(self, owner: str, loop, share=()):
        self.claim_boxes(owner, loop, share)
        self.undrawn.update(loop_edges(list(loop)))


def _ring_at(x, y, w=RING, h=RING):
    return tuple(rect_ring(x, y, w, h))


def _merge_pair(positions):
    """Indices of two consecutive collinear 6x6 rings that can merge into a
    double ring for parity fixes, or None."""
    for i in range(len(positions) - 1):
        (x1, y1, w1, h1), (x2, y2, w2, h2) = positions[i], positions[i + 1]
        if (w1, h1) != (RING, RING) or (w2, h2) != (RING, RING):
            continue
        if x1 == x2 and abs(y2 - y1) == PITCH:
            return i, "v"
        if y1 == y2 and abs(x2 - x1) == PITCH:
            return i, "h"
    return None


def _merge_two(p1, p2):
    (x1, y1, w1, h1), (x2, y2, w2, h2) = p1, p2
    if x1 == x2:
        return (x1, min(y1, y2), RING, RING + PITCH)
    return (min(x1, x2), min(y1, y2), RING + PITCH, RING)


def _merge_corners(positions) -> list:
    """Merge every turning ring with its successor.  Without this, the rings
    immediately before and after a turn touch diagonally at one box, which
    would make alternate rings of the chain collide."""
    if len(positions) < 3:
        return list(positions)

    def step(a, b):
        return (b[0] - a[0], b[1] - a[1])

    corner = set()
    for i in range(1, len(positions) - 1):
        if step(positions[i - 1], positions[i]) != step(
            positions[i], positions[i + 1]
        ):
            corner.add(i)
    out = []
    i = 0
    while i < len(positions):
        if i in corner and i + 1 < len(positions):
            out.append(_merge_two(positions[i], positions[i + 1]))
            i += 2
        else:
            out.append(positions[i])
            i += 1
    return out


def _build_segment_rings(positions) -> list:
    """Turn ring origin rectangles into loops: corners merge with their
    successors, and the total count is forced even (a wire is 2k cycles) by
    merging one straight pair if needed."""
    positions = _merge_corners(list(positions))
    if len(positions) % 2 == 1:
        m = _merge_pair(positions)
        if m is None:
            raise LayoutError("odd wire segment with no straight pair to merge")
        i, _ = m
        merged = _merge_two(positions[i], positions[i + 1])
        positions = positions[:i] + [merged] + positions[i + 2 :]
    return [
        tuple(rect_ring(x, y, w, h)) for (x, y, w, h) in positions
    ]


def compute_handicap(trudy_raw: int, total_boxes: int) -> tuple[int, int]:
    """Minimal non-negative initial scores making the satisfied-case margin
    exactly +1 for the first player."""
    d = total_boxes + 1 - 2 * trudy_raw
    if d >= 0:
        return d, 0
    return 0, -d


def compile_formula(raw: Formula) -> CompiledInstance:
    f = pad_even(raw)
    plan = plan_layout(f)
    b = _Builder()
    ann = Annotations(
        nonloony={}, set_true_edge={}, set_false_edge={}, pair_box={},
        var_cycles={}, segment_rings={}, wire_of_segment={},
        segments_of_wire={}, crossover_cycles={}, crossover_lines={},
        or_cycles={}, or_inputs={}, or_output={}, clause_cycle={},
        clause_wire={}, wire_source={}, wire_sink={},
    )

    # 1. variable gadgets
    port_anchor = {}  # (v, port index) -> (x of run start)
    for v in range(1, f.n + 1):
        t = template(VARIABLE, fanout=plan.fanout[v])
        off = (plan.var_x[v], VAR_Y)
        pg = b.add_gadget(f"var{v}", t, off)
        pg.meta["variable"] = v
        ann.var_cycles[v] = {
            **pg.cycles,
            "C12": translate_boxes(t.roles["merged_c12"], *off),
        }
        y1 = translate_edge(t.roles["set_false_edge"], *off)
        y2 = translate_edge(t.roles["set_false_capture"], *off)
        ann.nonloony[v] = (y1, y2)
        ann.set_false_edge[v] = y1
        ann.set_true_edge[v] = translate_edge(t.roles["set_true_open_edge"], *off)
        ann.pair_box[v] = translate_boxes([t.roles["pair_box"]], *off)[0]
        for i in range(plan.fanout[v]):
            port_anchor[(v, i)] = plan.var_x[v] + i * PORT_PITCH

    # 2. plan wire endpoints in x, then nudge channels and place crossovers;
    # the or band starts below the lowest (possibly nudged) channel
    v1_col = {}
    for wid, v, j, pos, port in plan.wires:
        v1_col[wid] = port_anchor[(v, port)]
    target_x = {}
    for j, cl in enumerate(f.clauses):
        lits = sorted(cl)
        ox = plan.or_columns[j]
        wire_ids = [w[0] for w in plan.wires if w[2] == j]
        if len(lits) == 1:
            target_x[wire_ids[0]] = ox
            continue
        for t_idx in range(len(lits) - 1):
            gx = ox + OR_DIAG * t_idx
            if t_idx == 0:
                target_x[wire_ids[0]] = gx
                target_x[wire_ids[1]] = gx + OR_IN2_X
            else:
                target_x[wire_ids[t_idx + 1]] = gx + OR_IN2_X

    crossings, channels, origins, cross_by_h, cross_by_v = _plan_crossings(
        plan, v1_col, target_x
    )
    plan.crossings = crossings
    plan.channels = channels

    cross_pg = {}
    for gid, (hw, vw, col, row, seg) in crossings.items():
        cox, coy = origins[gid]
        eastbound = v1_col[hw] < target_x[hw]
        pg = b.add_gadget(gid, template(CROSSOVER), (cox, coy))
        ann.crossover_cycles[gid] = pg.cycles
        ann.crossover_lines[gid] = {
            "line1": hw, "line2": vw, "eastbound": eastbound,
            "origin": (cox, coy),
        }
        cross_pg[gid] = pg

    # 3. or-trees and clause rings
    or_band_y = max(
        [CHANNEL_TOP, *plan.channels.values()]
    ) + CHANNEL_PITCH + OR_CLEAR
    or_band_y += (3 - or_band_y) % 5  # keep all rows on the shared 5-grid
    or_input_target = {}  # wire id -> (column, row of approach ring, gadget, port)
    or_out_sources = []  # (wire-ish connection specs for intra-column wires)
    clause_feed = {}  # clause j -> (source kind, source gid/port info)
    for j, cl in enumerate(f.clauses):
        lits = sorted(cl)
        ox = plan.or_columns[j]
        wire_ids = [w[0] for w in plan.wires if w[2] == j]
        if len(lits) == 1:
            clause_feed[j] = ("wire", wire_ids[0], ox)
            continue
        prev_out = None
        for t_idx in range(len(lits) - 1):
            gx = ox + OR_DIAG * t_idx
            oy = or_band_y + t_idx * OR_V_PITCH
            gid = f"or.c{j}.t{t_idx}"
            pg = b.add_gadget(gid, template(OR), (gx, oy))
            ann.or_cycles[gid] = pg.cycles
            in1_col, in2_col = gx, gx + OR_IN2_X
            if t_idx == 0:
                w1, w2 = wire_ids[0], wire_ids[1]
                or_input_target[w1] = (in1_col, oy - PITCH, gid, "in1", [])
                or_input_target[w2] = (in2_col, oy - PITCH, gid, "in2", [])
                ann.or_inputs[gid] = (w1, w2)
            else:
                internal = f"w.or.c{j}.t{t_idx - 1}"
                or_out_sources.append(
                    (internal, prev_out, (in1_col, oy - PITCH), gid, "in1")
                )
                wv = wire_ids[t_idx + 1]
                or_input_target[wv] = (in2_col, oy - PITCH, gid, "in2", [])
                ann.or_inputs[gid] = (internal, wv)
                ann.wire_source[internal] = ("or", prev_out[2])
                ann.wire_sink[internal] = ("or", gid, "in1")
            prev_out = (gx, oy + 15, gid)  # out run top-left, below the gadget
        clause_feed[j] = ("or", prev_out, ox + OR_DIAG * (len(lits) - 2))

    # targets for single-literal clauses: straight down to the clause ring
    clause_y = or_band_y + max(
        (len(sorted(cl)) - 1) for cl in f.clauses
    ) * OR_V_PITCH + OR_V_PITCH
    clause_y += (3 - clause_y) % 5
    v2_col = {}
    v2_row = {}
    tail_jog = {}
    for wid, v, j, pos, port in plan.wires:
        if wid in or_input_target:
            col, oy, gid, pname, jog = or_input_target[wid]
            v2_col[wid], v2_row[wid] = col, oy
            tail_jog[wid] = jog
            ann.wire_sink[wid] = ("or", gid, pname)
        else:
            ox = clause_feed[j][2]
            v2_col[wid], v2_row[wid] = ox, clause_y - PITCH
            tail_jog[wid] = []
            ann.wire_sink[wid] = ("clause", j)
        if v2_col[wid] != target_x[wid]:
            raise LayoutError(
                f"{wid}: target column drifted {target_x[wid]} -> {v2_col[wid]}"
            )
        ann.wire_source[wid] = ("var", v)

    # 4. build each variable wire's ring path through its crossings
    for wid, v, j, pos, port in plan.wires:
        segs = _walk_wire(
            wid,
            f"var{v}",
            v1_col[wid],
            v2_col[wid],
            v2_row[wid],
            plan.channels[wid],
            cross_by_v,
            ann,
        )
        if tail_jog[wid]:
            segs[-1] = (
                segs[-1][0] + list(tail_jog[wid]),
                segs[-1][1],
                segs[-1][2],
            )
        _emit_wire_segments(b, ann, wid, segs)

    # 5. or-to-or internal wires: drop below the out run, run east under the
    # gadget to the next level's in1 column, then down onto its top-side run
    for wid, (sox, soy, sgid), (tcol, toy), tgid, tport in or_out_sources:
        positions = [
            (sox, soy, RING, RING),
            (sox, soy + PITCH, RING, RING),
        ]
        x = sox + PITCH
        while x <= tcol:
            positions.append((x, soy + PITCH, RING, RING))
            x += PITCH
        y = soy + 2 * PITCH
        while y <= toy:
            positions.append((tcol, y, RING, RING))
            y += PITCH
        segs = [(positions, sgid, "dst")]
        _emit_wire_segments(b, ann, wid, segs)

    # 6. clause rings and their feed wires
    for j in range(len(f.clauses)):
        kind = clause_feed[j][0]
        ox = clause_feed[j][2]
        ring = _ring_at(ox, clause_y)
        gid = f"clause{j}"
        pgt = template(CLAUSE)
        pg = b.add_gadget(gid, pgt, (ox, clause_y), share=ring[:RING])
        ann.clause_cycle[j] = pg.cycles["cyc"]
        if kind == "or":
            (sox, soy, sgid) = clause_feed[j][1]
            wid = f"w.c{j}.feed"
            positions = []
            y = soy
            while y <= clause_y - PITCH:
                positions.append((sox, y, RING, RING))
                y += PITCH
            _emit_wire_segments(b, ann, wid, [(positions, sgid, "dst")])
            ann.wire_source[wid] = ("or", sgid)
            ann.wire_sink[wid] = ("clause", j)
            ann.clause_wire[j] = wid
        else:
            ann.clause_wire[j] = clause_feed[j][1]

    for wid, src in ann.wire_source.items():
        if src[0] == "or":
            ann.or_output[src[1]] = wid

    # 7. assemble the board
    xs = [e.x for e in b.undrawn]
    ys = [e.y for e in b.undrawn]
    w = max(xs) + 2
    h = max(ys) + 2
    drawn = [e for e in edge_universe(w, h) if e not in b.undrawn]
    state = new_board(w, h, drawn, to_move="A")

    stats = _compute_stats(f, plan, b, ann, state)
    handicap = compute_handicap(stats["trudy_raw"], stats["N"])
    state = replace(
        state,
        score_a=handicap[0],
        score_b=handicap[1],
        handicap_a=handicap[0],
        handicap_b=handicap[1],
    )
    return CompiledInstance(
        state=state,
        gadgets=b.gadgets,
        segments=b.segments,
        plan=plan,
        stats=stats,
        handicap=handicap,
        annotations=ann,
    )


def _plan_crossings(plan, v1_col, v2_col):
    """Detect crossings on ideal routes, place the crossovers, and nudge
    channel rows (+5 at a time) until no vertical descent is left with a
    single-ring gap between consecutive crossover bodies.  Every channel
    sits above the or band, so a descent toward an or input crosses every
    lower channel whose run spans its column."""
    base = []
    for hw, v, j, pos, port in plan.wires:
        lo, hi = sorted((v1_col[hw], v2_col[hw]))
        if lo == hi:
            continue
        for vw, *_ in plan.wires:
            if vw == hw:
                continue
            if lo < v1_col[vw] < hi and plan.channels[hw] < plan.channels[vw]:
                base.append((hw, vw, v1_col[vw], "v1"))
            if lo < v2_col[vw] < hi and plan.channels[vw] < plan.channels[hw]:
                base.append((hw, vw, v2_col[vw], "v2"))
    channels = dict(plan.channels)
    for _ in range(40):
        crossings = {}
        cross_by_h = {}
        cross_by_v = {}
        for idx, (hw, vw, col, seg) in enumerate(base):
            gid = f"cross{idx}"
            row = channels[hw]
            crossings[gid] = (hw, vw, col, row, seg)
            cross_by_h.setdefault(hw, []).append((col, gid))
            cross_by_v.setdefault((vw, seg), []).append((row, gid, col))
        origins = {}
        for gid, (hw, vw, col, row, seg) in crossings.items():
            eastbound = v1_col[hw] < v2_col[hw]
            peers = cross_by_v.get((vw, seg), [])
            if seg == "v1":
                above = [g for (r, g, c) in peers if r < row]
                entry_col = col - PITCH * len(above)
            else:
                below = [g for (r, g, c) in peers if r > row]
                entry_col = col + PITCH * (len(below) + 1)
            passed = [
                (c, g)
                for (c, g) in cross_by_h.get(hw, [])
                if (c < col if eastbound else c > col)
            ]
            hshift = (PITCH if eastbound else -PITCH) * len(passed)
            oy = (row + hshift) - (2 * PITCH if eastbound else 3 * PITCH)
            origins[gid] = (entry_col - 3 * PITCH, oy)
        # vertical gap audit: between consecutive crossover bodies on one
        # descent there must be at least two ring positions
        bad = set()
        for key, items in cross_by_v.items():
            ordered = sorted(items)
            for (r1, g1, _), (r2, g2, _) in zip(ordered, ordered[1:]):
                gap = (origins[g2][1] - (origins[g1][1] + 6 * PITCH)) // PITCH
                if gap < 2:
                    bad.add(crossings[g2][0])  # lower crossover's channel
        if not bad:
            return crossings, channels, origins, cross_by_h, cross_by_v
        for hw in bad:
            channels[hw] += PITCH
    raise LayoutError("channel nudging did not converge")


def _walk_wire(wid, src_gid, px, tx, ty, chy, cross_by_v, ann):
    """Ring positions for one variable wire: descent from the port, channel
    run, descent to the target approach ring, split into segments at each
    crossover the wire passes through.

    Crossovers this wire crosses vertically sit on its descents (entered at
    the gadget's north port, exited one pitch west); crossovers it hosts
    horizontally sit on its channel run (entered west or east, exited one
    pitch south or north respectively).  All positions derive from the placed
    crossover origins, so both wires of a crossing agree exactly.
    """
    segs = []
    cur = []
    src_tag = src_gid

    def cut(next_tag):
        nonlocal cur, src_tag
        segs.append((cur, src_tag, next_tag))
        cur = []
        src_tag = next_tag

    def descend(col, y, y_stop, seg_key):
        """Walk rings down from (col, y) to (col', y_stop) through any
        crossovers registered for seg_key; returns the final column."""
        hits = sorted(cross_by_v.get(seg_key, []))
        hi = 0
        while y <= y_stop:
            if hi < len(hits):
                gid = hits[hi][1]
                ox, oy = ann.crossover_lines[gid]["origin"]
                if y == oy - PITCH:
                    # next position is the crossover's north port ring
                    if col != ox + 3 * PITCH:
                        raise LayoutError(
                            f"{wid}: descent column {col} misses crossover {gid}"
                        )
                    cur.append((col, y, RING, RING))
                    cut(gid)
                    col = ox + 2 * PITCH
                    y = oy + 6 * PITCH
                    hi += 1
                    continue
            cur.append((col, y, RING, RING))
            y += PITCH
        return col

    v1_hits = sorted(cross_by_v.get((wid, "v1"), []))
    v2_hits = sorted(cross_by_v.get((wid, "v2"), []))
    if px == tx and not v1_hits and not v2_hits:
        descend(px, VAR_PORT_Y, ty, (wid, "none"))
        segs.append((cur, src_tag, "dst"))
        return segs

    # descent 1: from the variable port down to the channel corner
    col = descend(px, VAR_PORT_Y, chy - PITCH, (wid, "v1"))
    # channel run: from (col, row) toward the descent-2 column
    row = chy
    eastbound = px < tx
    col2 = tx + PITCH * len(v2_hits)
    hstep = PITCH if eastbound else -PITCH
    h_hits = []
    for gid, spec in ann.crossover_lines.items():
        if spec["line1"] == wid:
            h_hits.append((spec["origin"], gid))
    h_hits.sort(key=lambda og: og[0][0], reverse=not eastbound)
    x = col
    hi = 0
    cur.append((x, row, RING, RING))  # corner onto the channel
    x += hstep
    while (x <= col2 - PITCH) if eastbound else (x >= col2 + PITCH):
        if hi < len(h_hits):
            (ox, oy), gid = h_hits[hi]
            entry_x = ox - PITCH if eastbound else ox + 6 * PITCH
            if x == entry_x:
                if row != (oy + 2 * PITCH if eastbound else oy + 3 * PITCH):
                    raise LayoutError(
                        f"{wid}: channel row {row} misses crossover {gid}"
                    )
                cur.append((x, row, RING, RING))
                cut(gid)
                x += 7 * PITCH * (1 if eastbound else -1)
                row += PITCH if eastbound else -PITCH
                hi += 1
                continue
        cur.append((x, row, RING, RING))
        x += hstep
    if x != col2:
        raise LayoutError(f"{wid}: channel run landed at {x}, wanted {col2}")
    # descent 2: corner at (col2, row), down to the target approach ring
    col = descend(col2, row, ty, (wid, "v2"))
    if col != tx:
        raise LayoutError(f"{wid}: descent 2 landed at {col}, wanted {tx}")
    segs.append((cur, src_tag, "dst"))
    return segs


def _emit_wire_segments(b: _Builder, ann: Annotations, wid: str, segs):
    seg_ids = []
    for s_idx, (positions, src, dst) in enumerate(segs):
        rings = _build_segment_rings(list(positions))
        gid = f"{wid}.seg{s_idx}"
        share = set()
        share.update(rings[0][:])
        share.update(rings[-1][:])
        for loop in rings:
            b.add_ring(gid, loop, share=loop)
        b.segments.append(WireSegment(gid=gid, rings=rings, src=src, dst=dst))
        ann.segment_rings[gid] = rings
        ann.wire_of_segment[gid] = wid
        seg_ids.append(gid)
    ann.segments_of_wire[wid] = seg_ids


def _compute_stats(f, plan, b, ann, state: GameState) -> dict:
    structure_boxes = {bx for bx in b.box_owner}
    n_boxes = len(structure_boxes)
    g = build_dual(state)
    k_fresh = 0
    t_fresh = 0
    for bx in structure_boxes:
        d = g.degree.get(bx, 0)
        if d > 2:
            k_fresh += 1
            t_fresh += d
    n = f.n
    k_end = k_fresh - 2 * n
    t_end = t_fresh - 6 * n
    c_sat = 2 * n  # variables
    for seg in b.segments:
        c_sat += len(seg.rings) // 2
    c_sat += 5 * len(ann.crossover_cycles)
    c_sat += len(ann.or_cycles)
    c_sat += len(f.clauses)
    cv = 4 * c_sat + t_end - 2 * k_end - 4
    trudy_raw = n // 2 + cv
    return {
        "n": n,
        "m": f.m,
        "N": n_boxes,
        "c_sat": c_sat,
        "k": k_end,
        "T": t_end,
        "k_fresh": k_fresh,
        "T_fresh": t_fresh,
        "controlled_value": cv,
        "trudy_raw": trudy_raw,
    }
