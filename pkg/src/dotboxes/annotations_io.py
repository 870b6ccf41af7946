"""Annotation file format.

Line-based: `nonloony <var> H|V x y` (two lines per variable, the non-loony
pair) and `cycle <gadget-id> <box list>` (named cycles in board coordinates,
box list as x,y pairs).  A comment line `c meta <json>` carries the wiring
graph (which wires feed which gadgets), the variable move anchors, and the
source formula, so a compiled instance can be reloaded for simulation
without recompiling.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .board import Edge, GameState, parse_board
from .compiler import Annotations
from .formula import Formula, parse_formula, serialize_formula


def _edge_str(e: Edge) -> str:
    return f"{e.orient} {e.x} {e.y}"


def _edge_from(s) -> Edge:
    o, x, y = s.split() if isinstance(s, str) else s
    return Edge(o, int(x), int(y))


def save_annotations(inst, path: str) -> None:
    ann = inst.annotations
    lines = []
    meta = {
        "formula": serialize_formula(inst.plan.formula),
        "set_true_edge": {v: _edge_str(e) for v, e in ann.set_true_edge.items()},
        "set_false_edge": {v: _edge_str(e) for v, e in ann.set_false_edge.items()},
        "pair_box": {v: list(b) for v, b in ann.pair_box.items()},
        "wire_of_segment": ann.wire_of_segment,
        "segments_of_wire": ann.segments_of_wire,
        "or_inputs": ann.or_inputs,
        "or_output": ann.or_output,
        "clause_wire": ann.clause_wire,
        "wire_source": {k: list(v) for k, v in ann.wire_source.items()},
        "wire_sink": {k: list(v) for k, v in ann.wire_sink.items()},
        "crossover_lines": {
            k: {kk: vv for kk, vv in v.items() if kk != "origin"}
            for k, v in ann.crossover_lines.items()
        },
        "stats": inst.stats,
        "handicap": list(inst.handicap),
    }
    lines.append("c meta " + json.dumps(meta, sort_keys=True))
    for v in sorted(ann.nonloony):
        y1, y2 = ann.nonloony[v]
        lines.append(f"nonloony {v} {_edge_str(y1)}")
        lines.append(f"nonloony {v} {_edge_str(y2)}")
    def cyc_line(gid, loop):
        boxes = " ".join(f"{x},{y}" for x, y in loop)
        return f"cycle {gid} {boxes}"

    for v in sorted(ann.var_cycles):
        for name in ("C1", "C2", "C3", "C4", "C12"):
            lines.append(cyc_line(f"var{v}.{name}", ann.var_cycles[v][name]))
    for seg in sorted(ann.segment_rings):
        for i, loop in enumerate(ann.segment_rings[seg]):
            lines.append(cyc_line(f"{seg}.ring{i:02d}", loop))
    for gid in sorted(ann.crossover_cycles):
        for name, loop in sorted(ann.crossover_cycles[gid].items()):
            lines.append(cyc_line(f"{gid}.{name}", loop))
    for gid in sorted(ann.or_cycles):
        for name, loop in sorted(ann.or_cycles[gid].items()):
            lines.append(cyc_line(f"{gid}.{name}", loop))
    for j in sorted(ann.clause_cycle):
        lines.append(cyc_line(f"clause{j}.cyc", ann.clause_cycle[j]))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


@dataclass
class _PlanShim:
    formula: Formula


@dataclass
class LoadedInstance:
    state: GameState
    annotations: Annotations
    plan: _PlanShim
    stats: dict
    handicap: tuple


def load_instance(board_path: str, ann_path: str) -> LoadedInstance:
    with open(board_path) as fh:
        state = parse_board(fh.read())
    meta = None
    nonloony: dict[int, list[Edge]] = {}
    cycles: dict[str, tuple] = {}
    with open(ann_path) as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line:
                continue
            if line.startswith("c meta "):
                meta = json.loads(line[len("c meta "):])
                continue
            if line == "c" or line.startswith("c "):
                continue
            parts = line.split()
            if parts[0] == "nonloony":
                v = int(parts[1])
                nonloony.setdefault(v, []).append(
                    Edge(parts[2], int(parts[3]), int(parts[4]))
                )
            elif parts[0] == "cycle":
                gid = parts[1]
                loop = tuple(
                    tuple(int(t) for t in p.split(",")) for p in parts[2:]
                )
                cycles[gid] = loop
            else:
                raise ValueError(f"bad annotation line: {line!r}")
    if meta is None:
        raise ValueError("annotation file lacks the meta record")
    formula = parse_formula(meta["formula"])
    var_cycles: dict[int, dict] = {}
    segment_rings: dict[str, list] = {}
    crossover_cycles: dict[str, dict] = {}
    or_cycles: dict[str, dict] = {}
    clause_cycle: dict[int, tuple] = {}
    for gid, loop in cycles.items():
        head, _, name = gid.rpartition(".")
        if gid.startswith("var"):
            v = int(head[3:])
            var_cycles.setdefault(v, {})[name] = loop
        elif name.startswith("ring"):
            segment_rings.setdefault(head, []).append((int(name[4:]), loop))
        elif gid.startswith("cross"):
            crossover_cycles.setdefault(head, {})[name] = loop
        elif gid.startswith("or."):
            or_cycles.setdefault(head, {})[name] = loop
        elif gid.startswith("clause"):
            clause_cycle[int(head[6:])] = loop
    segment_rings = {
        seg: [loop for _, loop in sorted(rings)]
        for seg, rings in segment_rings.items()
    }
    ann = Annotations(
        nonloony={v: tuple(es) for v, es in nonloony.items()},
        set_true_edge={
            int(v): _edge_from(s) for v, s in meta["set_true_edge"].items()
        },
        set_false_edge={
            int(v): _edge_from(s) for v, s in meta["set_false_edge"].items()
        },
        pair_box={int(v): tuple(b) for v, b in meta["pair_box"].items()},
        var_cycles=var_cycles,
        segment_rings=segment_rings,
        wire_of_segment=meta["wire_of_segment"],
        segments_of_wire=meta["segments_of_wire"],
        crossover_cycles=crossover_cycles,
        crossover_lines=meta["crossover_lines"],
        or_cycles=or_cycles,
        or_inputs={k: tuple(v) for k, v in meta["or_inputs"].items()},
        or_output=meta["or_output"],
        clause_cycle=clause_cycle,
        clause_wire={int(k): v for k, v in meta["clause_wire"].items()},
        wire_source={k: tuple(v) for k, v in meta["wire_source"].items()},
        wire_sink={k: tuple(v) for k, v in meta["wire_sink"].items()},
    )
    return LoadedInstance(
        state=state,
        annotations=ann,
        plan=_PlanShim(formula=formula),
        stats=meta["stats"],
        handicap=tuple(meta["handicap"]),
    )
