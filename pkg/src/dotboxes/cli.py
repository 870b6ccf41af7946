"""Command-line surface: compile, analyze, solve, simulate, probe,
verify-gadget, gpos-solve, render.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .board import parse_board, serialize_board
from .formula import FormulaError, gpos_solve, parse_formula


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def cmd_compile(args) -> int:
    from .compiler import compile_formula
    from .annotations_io import save_annotations

    f = parse_formula(_read(args.formula))
    inst = compile_formula(f)
    with open(args.output, "w") as fh:
        fh.write(serialize_board(inst.state))
    if args.annotations:
        save_annotations(inst, args.annotations)
    s = inst.stats
    print(
        f"compiled: board {inst.state.width}x{inst.state.height}, "
        f"boxes {s['N']}, cycles {s['c_sat']}, handicap {inst.handicap[0]}:"
        f"{inst.handicap[1]}"
    )
    return 0


def cmd_analyze(args) -> int:
    from .cycles import max_disjoint_cycles
    from .dual import build_dual, decompose, is_loony_endgame
    from .endgame import EndgameError, chain_final_value, compute_stats, controlled_value

    s = parse_board(_read(args.board))
    g = build_dual(s)
    d = decompose(g)
    print(f"chains: {len(d.chains)}")
    for ch in d.chains:
        ends = ",".join(str(e) for e in ch.ends)
        print(f"  chain len={len(ch)} boxes={list(ch.boxes)} ends={ends}")
    print(f"cycles: {len(d.cycles)}")
    for cy in d.cycles:
        print(f"  cycle len={len(cy)} boxes={list(cy.boxes)}")
    print(f"junctions: {sorted(d.junctions)}")
    if not is_loony_endgame(s):
        print("loony-endgame: no")
        return 0
    print("loony-endgame: yes")
    stats, _ = compute_stats(s, args.cap)
    print(f"c: {stats.c}")
    print(f"k: {stats.k}")
    print(f"T: {stats.T}")
    print(f"ell: {stats.ell}")
    try:
        print(f"controlled-value: {controlled_value(s, args.cap)}")
    except EndgameError:
        print(f"controlled-value: n/a (no cycle); chain-final value: "
              f"{chain_final_value(stats)}")
    return 0


def cmd_solve(args) -> int:
    from .solver import solve

    s = parse_board(_read(args.board))
    r = solve(s, args.budget)
    print(f"net value: {r.net_value}")
    print("pv:", " | ".join(f"{e.orient} {e.x} {e.y}" for e in r.principal_variation))
    print(f"nodes: {r.nodes}")
    return 0


def cmd_gpos_solve(args) -> int:
    f = parse_formula(_read(args.formula))
    winner, strategy = gpos_solve(f)
    print(f"winner: {winner}")
    from .formula import gpos_initial

    if f.n >= 1:
        print(f"first pick: {strategy(gpos_initial(f))}")
    return 0


def cmd_verify_gadget(args) -> int:
    from .gadgets import GadgetProfileError, template, validate_gadget

    params = {}
    if args.kind == "wire":
        params["k"] = args.k
    if args.kind == "variable":
        params["fanout"] = args.fanout
    t = template(args.kind, **params)
    try:
        rep = validate_gadget(t, cap=args.cap)
    except GadgetProfileError as ex:
        print(f"FAIL: {ex}", file=sys.stderr)
        return 1
    print(f"gadget {args.kind}{t.params}: {len(rep.entries)} conditions")
    for label, cond, exp, got in rep.entries:
        mark = "ok" if exp == got else "MISMATCH"
        cond_s = " ".join(f"{k}={'P' if v else 'f'}" for k, v in sorted(cond.items()))
        print(f"  {label:12s} [{cond_s}] expected={exp} measured={got} {mark}")
    print("pass" if rep.ok else "fail")
    return 0 if rep.ok else 1


def cmd_simulate(args) -> int:
    from .annotations_io import load_instance
    from .strategy import fred_policy, play_match, trudy_policy

    inst = load_instance(args.board, args.annotations)
    plan = None
    if args.trudy and args.trudy.startswith("plan:"):
        plan = {int(v) for v in args.trudy[5:].split(",") if v}
    pt = trudy_policy(inst, plan=plan)
    pf = fred_policy(inst)
    res = play_match(inst, pt, pf, check_parity=not args.no_parity_check)
    print(f"score A (Trudy): {res.score_a}")
    print(f"score B (Fred): {res.score_b}")
    print(f"winner: {res.winner}")
    print(f"margin: {res.score_a - res.score_b:+d}")
    print(f"loony endgame from move: {res.phase_boundary}")
    print(f"assignment: " + " ".join(
        f"x{v}={'T' if val else 'F'}" for v, val in sorted(res.assignment.items())
    ))
    print(f"parity invariant held: {res.parity_ok}")
    if args.log:
        with open(args.log, "w") as fh:
            for e in res.move_log:
                fh.write(f"{e.orient} {e.x} {e.y}\n")
    return 0


def cmd_probe(args) -> int:
    from .annotations_io import load_instance
    from .strategy import deviation_probe

    inst = load_instance(args.board, args.annotations)
    rep = deviation_probe(
        inst,
        deviator=args.deviator,
        depth=args.depth,
        samples=args.samples,
        seed=args.seed,
    )
    print(f"deviator: {rep.deviator}")
    print(f"baseline score: {rep.baseline}")
    print(f"states probed: {rep.states_probed}")
    print(f"alternatives tried: {rep.alternatives_tried}")
    print(f"improving deviations: {len(rep.improvements)}")
    for step, edge, gain in rep.improvements[:20]:
        print(f"  at move {step}: {edge} gains {gain}")
    return 0


def cmd_render(args) -> int:
    from .render import RenderSpec, render

    s = parse_board(_read(args.board))
    overlay = None
    if args.annotations:
        from .annotations_io import load_instance

        inst = load_instance(args.board, args.annotations)
        overlay = {
            f"var{v}": [b for loop in cyc.values() for b in loop]
            for v, cyc in inst.annotations.var_cycles.items()
        }
    text = render(s, RenderSpec(format=args.format, cell=args.cell, overlay=overlay))
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="dotboxes",
        description="Dots & Boxes engine, endgame analyzer, and positive-CNF"
        " reduction compiler",
    )
    p.add_argument("--threads", type=int, default=1, help="reserved; the"
                   " reference implementation runs sequentially")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a positive CNF formula to a board")
    c.add_argument("formula")
    c.add_argument("-o", "--output", required=True)
    c.add_argument("--annotations")
    c.set_defaults(func=cmd_compile)

    a = sub.add_parser("analyze", help="decompose a position and report endgame stats")
    a.add_argument("board")
    a.add_argument("--cap", type=int, default=100_000)
    a.set_defaults(func=cmd_analyze)

    s = sub.add_parser("solve", help="exact minimax value of a small position")
    s.add_argument("board")
    s.add_argument("--budget", type=int, default=50_000_000)
    s.set_defaults(func=cmd_solve)

    g = sub.add_parser("gpos-solve", help="solve the variable-picking game")
    g.add_argument("formula")
    g.set_defaults(func=cmd_gpos_solve)

    v = sub.add_parser("verify-gadget", help="brute-force a gadget's lemma profile")
    v.add_argument("kind", choices=["wire", "crossover", "or", "variable", "clause"])
    v.add_argument("--k", type=int, default=2, help="wire half-length")
    v.add_argument("--fanout", type=int, default=1, help="variable fan-out")
    v.add_argument("--cap", type=int, default=100_000)
    v.set_defaults(func=cmd_verify_gadget)

    m = sub.add_parser("simulate", help="play the prescribed-policy match")
    m.add_argument("board")
    m.add_argument("--annotations", required=True)
    m.add_argument("--trudy", default="minimax",
                   help="minimax or plan:<comma-separated variables>")
    m.add_argument("--fred", default="prescribed", choices=["prescribed", "minimax"])
    m.add_argument("--log")
    m.add_argument("--no-parity-check", action="store_true")
    m.set_defaults(func=cmd_simulate)

    pr = sub.add_parser("probe", help="deviation probe against the prescribed policies")
    pr.add_argument("board")
    pr.add_argument("--annotations", required=True)
    pr.add_argument("--deviator", choices=["trudy", "fred"], default="fred")
    pr.add_argument("--depth", type=int, default=1)
    pr.add_argument("--samples", type=int, default=0)
    pr.add_argument("--seed", type=int, default=7)
    pr.set_defaults(func=cmd_probe)

    r = sub.add_parser("render", help="render a board as ascii or svg")
    r.add_argument("board")
    r.add_argument("--format", choices=["ascii", "svg"], default="ascii")
    r.add_argument("--cell", type=int, default=12)
    r.add_argument("--annotations")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, FormulaError, RuntimeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
