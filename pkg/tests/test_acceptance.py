"""Acceptance gate: one test per criterion, each printing a PASS line with
its measurements.  Run with `pytest tests/test_acceptance.py -v -s`."""

import itertools
import random
import time

import pytest

from dotboxes.board import apply_move, edge_universe, new_board, parse_board, serialize_board
from dotboxes.compiler import compile_formula
from dotboxes.cycles import max_disjoint_cycles
from dotboxes.dual import build_dual, decompose, is_loony_endgame
from dotboxes.endgame import compute_stats, controlled_value, simulate_controlled_play
from dotboxes.formula import gpos_solve, make_formula, parse_formula, serialize_formula
from dotboxes.gadgets import template, validate_gadget
from dotboxes.generator import dumbbell, generate_loony_positions, single_loop, two_loops
from dotboxes.render import RenderSpec, render
from dotboxes.solver import net_to_mover_boxes, perft, solve, solve_value_plain
from dotboxes.strategy import deviation_probe, play_match


def _family(max_n=4, max_m=2):
    """Every canonical positive CNF formula with n <= max_n, m <= max_m."""
    seen = set()
    for n in range(1, max_n + 1):
        subsets = []
        for r in range(1, n + 1):
            subsets.extend(itertools.combinations(range(1, n + 1), r))
        for m in range(1, max_m + 1):
            for clauses in itertools.combinations(subsets, m):
                f = make_formula(n, [list(c) for c in clauses])
                key = (f.n, f.clauses)
                if key in seen:
                    continue
                seen.add(key)
                yield f


def test_criterion_1_lemma1_oracle_equality():
    t0 = time.time()
    positions = generate_loony_positions(100)
    assert len(positions) >= 100
    pinned = [(single_loop(8), 0), (two_loops(), 4), (dumbbell(), 6)]
    for s, want in pinned:
        assert controlled_value(s) == want
        assert net_to_mover_boxes(s, solve(s).net_value) == want
    mismatches = 0
    for s in positions:
        assert is_loony_endgame(s)
        boxes = sum(1 for b in s.boxes() if s.undrawn_count(b) >= 1)
        assert boxes <= 22
        cv = controlled_value(s)
        mv = net_to_mover_boxes(s, solve(s).net_value)
        if cv != mv:
            mismatches += 1
    elapsed = time.time() - t0
    assert mismatches == 0
    assert elapsed < 300
    print(
        f"\nACCEPTANCE 1: PASS - oracle equality on {len(positions)} loony "
        f"positions + 3 pinned, 0 mismatches, {elapsed:.0f}s (< 300s)"
    )


def test_criterion_2_gadget_lemmas_exhaustive():
    lines = []
    for kind, params in [
        ("wire", {"k": 1}),
        ("wire", {"k": 2}),
        ("wire", {"k": 3}),
        ("crossover", {}),
        ("or", {}),
        ("variable", {"fanout": 1}),
        ("clause", {}),
    ]:
        t0 = time.time()
        rep = validate_gadget(template(kind, **params))
        dt = time.time() - t0
        assert rep.ok, f"{kind}{params} profile mismatch"
        assert dt < 120, f"{kind}{params} took {dt:.0f}s"
        lines.append(f"{kind}{params}: {len(rep.entries)} conditions, {dt:.0f}s")
    print("\nACCEPTANCE 2: PASS - " + "; ".join(lines))


def test_criterion_3_appendix_identity_and_replay():
    positions = generate_loony_positions(100)
    checked = 0
    for s in positions:
        from dotboxes.endgame import has_outer_chains

        if has_outer_chains(s):
            continue
        stats, sel = compute_stats(s)
        assert stats.T == 2 * stats.ell + 2 * stats.k, (stats,)
        opener, _, log = simulate_controlled_play(s, sel)
        assert opener == 4 * stats.c + stats.T - 2 * stats.k - 4
        # replayed score equals the formula via the engine
        st = s
        for e in log:
            st, _ = apply_move(st, e)
        mover_score = st.score_a if s.to_move == "A" else st.score_b
        assert mover_score == opener
        checked += 1
    assert checked >= 100
    print(
        f"\nACCEPTANCE 3: PASS - T = 2*ell + 2*k and replayed score = "
        f"4c+T-2k-4 on {checked} junction-terminated positions"
    )


def test_criterion_4_end_to_end_theorem():
    t0 = time.time()
    count = 0
    sat_margins = set()
    for f in _family():
        winner, _ = gpos_solve(f)
        inst = compile_formula(f)
        res = play_match(inst)
        margin = res.score_a - res.score_b
        assert res.parity_ok, (f.n, f.clauses)
        assert (winner == "Trudy") == (res.winner == "A"), (
            f.n,
            f.clauses,
            winner,
            res.winner,
            margin,
        )
        if winner == "Trudy":
            assert margin == 1, (f.n, f.clauses, margin)
            sat_margins.add(margin)
        count += 1
    elapsed = time.time() - t0
    assert sat_margins == {1}
    print(
        f"\nACCEPTANCE 4: PASS - {count} formulas (n<=4 post-padding, m<=2): "
        f"match winner == gpos winner everywhere, satisfied-case margin "
        f"exactly +1, {elapsed:.0f}s"
    )


def test_criterion_5_lemma7_probes():
    t0 = time.time()
    small = compile_formula(make_formula(1, [[1]]))
    reports = []
    for deviator in ("Fred", "Trudy"):
        rep = deviation_probe(small, deviator, depth=1, samples=500, seed=11)
        reports.append((deviator, rep))
    or2 = compile_formula(make_formula(2, [[1, 2]]))
    for deviator in ("Fred", "Trudy"):
        rep = deviation_probe(or2, deviator, depth=2, samples=500, seed=13)
        reports.append((deviator + "/or2", rep))
    elapsed = time.time() - t0
    for name, rep in reports:
        if name.startswith("Fred"):
            assert rep.improvements == [], (name, rep.improvements[:5])
        else:
            assert rep.max_gain <= 0, (name, rep.improvements[:5])
    assert elapsed < 600
    detail = ", ".join(
        f"{name}: {rep.states_probed} states/{rep.alternatives_tried} trials"
        for name, rep in reports
    )
    print(
        f"\nACCEPTANCE 5: PASS - no improving Fred deviation, no Trudy gain "
        f"({detail}), {elapsed:.0f}s (< 600s)"
    )


def test_criterion_6_engine_ground_truth():
    assert perft(new_board(1, 1), 1) == 4
    assert perft(new_board(1, 1), 4) == 24
    assert perft(new_board(2, 2), 2) == 132
    assert solve(new_board(1, 1)).net_value == -1
    rng = random.Random(77)
    agree = 0
    for _ in range(500):
        w, h = rng.choice([(2, 2), (3, 2)])
        universe = edge_universe(w, h)
        undrawn = rng.randint(1, 14)
        drawn = rng.sample(universe, max(0, len(universe) - undrawn))
        s = new_board(w, h, drawn, to_move=rng.choice(["A", "B"]))
        assert solve(s).net_value == solve_value_plain(s)
        agree += 1
    print(
        f"\nACCEPTANCE 6: PASS - perft 4/24/132, solve(1x1) = -1, memoized "
        f"vs plain agree on {agree}/500 positions with <= 14 undrawn edges"
    )


def test_criterion_7_formats_and_renders():
    rng = random.Random(99)
    # 1000 board round-trips
    for _ in range(1000):
        w, h = rng.randint(1, 5), rng.randint(1, 5)
        universe = edge_universe(w, h)
        drawn = rng.sample(universe, rng.randint(0, len(universe)))
        s = new_board(
            w, h, drawn, rng.randint(0, 30), rng.randint(0, 30),
            rng.choice(["A", "B"]),
        )
        assert parse_board(serialize_board(s)) == s
    # 1000 formula round-trips
    for _ in range(1000):
        n = rng.randint(1, 8)
        m = rng.randint(1, 4)
        clauses = [
            sorted(rng.sample(range(1, n + 1), rng.randint(1, n)))
            for _ in range(m)
        ]
        f = make_formula(n, clauses)
        assert parse_formula(serialize_formula(f)) == f
    # golden renders: byte-stable across repeated runs and pinned literals
    s = new_board(1, 1)
    assert render(s) == "+ +\n\n+ +\n"
    s2 = new_board(2, 2, edge_universe(2, 2)[:5], 1, 0, "B")
    for spec in (RenderSpec(), RenderSpec(format="svg")):
        assert render(s2, spec) == render(s2, spec)
    loop = dumbbell()
    a1, a2 = render(loop), render(loop)
    v1, v2 = render(loop, RenderSpec(format="svg")), render(loop, RenderSpec(format="svg"))
    assert a1 == a2 and v1 == v2
    print(
        "\nACCEPTANCE 7: PASS - 1000 board + 1000 formula round-trips "
        "byte-identical, ascii/svg renders byte-stable"
    )
