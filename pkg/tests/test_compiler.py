import pytest

from dotboxes.board import parse_board, serialize_board
from dotboxes.compiler import LayoutError, compile_formula, compute_handicap, plan_layout
from dotboxes.dual import build_dual, classify_all, decompose, LOONY
from dotboxes.formula import make_formula, pad_even
from dotboxes.gadgets import GadgetError


def small_instance():
    return compile_formula(make_formula(2, [[1, 2]]))


def test_compute_handicap_pinned():
    # TrudyRaw == FredRaw: need +1
    assert compute_handicap(10, 20) == (1, 0)
    # TrudyRaw == FredRaw + 5 -> give Fred 4
    assert compute_handicap(10, 15) == (0, 4)


def test_plan_layout_requires_even():
    with pytest.raises(LayoutError):
        plan_layout(make_formula(3, [[1, 2]]))


def test_plan_layout_single_clause():
    plan = plan_layout(pad_even(make_formula(2, [[1, 2]])))
    assert len(plan.wires) == 2
    assert plan.fanout == {1: 1, 2: 1}


def test_compiled_roundtrip():
    inst = small_instance()
    s = inst.state
    assert parse_board(serialize_board(s)) == s


def test_compiled_moves_inside_gadget_regions():
    inst = small_instance()
    s = inst.state
    owned_boxes = set()
    for pg in inst.gadgets.values():
        owned_boxes.update(pg.boxes)
    for seg in inst.segments:
        for ring in seg.rings:
            owned_boxes.update(ring)
    from dotboxes.board import available_moves, edge_boxes

    for e in available_moves(s):
        assert any(
            b in owned_boxes for b in edge_boxes(e, s.width, s.height)
        ), f"edge {e} outside every gadget region"


def test_compiled_chain_lengths():
    inst = small_instance()
    d = decompose(build_dual(inst.state))
    pair_boxes = set(inst.annotations.pair_box.values())
    for ch in d.chains:
        if set(ch.boxes) & pair_boxes:
            assert len(ch) == 1  # the non-loony pair bridge
        else:
            assert len(ch) >= 4


def test_compiled_nonloony_census():
    inst = small_instance()
    cls = classify_all(inst.state)
    nonloony = {e for e, c in cls.items() if c != LOONY}
    expected = set()
    for y1, y2 in inst.annotations.nonloony.values():
        expected.add(y1)
        expected.add(y2)
    assert nonloony == expected
    assert len(nonloony) == 2 * inst.stats["n"]


def test_handicap_equation():
    inst = small_instance()
    st = inst.stats
    cv = 4 * st["c_sat"] + st["T"] - 2 * st["k"] - 4
    trudy = st["n"] // 2 + cv
    fred = st["N"] - trudy
    a, b = inst.handicap
    assert trudy + a == fred + b + 1
    assert a >= 0 and b >= 0 and min(a, b) == 0


def test_annotated_cycles_are_real_cycles():
    from dotboxes.geometry import loop_edges

    inst = small_instance()
    s = inst.state
    ann = inst.annotations
    some = [ann.var_cycles[1]["C1"], ann.var_cycles[1]["C4"], ann.clause_cycle[0]]
    for seg, rings in list(ann.segment_rings.items())[:2]:
        some.extend(rings[:2])
    for loop in some:
        for e in loop_edges(list(loop)):
            assert e not in s.drawn


def test_assignment_invariance_of_k_T():
    # play every balanced assignment's variable phase; k and T of the loony
    # position never depend on which variables went true
    import itertools

    from dotboxes.fastboard import FastBoard
    from dotboxes.strategy import _Gadgetry

    inst = small_instance()
    results = set()
    n = inst.stats["n"]
    for trues in itertools.combinations(range(1, n + 1), n // 2):
        fb = FastBoard(inst.state)
        gad = _Gadgetry(inst, fb)
        order_true = list(trues)
        order_false = [v for v in range(1, n + 1) if v not in trues]
        while order_true or order_false:
            if fb.to_move == 0:
                if fb.capture_moves():
                    fb.play(fb.capture_moves()[0])
                    continue
                v = order_true.pop(0) if order_true else None
                if v is None:
                    break
                fb.play(gad.set_true_edge[v])
            else:
                caps = fb.capture_moves()
                if caps:
                    fb.play(caps[0])
                    continue
                v = order_false.pop(0) if order_false else None
                if v is None:
                    break
                fb.play(gad.pair_edges[v][0])
        # eat any leftovers to settle the position
        while fb.capture_moves():
            fb.play(fb.capture_moves()[0])
        k = sum(1 for d in fb.deg if d > 2)
        T = sum(d for d in fb.deg if d > 2)
        results.add((k, T))
    assert len(results) == 1
    assert results.pop() == (inst.stats["k"], inst.stats["T"])
