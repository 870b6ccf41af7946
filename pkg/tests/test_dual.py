from dotboxes.board import Edge, available_moves, edge_universe, new_board
from dotboxes.dual import (
    LOONY,
    OUTER,
    SAFE,
    SHORT_CHAIN_MIDDLE,
    build_dual,
    classify_all,
    classify_move,
    decompose,
    is_loony_endgame,
)
from dotboxes.generator import (
    ChainSpec,
    dumbbell,
    rect_ring,
    single_loop,
    structure_position,
    two_loops,
)


def test_fresh_1x1_dual():
    g = build_dual(new_board(1, 1))
    assert g.degree[(0, 0)] == 4
    assert g.degree[OUTER] == 4


def test_full_board_dual_empty():
    s = new_board(2, 2, edge_universe(2, 2))
    g = build_dual(s)
    assert all(d == 0 for d in g.degree.values())


def test_three_strip_path_degrees():
    # 3-box strip with only the two internal edges undrawn
    undrawn = {Edge("V", 1, 0), Edge("V", 2, 0)}
    s = new_board(3, 1, [e for e in edge_universe(3, 1) if e not in undrawn])
    g = build_dual(s)
    assert [g.degree[(x, 0)] for x in range(3)] == [1, 2, 1]


def test_decompose_isolated_loop():
    d = decompose(build_dual(single_loop(8)))
    assert len(d.cycles) == 1 and len(d.chains) == 0
    assert len(d.cycles[0]) == 8


def test_decompose_dumbbell():
    d = decompose(build_dual(dumbbell()))
    # loops pass through degree-3 junctions, so only the connecting chain
    # and the two loop arcs appear as degree-2 components
    assert len(d.junctions) == 2
    assert sorted(len(c) for c in d.chains) == [4, 7, 7]


def test_open_chain_to_outer():
    # 4 boxes in a row, border edges at both ends open
    path = [(0, 0), (1, 0), (2, 0), (3, 0)]
    s = structure_position(
        4, 1, chains=[ChainSpec(tuple(path), ("outer", "w"), ("outer", "e"))]
    )
    d = decompose(build_dual(s))
    assert len(d.chains) == 1
    assert d.chains[0].ends == (OUTER, OUTER)
    assert len(d.chains[0]) == 4


def test_classify_loop_edges_loony():
    s = single_loop(8)
    for e in available_moves(s):
        assert classify_move(s, e) == LOONY


def test_classify_two_chain_middle():
    # isolated 2-chain between two junction-ish anchors: build via outer ends
    path = [(0, 0), (1, 0)]
    s = structure_position(
        2, 1, chains=[ChainSpec(tuple(path), ("outer", "w"), ("outer", "e"))]
    )
    middle = Edge("V", 1, 0)
    assert classify_move(s, middle) == SHORT_CHAIN_MIDDLE
    assert classify_move(s, Edge("V", 0, 0)) == LOONY


def test_classify_capture():
    s = new_board(1, 1, [Edge("H", 0, 0), Edge("H", 0, 1), Edge("V", 0, 0)])
    assert classify_move(s, Edge("V", 1, 0)) == "capture"


def test_classify_one_chain_safe():
    path = [(0, 0)]
    s = structure_position(
        1, 1, chains=[ChainSpec(tuple(path), ("outer", "w"), ("outer", "e"))]
    )
    assert classify_move(s, Edge("V", 0, 0)) == SAFE


def test_classify_all_matches_single():
    s = dumbbell()
    whole = classify_all(s)
    for e in available_moves(s):
        assert whole[e] == classify_move(s, e)


def test_loony_endgame_detection():
    assert is_loony_endgame(single_loop(8))
    assert is_loony_endgame(two_loops())
    assert is_loony_endgame(dumbbell())
    assert not is_loony_endgame(new_board(3, 3))


def test_partition_property():
    for s in (dumbbell(), two_loops(), single_loop(12)):
        g = build_dual(s)
        d = decompose(g)
        deg2 = {b for b in g.degree if b != OUTER and g.degree[b] == 2}
        seen = []
        for ch in d.chains:
            seen.extend(ch.boxes)
        for cy in d.cycles:
            seen.extend(cy.boxes)
        assert sorted(seen) == sorted(deg2)
        assert len(seen) == len(set(seen))
