import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dotboxes.board import (
    BoardError,
    Edge,
    FormatError,
    apply_move,
    available_moves,
    edge_count,
    edge_universe,
    is_terminal,
    new_board,
    parse_board,
    serialize_board,
    strip_history,
    winner,
)


def play_all(s, edges):
    for e in edges:
        s, _ = apply_move(s, e)
    return s


def test_edge_universe_sizes():
    assert len(edge_universe(1, 1)) == 4
    assert len(edge_universe(2, 2)) == 12
    for w, h in [(1, 1), (3, 2), (5, 7)]:
        assert len(edge_universe(w, h)) == edge_count(w, h) == 2 * w * h + w + h


def test_new_board_smallest():
    s = new_board(1, 1)
    assert len(available_moves(s)) == 4


def test_new_board_terminal_full():
    s = new_board(3, 1, edge_universe(3, 1), score_a=5, score_b=3)
    assert is_terminal(s)
    assert winner(s) == "A"
    assert available_moves(s) == []


def test_new_board_rejects_bad_edges():
    with pytest.raises(BoardError):
        new_board(2, 2, [Edge("H", 5, 0)])
    with pytest.raises(BoardError):
        new_board(2, 2, [Edge("H", 0, 0), Edge("H", 0, 0)])


def test_capture_and_extra_turn():
    s = new_board(1, 1)
    s = play_all(s, [Edge("H", 0, 0), Edge("H", 0, 1), Edge("V", 0, 0)])
    # fourth side: mover captures and would keep the turn
    mover = s.to_move
    s2, out = apply_move(s, Edge("V", 1, 0))
    assert out.captured == ((0, 0),)
    assert out.extra_turn
    assert (s2.score_a, s2.score_b) == ((1, 0) if mover == "A" else (0, 1))


def test_no_capture_flips_turn():
    s = new_board(1, 1)
    s2, out = apply_move(s, Edge("H", 0, 0))
    assert not out.captured
    assert s2.to_move == "B"


def test_double_cross_captures_two():
    # 2x1 board, all edges drawn except the shared middle edge V(1,0)
    edges = [e for e in edge_universe(2, 1) if e != Edge("V", 1, 0)]
    s = new_board(2, 1, edges)
    s2, out = apply_move(s, Edge("V", 1, 0))
    assert sorted(out.captured) == [(0, 0), (1, 0)]
    assert out.extra_turn


def test_winner_requires_terminal():
    with pytest.raises(BoardError):
        winner(new_board(1, 1))


def test_draw():
    s = new_board(1, 2, edge_universe(1, 2), score_a=1, score_b=1)
    assert winner(s) == "draw"


def test_conservation_through_playout():
    s = new_board(2, 2, score_a=3, score_b=1)
    for e in edge_universe(2, 2):
        s, _ = apply_move(s, e)
        owned = len(s.owners)
        assert s.score_a + s.score_b == s.handicap_a + s.handicap_b + owned
    assert is_terminal(s)


def test_game_length_equals_undrawn():
    s = new_board(2, 3)
    n = len(available_moves(s))
    count = 0
    while not is_terminal(s):
        s, _ = apply_move(s, available_moves(s)[0])
        count += 1
    assert count == n


def test_serialize_format_exact():
    s = new_board(1, 1)
    assert serialize_board(s) == (
        "dots-and-boxes v1\nsize 1 1\nscore A 0\nscore B 0\nturn A\n"
    )


def test_parse_errors_carry_line_numbers():
    with pytest.raises(FormatError) as ei:
        parse_board("dots-and-boxes v1\nsize 2 2\nscore A 0\nscore B 0\nturn A\ndrawn H 5 0\n")
    assert ei.value.line == 6
    with pytest.raises(FormatError):
        parse_board("not a header\n")


boards = st.tuples(st.integers(1, 4), st.integers(1, 4)).flatmap(
    lambda wh: st.builds(
        lambda drawn, a, b, t: new_board(wh[0], wh[1], drawn, a, b, t),
        st.sets(st.sampled_from(edge_universe(*wh))),
        st.integers(0, 9),
        st.integers(0, 9),
        st.sampled_from(["A", "B"]),
    )
)


@given(boards)
@settings(max_examples=150, deadline=None)
def test_roundtrip_generated(s):
    assert parse_board(serialize_board(s)) == s


@given(boards)
@settings(max_examples=60, deadline=None)
def test_roundtrip_after_play(s):
    moves = available_moves(s)
    for e in moves[: min(4, len(moves))]:
        s, _ = apply_move(s, e)
    assert parse_board(serialize_board(s)) == strip_history(s)


@given(boards)
@settings(max_examples=60, deadline=None)
def test_turn_rule(s):
    for e in available_moves(s)[:6]:
        s2, out = apply_move(s, e)
        if out.captured:
            assert s2.to_move == s.to_move
        elif not is_terminal(s2):
            assert s2.to_move != s.to_move
