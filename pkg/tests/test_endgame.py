import pytest

from dotboxes.board import apply_move
from dotboxes.cycles import enumerate_cycles, max_disjoint_cycles, max_disjoint_from_list
from dotboxes.dual import build_dual
from dotboxes.endgame import (
    EndgameError,
    chain_final_value,
    compute_stats,
    controlled_value,
    simulate_controlled_play,
)
from dotboxes.generator import (
    dumbbell,
    generate_loony_positions,
    ring_with_chord,
    single_loop,
    two_loops,
)
import itertools


def test_enumerate_single_loop():
    assert len(enumerate_cycles(build_dual(single_loop(8)))) == 1


def test_enumerate_dumbbell():
    assert len(enumerate_cycles(build_dual(dumbbell()))) == 2


def test_enumerate_theta_three_cycles():
    # ring plus chord: ring, lens, and outer merged cycle
    assert len(enumerate_cycles(build_dual(ring_with_chord()))) == 3


def test_cap_overflow():
    from dotboxes.cycles import CycleCapExceeded

    with pytest.raises(CycleCapExceeded):
        enumerate_cycles(build_dual(ring_with_chord()), cap=2)


def test_max_disjoint_matches_exhaustive():
    for s in (dumbbell(), two_loops(), ring_with_chord()):
        cycles = enumerate_cycles(build_dual(s))
        cnt, _ = max_disjoint_from_list(cycles)
        # brute force over all subsets
        best = 0
        for r in range(len(cycles), 0, -1):
            for combo in itertools.combinations(range(len(cycles)), r):
                sets = [set(cycles[i].boxes) for i in combo]
                if all(
                    not (sets[i] & sets[j])
                    for i in range(len(sets))
                    for j in range(i + 1, len(sets))
                ):
                    best = max(best, r)
                    break
        assert cnt == best


def test_controlled_value_pinned():
    assert controlled_value(single_loop(8)) == 0
    assert controlled_value(two_loops()) == 4
    assert controlled_value(dumbbell()) == 6


def test_controlled_value_requires_loony():
    from dotboxes.board import new_board

    with pytest.raises(EndgameError):
        controlled_value(new_board(2, 2))


def test_simulate_pinned():
    for s, want in [
        (single_loop(8), (0, 8)),
        (two_loops(), (4, 12)),
        (dumbbell(), (6, 14)),
    ]:
        _, sel = max_disjoint_cycles(build_dual(s))
        opener, controller, log = simulate_controlled_play(s, sel)
        assert (opener, controller) == want


def test_simulate_replay_consistency():
    s = dumbbell()
    _, sel = max_disjoint_cycles(build_dual(s))
    opener, controller, log = simulate_controlled_play(s, sel)
    st = s
    for e in log:
        st, _ = apply_move(st, e)
    assert (st.score_a, st.score_b) == (opener, controller)
    assert not [e for e in log if log.count(e) > 1]


def test_appendix_identity_on_family():
    for s in generate_loony_positions(25, seed=11):
        stats, _ = compute_stats(s)
        assert stats.T == 2 * stats.ell + 2 * stats.k


def test_stats_dumbbell():
    stats, sel = compute_stats(dumbbell())
    assert (stats.c, stats.k, stats.T, stats.ell) == (2, 2, 6, 1)


def test_chain_final_diagnostic():
    stats, _ = compute_stats(dumbbell())
    assert chain_final_value(stats) == 4 * 2 + 2 * 1 - 2
