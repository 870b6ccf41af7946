import pytest

from dotboxes.compiler import compile_formula
from dotboxes.formula import gpos_solve, make_formula
from dotboxes.strategy import (
    assignment_payoff,
    deviation_probe,
    fred_policy,
    pick_variable,
    play_match,
    trudy_policy,
)


@pytest.fixture(scope="module")
def or2():
    return compile_formula(make_formula(2, [[1, 2]]))


@pytest.fixture(scope="module")
def and2():
    return compile_formula(make_formula(2, [[1], [2]]))


def test_match_satisfiable_wins_by_one(or2):
    res = play_match(or2, replay=True)
    assert res.winner == "A"
    assert res.score_a - res.score_b == 1
    assert res.parity_ok


def test_match_unsatisfiable_fred_wins(and2):
    res = play_match(and2)
    assert res.winner == "B"
    assert res.parity_ok
    assert gpos_solve(make_formula(2, [[1], [2]]))[0] == "Fred"


def test_variable_phase_length(or2):
    res = play_match(or2)
    # n variable-setting picks plus the responses: Trudy's open, Fred's
    # chain meal, Fred's pair move, Trudy's pair-box capture
    assert res.phase_boundary > 0
    assert set(res.assignment) == {1, 2}
    assert sum(res.assignment.values()) == 1  # balanced: one true, one false


def test_static_plan(or2):
    res = play_match(or2, p_trudy=trudy_policy(or2, plan={1}))
    assert res.assignment[1] is True
    assert res.score_a - res.score_b == 1
    res2 = play_match(or2, p_trudy=trudy_policy(or2, plan={2}))
    assert res2.assignment[2] is True
    assert res2.score_a - res2.score_b == 1


def test_score_decomposition(or2):
    st = or2.stats
    res = play_match(or2)
    expected_trudy = or2.handicap[0] + st["n"] // 2 + (
        4 * st["c_sat"] + st["T"] - 2 * st["k"] - 4
    )
    assert res.score_a == expected_trudy


def test_assignment_payoff():
    f = make_formula(4, [[1], [1, 2]])
    # both clauses share variable 1: flipping it covers both at cost one
    assert assignment_payoff(f, frozenset({3, 4})) == 1
    assert assignment_payoff(f, frozenset({1, 2})) == 2


def test_pick_variable_prefers_shared():
    f = make_formula(4, [[2], [2, 3]])
    v = pick_variable(f, frozenset(), frozenset(), True)
    assert v == 2


def test_fred_probe_small(or2):
    rep = deviation_probe(or2, "Fred", samples=25, seed=3)
    assert rep.improvements == []


def test_trudy_probe_small(or2):
    rep = deviation_probe(or2, "Trudy", samples=25, seed=3)
    assert rep.max_gain <= 0
