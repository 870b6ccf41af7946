import itertools

import pytest
from hypothesis import given, settings
import hypothesis.strategies as st

from dotboxes.formula import (
    FRED,
    TRUDY,
    FormulaError,
    GposState,
    evaluate,
    gpos_initial,
    gpos_solve,
    make_formula,
    pad_even,
    parse_formula,
    serialize_formula,
)


def test_parse_basic():
    f = parse_formula("p poscnf 2 1\n1 2 0\n")
    assert f.n == 2 and f.m == 1 and f.clauses == (frozenset({1, 2}),)


def test_parse_rejects_negative_literal():
    with pytest.raises(FormulaError):
        parse_formula("p poscnf 2 1\n1 -2 0\n")


def test_parse_rejects_out_of_range():
    with pytest.raises(FormulaError):
        parse_formula("p poscnf 2 1\n1 3 0\n")


def test_parse_paper_example():
    text = "p poscnf 4 3\n1 2 0\n1 3 0\n2 4 0\n"
    f = parse_formula(text)
    assert f.n == 4 and f.m == 3


def test_comments_allowed():
    f = parse_formula("c hello\np poscnf 1 1\nc mid\n1 0\n")
    assert f.m == 1


def test_evaluate():
    f = make_formula(2, [[1, 2]])
    assert evaluate(f, {1: True, 2: False})
    f2 = make_formula(2, [[1], [2]])
    assert not evaluate(f2, {1: True, 2: False})
    assert evaluate(make_formula(1, []), {1: False})  # vacuous conjunction


def test_evaluate_requires_all_assigned():
    with pytest.raises(FormulaError):
        evaluate(make_formula(2, [[1]]), {1: True})


def test_pad_even():
    f = make_formula(3, [[1, 2]])
    g = pad_even(f)
    assert g.n == 4 and g.clauses == f.clauses
    assert pad_even(g) is g


def test_gpos_basic():
    assert gpos_solve(make_formula(2, [[1, 2]]))[0] == TRUDY
    assert gpos_solve(make_formula(2, [[1], [2]]))[0] == FRED
    assert gpos_solve(make_formula(4, [[1, 2], [1, 3], [2, 4]]))[0] == TRUDY


def brute_winner(f):
    def rec(ts, fs):
        free = [v for v in range(1, f.n + 1) if v not in ts and v not in fs]
        if not free:
            return evaluate(f, {v: v in ts for v in range(1, f.n + 1)})
        if len(ts) == len(fs):
            return any(rec(ts | {v}, fs) for v in free)
        return all(rec(ts, fs | {v}) for v in free)

    return TRUDY if rec(frozenset(), frozenset()) else FRED


def all_formulas(n, max_m):
    subsets = []
    for r in range(1, n + 1):
        subsets.extend(itertools.combinations(range(1, n + 1), r))
    for m in range(1, max_m + 1):
        for clauses in itertools.combinations(subsets, m):
            yield make_formula(n, [list(c) for c in clauses])


def test_gpos_matches_bruteforce():
    for n in (1, 2, 3):
        for f in all_formulas(n, 2):
            assert gpos_solve(f)[0] == brute_winner(f)


def test_pad_even_preserves_winner():
    for n in (1, 2, 3, 4, 5):
        for f in itertools.islice(all_formulas(n, 2), 40):
            assert gpos_solve(pad_even(f))[0] == gpos_solve(f)[0]


def test_monotonicity_adding_literal():
    # enlarging a clause never flips the winner from Trudy to Fred
    for n in (2, 3, 4):
        for f in itertools.islice(all_formulas(n, 2), 60):
            base = gpos_solve(f)[0]
            for i, cl in enumerate(f.clauses):
                for v in range(1, n + 1):
                    if v in cl:
                        continue
                    grown = list(map(sorted, (list(c) for c in f.clauses)))
                    grown[i] = sorted(set(cl) | {v})
                    g = make_formula(n, grown)
                    if base == TRUDY:
                        assert gpos_solve(g)[0] == TRUDY


def test_strategy_soundness_exhaustive_replay():
    for n in (2, 3, 4):
        for f in itertools.islice(all_formulas(n, 2), 25):
            w, strat = gpos_solve(f)

            def rec(state):
                free = [
                    v
                    for v in range(1, f.n + 1)
                    if v not in state.assigned_true
                    and v not in state.assigned_false
                ]
                if not free:
                    won = evaluate(
                        f, {v: v in state.assigned_true for v in range(1, f.n + 1)}
                    )
                    return won == (w == TRUDY)
                nxt = FRED if state.to_pick == TRUDY else TRUDY
                if state.to_pick == w:
                    v = strat(state)
                    assert v in free
                    if state.to_pick == TRUDY:
                        return rec(GposState(state.assigned_true | {v}, state.assigned_false, nxt))
                    return rec(GposState(state.assigned_true, state.assigned_false | {v}, nxt))
                results = []
                for v in free:
                    if state.to_pick == TRUDY:
                        results.append(rec(GposState(state.assigned_true | {v}, state.assigned_false, nxt)))
                    else:
                        results.append(rec(GposState(state.assigned_true, state.assigned_false | {v}, nxt)))
                return all(results)

            assert rec(gpos_initial(f))


@given(st.integers(1, 6), st.data())
@settings(max_examples=40, deadline=None)
def test_roundtrip_random_formulas(n, data):
    m = data.draw(st.integers(1, 3))
    clauses = data.draw(
        st.lists(
            st.sets(st.integers(1, n), min_size=1, max_size=n),
            min_size=m,
            max_size=m,
        )
    )
    f = make_formula(n, [sorted(c) for c in clauses])
    assert parse_formula(serialize_formula(f)) == f
