import pytest

from dotboxes.gadgets import (
    GadgetError,
    clause_harness_run,
    template,
    validate_gadget,
)


def test_wire_template_shape():
    t = template("wire", k=2)
    assert len(t.cycles) == 4
    assert {p.name for p in t.ports} == {"in", "out"}
    for _, loop in t.cycles:
        assert len(loop) >= 8


def test_wire_bad_params():
    with pytest.raises(GadgetError):
        template("wire", k=0)


def test_unknown_kind():
    with pytest.raises(GadgetError):
        template("nope")


@pytest.mark.parametrize("k", [1, 2])
def test_wire_profile(k):
    rep = validate_gadget(template("wire", k=k))
    assert rep.ok
    for _, cond, exp, got in rep.entries:
        flip = cond["in"] and cond["out"]
        assert got == (k - 1 if flip else k)


def test_or_profile():
    rep = validate_gadget(template("or"))
    assert rep.ok
    for _, cond, exp, got in rep.entries:
        assert got == (0 if all(cond.values()) else 1)


def test_variable_profile_and_sequences():
    rep = validate_gadget(template("variable", fanout=1))
    assert rep.ok
    by_label = {}
    for label, cond, exp, got in rep.entries:
        by_label.setdefault(label, []).append((cond, got))
    assert {"set_false", "set_true"} <= set(by_label)
    for cond, got in by_label["set_true"]:
        assert got == 2
    for cond, got in by_label["set_false"]:
        assert got == (1 if any(cond.values()) else 2)


def test_variable_fanout_zero():
    # dummy variables keep a fan-out cycle with no outgoing wires
    rep = validate_gadget(template("variable", fanout=0))
    assert rep.ok


def test_variable_nonloony_pair_declared():
    t = template("variable", fanout=1)
    assert len(t.nonloony_edges) == 2


def test_crossover_profile():
    rep = validate_gadget(template("crossover"))
    assert rep.ok
    for _, cond, exp, got in rep.entries:
        flip = (cond["in1"] and cond["out1"]) or (cond["in2"] and cond["out2"])
        assert got == (4 if flip else 5)


def test_clause_profile_and_yield():
    rep = validate_gadget(template("clause"))
    assert rep.ok
    yields = {
        cond.get("in"): got
        for label, cond, exp, got in rep.entries
        if label == "clause_region_yield"
    }
    assert yields == {False: 4, True: 2}


def test_clause_harness_direct():
    total_true, region_true = clause_harness_run(True)
    total_false, region_false = clause_harness_run(False)
    assert region_true == 4 and region_false == 2
    assert total_true - total_false == 3  # +4 clause cycle, -1 pair box


@pytest.mark.slow
def test_wire3_profile():
    rep = validate_gadget(template("wire", k=3))
    assert rep.ok
