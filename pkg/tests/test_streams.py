"""Stream representations: evaluation, classification, closure operations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from itl.errors import MalformedSpec, ProgramDivergence
from itl.kernel import (
    EPDiff,
    Program,
    Ramp,
    classify_stream,
    identity_stream,
    make_up_stream,
    offset_values,
    recurrence_program,
    reindex_stream,
    scale_values,
    stream_eval,
)


def ep_streams():
    return st.builds(
        EPDiff,
        st.integers(0, 4),
        st.lists(st.integers(1, 6), max_size=3),
        st.lists(st.integers(1, 6), min_size=1, max_size=4),
    )


def ramps():
    return st.builds(Ramp, st.integers(0, 4), st.integers(1, 3), st.integers(1, 4))


def test_make_up_stream_examples():
    ident = make_up_stream({"kind": "ep", "start": 0, "prefix": [], "cycle": [1]})
    assert [ident.value(n) for n in range(5)] == [0, 1, 2, 3, 4]
    doubler = make_up_stream({"kind": "ep", "start": 0, "prefix": [], "cycle": [2]})
    assert [doubler.value(n) for n in range(4)] == [0, 2, 4, 6]
    squares = make_up_stream({"kind": "ramp", "start": 0, "alpha": 2, "beta": 1})
    assert [squares.value(n) for n in range(6)] == [0, 1, 4, 9, 16, 25]


def test_make_up_stream_rejects_malformed():
    with pytest.raises(MalformedSpec):
        make_up_stream({"kind": "ep", "start": 0, "prefix": [0], "cycle": [1]})
    with pytest.raises(MalformedSpec):
        make_up_stream({"kind": "ep", "start": 0, "prefix": [], "cycle": []})
    with pytest.raises(MalformedSpec):
        make_up_stream({"kind": "ramp", "start": 0, "alpha": 0, "beta": 1})
    with pytest.raises(MalformedSpec):
        make_up_stream({"kind": "program", "id": "opaque"})
    with pytest.raises(MalformedSpec):
        make_up_stream({"kind": "mystery"})


def test_stream_eval_examples():
    doubler = EPDiff(0, (), (2,))
    assert stream_eval(doubler, 5) == 10
    squares = Ramp(0, 2, 1)
    assert stream_eval(squares, 3) == 9
    assert stream_eval(EPDiff(7, (3,), (1, 2)), 0) == 7


@given(ep_streams(), st.integers(0, 3000))
@settings(max_examples=150)
def test_ep_strictly_increasing(f, n):
    assert f.value(n + 1) > f.value(n)


@given(ramps(), st.integers(0, 3000))
@settings(max_examples=150)
def test_ramp_strictly_increasing(f, n):
    assert f.value(n + 1) > f.value(n)
    assert f.diff(n) == f.alpha * n + f.beta


def test_strict_increase_long_range():
    for f in [EPDiff(0, (5, 1), (2, 1, 4)), Ramp(3, 1, 1)]:
        prev = f.value(0)
        for n in range(1, 10_001):
            cur = f.value(n)
            assert cur > prev
            prev = cur


def test_classify_examples():
    tr = classify_stream(EPDiff(0, (), (2,)))
    assert tr.in_gt_k(1) is True and tr.in_gt_k(2) is False
    assert tr.in_gt_id is False and tr.divergent_diffs is False
    tr2 = classify_stream(Ramp(0, 2, 1))
    assert tr2.divergent_diffs is True and tr2.in_gt_id is True
    tr3 = classify_stream(identity_stream())
    assert tr3.in_gt_k(0) is True and tr3.in_gt_k(1) is False


@given(ep_streams())
@settings(max_examples=100)
def test_classify_matches_brute_force(f):
    tr = classify_stream(f)
    span = len(f.prefix_diffs) + len(f.cycle_diffs)
    diffs = [f.diff(n) for n in range(span)]
    assert tr.min_diff == min(diffs)
    for k in range(0, 8):
        assert tr.in_gt_k(k) == all(d > k for d in diffs)


def test_program_budget_and_monotonicity_guard():
    counter = recurrence_program("count", 0, lambda v, n: v + 1, budget=10)
    assert counter.value(5) == 5
    with pytest.raises(ProgramDivergence):
        counter.value(50)
    broken = Program("broken", lambda: iter([0, 0, 1]))
    with pytest.raises(MalformedSpec):
        broken.value(2)


def test_reindex_examples():
    ident = identity_stream()
    assert [reindex_stream(ident, "pairs").value(n) for n in range(4)] == [0, 2, 4, 6]
    sq = reindex_stream(ident, "squares")
    assert [sq.value(n) for n in range(5)] == [0, 1, 4, 9, 16]
    shifted = reindex_stream(EPDiff(0, (), (2,)), "shift")
    assert [shifted.value(n) for n in range(3)] == [2, 4, 6]


@given(ep_streams(), st.sampled_from(["pairs", "shift"]))
@settings(max_examples=100)
def test_reindex_preserves_ep_kind(f, schedule):
    out = reindex_stream(f, schedule)
    assert isinstance(out, EPDiff)
    expected = {"pairs": lambda n: f.value(2 * n), "shift": lambda n: f.value(n + 1)}
    for n in range(30):
        assert out.value(n) == expected[schedule](n)


@given(ramps(), st.sampled_from(["pairs", "shift"]))
@settings(max_examples=60)
def test_reindex_preserves_ramp_kind(f, schedule):
    out = reindex_stream(f, schedule)
    assert isinstance(out, Ramp)
    expected = {"pairs": lambda n: f.value(2 * n), "shift": lambda n: f.value(n + 1)}
    for n in range(30):
        assert out.value(n) == expected[schedule](n)


@given(ep_streams(), st.integers(1, 5))
@settings(max_examples=80)
def test_scale_and_offset(f, factor):
    scaled = scale_values(f, factor)
    assert isinstance(scaled, EPDiff)
    moved = offset_values(f, factor)
    for n in range(25):
        assert scaled.value(n) == factor * f.value(n)
        assert moved.value(n) == f.value(n) + factor
