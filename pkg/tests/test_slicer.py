from __future__ import annotations

import pytest

from dynslice import build_cdg, init, load, run, slice_events
from dynslice.fixtures import BYREF_SOURCE, LOOP_SOURCE, STREAM_SOURCE
from dynslice.slicer import CriterionError

from walkthrough import OBJECT_SLICES, replay


def test_walkthrough_table():
    state, checked = replay()
    assert checked == 38  # pins the table size against silent shrinkage
    assert state.executed == set(range(1, 25))


def test_final_dyn_entries(sample_state):
    assert sample_state.slice_of(2, "p") == {2}
    assert sample_state.slice_of(16, "T4.a") == {2, 5, 8, 11, 13, 15, 17, 21, 23}
    assert sample_state.slice_of(19, "T2.a") == {8, 11, 17}
    # per-display entries survive later executions with other receivers
    assert sample_state.slice_of(19, "T1.a") == {2, 5, 17}
    assert sample_state.slice_of(19, "T4.a") == {2, 5, 8, 11, 13, 15, 17, 21, 23}


def test_object_slices(sample_state):
    for name, want in OBJECT_SLICES.items():
        assert sample_state.slice_of_object(name) == want


def test_state_is_quiescent_after_run(sample_state):
    assert sample_state.call_stack == []
    assert sample_state.active_call == frozenset()
    assert sample_state.active_return == frozenset()
    assert sample_state.active_control == {}
    assert sample_state.recount() == sample_state.cardinality()
    assert sample_state.events == 64
    assert sample_state.updates > 0


def test_unknown_criteria(sample_state):
    with pytest.raises(CriterionError):
        sample_state.slice_of(99, "p")
    with pytest.raises(CriterionError):
        sample_state.slice_of(2, "nosuch")
    with pytest.raises(CriterionError):
        sample_state.slice_of_object("T9")


def test_criteria_enumeration(sample_state):
    crit = sample_state.criteria()
    assert crit == sorted(crit)
    assert (2, "p") in crit
    assert (16, "T4.a") in crit
    assert len(crit) == 56


def test_fresh_state_replays_identically(sample_cdg, sample_run):
    a = slice_events(sample_cdg, sample_run.events)
    b = init(sample_cdg).consume(sample_run.events)
    assert a.dyn_table == b.dyn_table
    assert a.active_data == b.active_data
    assert a.peak_cardinality == b.peak_cardinality


def test_loop_control_slice_reset(loop_program, loop_cdg):
    events = run(loop_program, (2,)).events
    state = slice_events(loop_cdg, events)
    # inside the loop, 6 sees the loop through data; 8 must not see it at all
    assert state.slice_of(6, "s") == {1, 2, 3, 4, 5}
    assert state.slice_of(8, "t") == {7}
    assert state.slice_of(7, "t") == {7}
    assert state.active_control == {}


def test_loop_zero_iterations(loop_program, loop_cdg):
    state = slice_events(loop_cdg, run(loop_program, (0,)).events)
    assert state.slice_of(3, "n") == {1}
    assert state.slice_of(6, "s") == {2}
    assert state.slice_of(8, "t") == {7}


def test_loop_body_slices_grow_then_saturate(loop_program, loop_cdg):
    state = slice_events(loop_cdg, run(loop_program, (3,)).events)
    assert state.slice_of(4, "s") == {1, 2, 3, 4, 5}
    assert state.slice_of(5, "n") == {1, 3, 5}
    assert state.slice_of(6, "s") == {1, 2, 3, 4, 5}


def test_by_ref_actual_inherits_formal_slice():
    program = load(BYREF_SOURCE)
    state = slice_events(build_cdg(program), run(program, (7,)).events)
    assert state.slice_of(5, "x") == {1, 2, 3, 4}
    assert state.slice_of(4, "r") == {1, 2, 3, 4}


def test_streaming_state_is_bounded():
    program = load(STREAM_SOURCE)
    graph = build_cdg(program)
    peaks = []
    for n in (10, 1000):
        result = run(program, (n,), budget=10 * n + 100)
        assert result.ok
        state = slice_events(graph, result.events)
        assert state.recount() == state.cardinality()
        peaks.append(state.peak_cardinality)
    assert peaks[0] == peaks[1]


def test_cardinality_counter_matches_recount(sample_cdg, sample_run):
    state = init(sample_cdg)
    for ev in sample_run.events:
        state.feed(ev)
        assert state.recount() == state.cardinality()
    assert state.peak_cardinality >= state.cardinality()
