"""Trace one execution and slice it, streaming, without storing the trace.

The interpreter emits an event per executed statement (plus call, return, and
loop-exit markers). The slicer folds that stream into a handful of live sets;
afterwards any (statement, variable) pair that executed can be queried, as can
whole objects (member-wise union).
"""

from __future__ import annotations

from dynslice import build_cdg, init, load, run
from dynslice.events import StmtExecuted
from dynslice.fixtures import SAMPLE_INPUTS, SAMPLE_SOURCE

program = load(SAMPLE_SOURCE)
graph = build_cdg(program)
result = run(program, SAMPLE_INPUTS)
print(f"run: {result.status}, {len(result.events)} events")
print(f"outputs: {result.outputs}")
print()

# feed the event stream; this is all the slicer ever sees
state = init(graph).consume(result.events)

print("execution order:",
      [e.id for e in result.events if isinstance(e, StmtExecuted)])
print()

for node, var in [(2, "p"), (17, "T1.a"), (19, "T2.a"), (16, "T4.a")]:
    ids = sorted(state.slice_of(node, var))
    print(f"DyanSlice({node}, {var}) = {ids}")

print()
for obj in ("T1", "T2", "T3", "T4"):
    print(f"DyanSlice({obj}) = {sorted(state.slice_of_object(obj))}")

print()
print(f"state after the run: {state.cardinality()} stored ids across "
      f"{len(state.active_data)} variables; peak was {state.peak_cardinality}")
