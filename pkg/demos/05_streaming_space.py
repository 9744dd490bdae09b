"""Why streaming matters: slicer state stays flat while the trace grows.

The slicer keeps one set per live variable, test, and recorded answer; slice
sets saturate after a few loop iterations, so running the same loop a thousand
times more does not cost a byte more. The dependence-graph oracle, which keeps
every statement occurrence, grows linearly with the trace.
"""

from __future__ import annotations

from dynslice import build_cdg, build_ddg, load, run, slice_events
from dynslice.fixtures import STREAM_SOURCE

program = load(STREAM_SOURCE)
graph = build_cdg(program)
print(STREAM_SOURCE)
print(f"{'iterations':>10} {'events':>8} {'peak slicer state':>18} "
      f"{'oracle nodes':>13}")
for n in (10, 100, 1000, 10000, 100000):
    result = run(program, (n,), budget=10 * n + 100)
    state = slice_events(graph, result.events)
    ddg = build_ddg(result.events, graph)
    print(f"{n:>10} {len(result.events):>8} {state.peak_cardinality:>18} "
          f"{ddg.node_count:>13}")
