"""Flatten, summarize and discover a directly-follows graph.

Run with ``python3 demos/05_analysis.py``.
"""

# %% Statistics
from ocelkit.analysis import discover_ocdfg, flatten, render_ocdfg_dot, statistics, traces_to_csv
from ocelkit.data import fixture_path
from ocelkit.formats import read_log

log = read_log(fixture_path("order-mini.xmlocel")).log
print(statistics(log).to_text())

# %% Flattening onto items: e1 touches both items, so it appears in both traces
traces = flatten(log, "item")
for t in traces:
    print(t.case_id, [s.activity for s in t.steps])
print(traces_to_csv(traces))

# %% Object-centric directly-follows graph, one colour per object type
g = discover_ocdfg(log)
for (a, b, ot), n in sorted(g.arcs.items()):
    print(f"{a} -> {b} [{ot}] x{n}")
print(render_ocdfg_dot(g))
