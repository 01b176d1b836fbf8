"""Space and time: a non-transitive "right of", and objects that vanish.

Around a round table "to the right of" stops being transitive. Along a
trajectory, identity survives an occlusion if we extrapolate motion rather
than trust proximity.
"""

import sys
from pathlib import Path

from conceptspaces import (
    SeatingFrame,
    build_model,
    emit_svg,
    fixture_path,
    load_cspace,
    reidentify,
    right_of,
    transitivity_check,
)
from conceptspaces.dynamics import reid_costs

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

table = build_model(load_cspace(fixture_path("round_table.cspace"))).frame
for x, y in [("C", "B"), ("B", "A"), ("C", "A")]:
    print(f"right_of({x}, {y}) = {right_of(table, x, y)}")
rep = transitivity_check(table)
print(f"round table transitive? {rep.transitive}; counterexamples {rep.counterexamples}")
bench = SeatingFrame.linear({k: i for i, k in enumerate("ABCDE")})
print(f"bench transitive? {transitivity_check(bench).transitive}")
emit_svg([table], out / "round_table.svg")

m = build_model(load_cspace(fixture_path("crossing.cspace")))
print("\nCost of each pre/post pairing (extrapolated position error):")
print(reid_costs(m.pre, m.post).round(3))
r = reidentify(m.pre, m.post)
for match in r:
    print(f"  {match.pre_id} -> {match.post_id}  cost={match.cost:.2e}")
emit_svg(m.pre + m.post, out / "crossing.svg")
print(f"Pictures written to {out}")
