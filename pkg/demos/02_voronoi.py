"""Prototypes carve a space into Voronoi cells.

Five random prototypes induce a tessellation; nearest-prototype
categorization and explicit cell polygons tell the same story.
"""

import sys
from pathlib import Path

import numpy as np

from conceptspaces import Tessellation, categorize, emit_svg, euclidean_space, tessellate_2d
from conceptspaces.tessellation import categorize_many

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

space = euclidean_space(["hue", "size"], 0, 10)
rng = np.random.default_rng(1)
names = ["apple", "cherry", "melon", "plum", "lime"]
t = Tessellation(space, tuple(names), tuple(space.point(*p) for p in rng.uniform(0, 10, (5, 2))))

cells = tessellate_2d(t, (0, 0, 10, 10))
for c in cells:
    print(f"{c.label:7s} area={c.area:6.2f}  vertices={len(c.polygon)}")
print(f"total area {sum(c.area for c in cells):.6f}")

probe = space.point(4.0, 7.5)
print(f"\n{probe.coords} is categorized as {categorize(t, probe)!r}")

xs = rng.uniform(0, 10, (2000, 2))
inside = sum(cells[i].contains(x) for x, i in zip(xs, categorize_many(t, xs)))
print(f"{inside}/2000 random probes lie in the cell of their nearest prototype")

emit_svg(cells, out / "voronoi.svg", bbox=(0, 0, 10, 10))
print(f"Picture written to {out / 'voronoi.svg'}")
