"""Fast geometry, then slow symbols.

A nearest-prototype guess (type 1) is followed by a taxonomy lookup
(type 2) whose isa edges are partly asserted and partly discovered from
region containment.
"""

from conceptspaces import (
    build_model,
    classify_taxonomy,
    dual_categorize,
    fixture_path,
    load_cspace,
)
from conceptspaces.taxonomy import taxonomy_edges, tessellation_of

m = build_model(load_cspace(fixture_path("animals.cspace")))
tax = m.taxonomy

asserted = set(tax.asserted_isa)
edges, exact = taxonomy_edges(tax)
for child, parent in sorted(edges - asserted):
    how = "exact" if exact[(child, parent)] else "sampled"
    print(f"discovered: {child} isa {parent} ({how} containment)")

for label in ("puppy", "dog", "animal"):
    pos = classify_taxonomy(tax, label)
    print(f"{label:7s} above={list(pos.superconcepts)} below={list(pos.subconcepts)}")

tess = tessellation_of(tax, ["dog", "cat", "bird"])
for coords in [(5.2, 6.6), (8.5, 7.5), (1.0, 2.0)]:
    r = dual_categorize(tax, tess, m.space.point(*coords))
    print(f"{coords}: type 1 -> {r.type1_label} (typicality {r.typicality:.2f}), "
          f"type 2 -> {' < '.join(r.type2_ancestors)}")
