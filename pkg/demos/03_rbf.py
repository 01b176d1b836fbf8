"""An RBF network is a prototype system in disguise.

Train one unit per class from fruit exemplars, read the units back as a
tessellation, and watch a chimera sit on the border between lion and goat.
"""

import numpy as np

from conceptspaces import (
    build_model,
    categorize,
    classify,
    detect_chimera,
    fixture_path,
    load_cspace,
    to_conceptual_space,
    train_rbf,
)
from conceptspaces.formats import network_to_cspace
from conceptspaces.rbf import classify_many
from conceptspaces.tessellation import categorize_many

fruit = build_model(load_cspace(fixture_path("fruit.cspace")))
net = train_rbf(fruit.exemplars, k_per_class=1, seed=42)
print("Trained network:")
print(network_to_cspace(net))

tess, concepts = to_conceptual_space(net)
probe = fruit.space.point(5.0, 5.5)
c = classify(net, probe)
print(f"probe {probe.coords}: network says {c.label} ({c.confidence:.3f}), "
      f"nearest prototype cell says {categorize(tess, probe)}")

# equal widths make the two readings agree everywhere
equal = train_rbf(fruit.exemplars, seed=42, width=1.0)
tess_eq, _ = to_conceptual_space(equal)
xs = np.random.default_rng(0).uniform(0, 10, (1000, 2))
# both return the index of the winning unit / prototype
agree = int(np.sum(classify_many(equal, xs) == categorize_many(tess_eq, xs)))
print(f"equal-width network vs tessellation: {agree}/1000 probes agree")

chim = build_model(load_cspace(fixture_path("chimera.cspace")))
for name in ("chimera", "cub"):
    r = detect_chimera(chim.network, chim.points[name])
    print(f"{name:8s} ambiguous={r.ambiguous} ratio={r.ratio:.3f} labels={r.top_labels}")
