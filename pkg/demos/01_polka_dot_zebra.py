"""Why conjunction is not a fuzzy minimum.

Pina is a poor zebra and a poor polka-dot thing, yet a very good polka-dot
zebra. A t-norm cannot say that; intersecting concept regions can.
"""

import sys
from pathlib import Path

from conceptspaces import (
    FuzzyAssertion,
    build_model,
    combine,
    emit_svg,
    fixture_path,
    load_cspace,
    osherson_smith_witness,
    typicality,
)
from conceptspaces.fuzzy import NORMS, conjunction, evaluate

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_output")
out.mkdir(exist_ok=True)

# the fuzzy reading
zebra = FuzzyAssertion("zebra", "Pina", 0.2)
dots = FuzzyAssertion("polka_dot_thing", "Pina", 0.95)
claim = FuzzyAssertion("polka_dot_zebra", "Pina", 0.97)
f = conjunction(["zebra", "polka_dot_thing"], "Pina")
print("Fuzzy conjunction of zebra(Pina)=0.2 and polka_dot_thing(Pina)=0.95:")
for norm in NORMS:
    print(f"  {norm:12s} -> {evaluate(f, [zebra, dots], norm):.3f}")
print(f"Asserted polka_dot_zebra(Pina)=0.97: {osherson_smith_witness(claim, [zebra, dots]).line()}")

# the geometric reading
m = build_model(load_cspace(fixture_path("polka_dot_zebra.cspace")))
pina = m.points["Pina"]
z, p = m.concept("zebra"), m.concept("polka_dot_thing")
pz = combine(z, p, label="polka_dot_zebra")
print("\nTypicality of Pina as a region-based concept:")
for c in (z, p, pz):
    print(f"  {c.label:16s} prototype={tuple(round(v, 2) for v in c.prototype.coords)}"
          f"  typicality={typicality(c, pina):.3f}")

emit_svg([z, p], out / "polka_dot_zebra.svg", highlight=[pz])
print(f"\nPicture written to {out / 'polka_dot_zebra.svg'}")
