"""The non-ordinary locus along a line of branch configurations.

Fix 2g branch values and let one more point t vary: the determinant of
the Cartier-Manin matrix becomes a polynomial in t of degree g(p-1)/2
for generic choices.  Its roots are exactly the values of t where the
curve branched at {lambda_1, ..., lambda_2g, t, infinity} drops rank.
"""

import random

from ptorsion.ff import field
from ptorsion.cartier import detg_marked
from ptorsion.search import SearchBudget, nonordinary_extensions, probe_rexact

p, g = 7, 2
F = field(p, 2)
rng = random.Random(0)

lams = [F.from_index(v) for v in rng.sample(range(1, F.order), 2 * g)]
print(f"branch values over GF({p}^2):", [v.to_json() for v in lams])

D = detg_marked(lams, F)
print(f"marked determinant degree {D.degree} "
      f"(generic bound g(p-1)/2 = {g * (p - 1) // 2})")

rl = nonordinary_extensions(lams, SearchBudget(tower_cap=2))
print(f"{rl.distinct_count} distinct non-ordinary completions in the closure")
for rec in rl.records:
    print(f"  root {rec.root.to_json()} of degree {rec.degree} "
          f"(multiplicity {rec.multiplicity})")
if rl.unresolved:
    print("  unresolved factors (degree, multiplicity):", rl.unresolved)

# an experiment from the same toolbox: take the three supersingular values
# of the elliptic family and ask whether adjoining all of them to {0, 1}
# still leaves the genus-2 curve ordinary
out = probe_rexact(7, SearchBudget(seed=0))
print(f"\nsupersingular triple experiment at p = 7: "
      f"{out['ordinary_hits']}/{out['triples_tested']} triples ordinary")
