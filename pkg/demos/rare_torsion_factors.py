"""Hunting curves whose Jacobians contain the rare group schemes N and Q.

N is the p-torsion of a supersingular, non-superspecial abelian surface:
p-rank 0 with a-number 1 at genus 2.  Such curves are scarce -- the seeded
search walks a tower of extension fields until one appears, then glues it
into covers of every genus from 2 to 6 while keeping the N factor alive.
"""

from ptorsion.cartier import cartier_matrix, invariants
from ptorsion.search import (SearchBudget, construct_with_N,
                             extend_with_ordinary_elliptic, find_genus2_with)
from ptorsion.zeta import l_polynomial_of_model, p_rank_from_zeta

p = 5
budget = SearchBudget(max_draws=10 ** 4, seed=1, tower_cap=4)

model = find_genus2_with(p, 0, 1, budget)
g, f, a, label = invariants(model)
print(f"found {label} over {model.field!r}: genus {g}, "
      f"p-rank {f}, a-number {a}")
print("Cartier matrix rank:", cartier_matrix(model).rank())

L = l_polynomial_of_model(model)
print(f"L-polynomial {L.coeffs}; degree of L mod {p} = "
      f"{p_rank_from_zeta(L, p)} (supersingular)")

# genus 3 with torsion N + (ordinary elliptic factor)
ext = extend_with_ordinary_elliptic(model)
print(f"\nelliptic extension: genus {ext.report.genus}, "
      f"aggregate ({ext.report.p_rank}, {ext.report.a_number}), "
      f"factors {ext.report.labels}")

print("\ncarriers of N at every genus:")
for g_target in range(2, 7):
    res = construct_with_N(p, g_target)
    assert res.success and res.contains_label("N")
    print(f"  genus {g_target}: factors {res.report.labels}, "
          f"hyperelliptic {res.report.hyperelliptic}")
