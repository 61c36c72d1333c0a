"""Warm-up: supersingular Legendre curves and the Hasse invariant.

The elliptic curve branched at {0, 1, lambda, infinity} is non-ordinary
exactly when the single Cartier-Manin entry c_(p-1) vanishes.  Igusa's
classical count says this happens for exactly (p-1)/2 values of lambda in
the algebraic closure.  We tabulate the rational ones and cross-check
against point counts.
"""

from ptorsion.ff import field
from ptorsion.cartier import BranchLocus, cartier_matrix, invariants, normalize_model
from ptorsion.search import igusa_count
from ptorsion.zeta import count_hyperelliptic, l_polynomial_of_model

for p in (5, 7, 11, 13):
    count, squarefree = igusa_count(p)
    print(f"p = {p}: {count} supersingular lambda values in the closure "
          f"(squarefree: {squarefree})")
    F = field(p)
    for lam in range(2, p):
        model = normalize_model(BranchLocus(F, [0, 1, lam, None]))
        c = cartier_matrix(model).entries[0][0]
        g, f, a, label = invariants(model)
        N1 = count_hyperelliptic(model, 1)
        tag = "supersingular" if f == 0 else "ordinary"
        # Yui's criterion at genus one: c = 0 <=> N_1 = p + 1
        assert c.is_zero() == (N1 == p + 1)
        if f == 0:
            L = l_polynomial_of_model(model)
            print(f"  lambda = {lam:2d}: {tag}, N_1 = {N1}, L = {L.coeffs}")
    print()
