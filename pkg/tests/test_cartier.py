"""Cartier-Manin layer: matrix entries, invariants, marked determinant."""

import math
import random

import pytest

from ptorsion.ff import field
from ptorsion.cartier import (BranchLocus, ModelError, ProjPoint, a_number,
                              cartier_matrix, detg_marked, detg_value,
                              group_scheme_label, invariants, is_ordinary,
                              normalize_model, p_rank)


def _deuring_roots(p):
    """Supersingular lambda values from the truncated hypergeometric sum
    H(lam) = sum binom((p-1)/2, i)^2 lam^i -- an oracle independent of the
    polynomial layer."""
    m = (p - 1) // 2
    coeffs = [math.comb(m, i) ** 2 % p for i in range(m + 1)]
    out = []
    for lam in range(2, p):
        acc = 0
        for c in reversed(coeffs):
            acc = (acc * lam + c) % p
        if acc == 0:
            out.append(lam)
    return out


@pytest.mark.parametrize("p", [5, 7, 11, 13])
def test_elliptic_hasse_invariant_matches_deuring_oracle(p):
    F = field(p)
    ss = set(_deuring_roots(p))
    for lam in range(2, p):
        B = BranchLocus(F, [0, 1, lam, None])
        model = normalize_model(B)
        A = cartier_matrix(model)
        assert A.genus == 1
        assert A.entries[0][0].is_zero() == (lam in ss)
        assert a_number(model) == (1 if lam in ss else 0)
        assert p_rank(model) == (0 if lam in ss else 1)


def test_naive_half_power_oracle_genus2():
    # brute-force integer expansion of f^((p-1)/2), no Poly involved
    p = 5
    roots = [0, 1, 2, 3, 4]  # y^2 = x(x-1)(x-2)(x-3)(x-4) over F_5
    f = [1]
    for r in roots:
        nxt = [0] * (len(f) + 1)
        for i, c in enumerate(f):
            nxt[i + 1] = (nxt[i + 1] + c) % p
            nxt[i] = (nxt[i] - r * c) % p
        f = nxt
    hp = [1]
    for _ in range((p - 1) // 2):
        nxt = [0] * (len(hp) + len(f) - 1)
        for i, a in enumerate(hp):
            for j, b in enumerate(f):
                nxt[i + j] = (nxt[i + j] + a * b) % p
        hp = nxt
    F = field(p)
    model = normalize_model(BranchLocus(F, roots + [None]))
    A = cartier_matrix(model)
    for i in (1, 2):
        for j in (1, 2):
            assert A.entries[i - 1][j - 1] == F.element(hp[i * p - j])


def test_normalize_moves_a_point_when_needed():
    F = field(7)
    B = BranchLocus(F, [1, 2, 3, 4])
    model = normalize_model(B)
    assert model.genus == 1
    assert model.f.degree == 3
    assert model.moved_point == F.element(1)
    with_inf = normalize_model(BranchLocus(F, [1, 2, 3, None]))
    assert with_inf.moved_point is None


def _moebius_image(B, a, b, c, d):
    """Apply x -> (a x + b)/(c x + d) to a branch locus pointwise."""
    F = B.field
    pts = []
    for pt in B.points:
        if pt.is_infinity:
            pts.append(None if c.is_zero() else ProjPoint(a / c))
        else:
            den = c * pt.value + d
            if den.is_zero():
                pts.append(None)
            else:
                pts.append(ProjPoint((a * pt.value + b) / den))
    return BranchLocus(F, pts)


def test_invariants_survive_moebius_maps():
    rng = random.Random(100)
    for p, k, size in [(5, 1, 6), (7, 1, 6), (5, 2, 8), (3, 2, 6)]:
        F = field(p, k)
        vals = rng.sample(range(F.order), size - 1)
        B = BranchLocus(F, [F.from_index(v) for v in vals] + [None])
        g, f, a, label = invariants(normalize_model(B))
        for _ in range(5):
            while True:
                m = [F.from_index(rng.randrange(F.order)) for _ in range(4)]
                if not (m[0] * m[3] - m[1] * m[2]).is_zero():
                    break
            image = _moebius_image(B, *m)
            g2, f2, a2, label2 = invariants(normalize_model(image))
            assert (g2, f2, a2) == (g, f, a)


def test_detg_marked_degree_and_symmetry():
    F = field(5, 2)
    rng = random.Random(12)
    lams = [F.from_index(v) for v in rng.sample(range(1, 25), 4)]
    D = detg_marked(lams, F)
    assert D.degree <= 2 * (5 - 1) // 2 * 1 + 4  # loose sanity bound
    shuffled = list(lams)
    rng.shuffle(shuffled)
    assert detg_marked(shuffled, F) == D  # symmetric in the branch values


def test_detg_marked_specializes_to_detg_value():
    F = field(7)
    lams = [F.element(v) for v in (1, 2, 3, 4)]
    D = detg_marked(lams, F)
    for mu in (5, 6):
        assert D(F.element(mu)) == detg_value(lams + [F.element(mu)], F)


def test_detg_value_matches_cartier_determinant():
    F = field(5, 2)
    rng = random.Random(21)
    vals = [F.from_index(v) for v in rng.sample(range(25), 5)]
    model = normalize_model(BranchLocus(F, list(vals) + [None]))
    assert detg_value(vals, F) == cartier_matrix(model).det()
    assert is_ordinary(model) == (not detg_value(vals, F).is_zero())


def test_marked_root_gives_nonordinary_curve():
    F = field(7)
    lams = [F.element(v) for v in (1, 2, 3, 5)]
    D = detg_marked(lams, F)
    hits = [mu for mu in F if D(mu).is_zero()]
    for mu in hits:
        if mu.is_zero() or mu in lams:
            continue
        model = normalize_model(BranchLocus(F, [ProjPoint(v) for v in lams]
                                            + [ProjPoint(mu), None]))
        assert not is_ordinary(model)


def test_label_table():
    assert group_scheme_label(2, 0, 1).name == "N"
    assert group_scheme_label(2, 0, 2).name == "M^2"
    assert group_scheme_label(3, 0, 1).name == "Q"
    assert group_scheme_label(1, 0, 1).name == "M"
    assert group_scheme_label(4, 4, 0).name == "(Z/p+mu_p)^4"
    with pytest.raises(ModelError):
        group_scheme_label(2, 1, 0)   # non-ordinary needs a >= 1
    with pytest.raises(ModelError):
        group_scheme_label(2, 3, 0)   # p-rank beyond the genus


def test_repeated_branch_points_rejected():
    F = field(5)
    with pytest.raises(ModelError):
        BranchLocus(F, [0, 1, 1, None])
    with pytest.raises(ModelError):
        normalize_model(BranchLocus(F, [0, 1]))  # too small
