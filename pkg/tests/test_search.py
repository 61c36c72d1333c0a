"""Seeded searches and constructions: budgets, targets, provenance."""

import pytest

from ptorsion.ff import field
from ptorsion.cartier import invariants
from ptorsion.search import (BudgetError, SearchBudget, construct_a4,
                             construct_hyperelliptic_a2,
                             construct_hyperelliptic_a3, construct_M_to_n,
                             construct_with_N, construct_with_Q,
                             extend_with_group_scheme,
                             extend_with_ordinary_elliptic, find_genus2_with,
                             find_prank_f, igusa_count,
                             nonordinary_extensions, probe_ordinary_completion,
                             probe_rexact)


def test_igusa_count_small_primes():
    for p in (5, 7, 11):
        count, squarefree = igusa_count(p)
        assert count == (p - 1) // 2
        assert squarefree


def test_nonordinary_extensions_excludes_zero_and_lambdas():
    F = field(7, 2)
    lams = [F.from_index(v) for v in (3, 9, 17, 30)]
    rl = nonordinary_extensions(lams, SearchBudget(tower_cap=2))
    forbidden = {v.coeffs for v in lams} | {F.zero().coeffs}
    for rec in rl.records:
        if rec.degree == 1:
            assert rec.root.coeffs not in forbidden
        # every explicit root really kills the determinant
        model_vals = [v for v in lams]
        from ptorsion.search import _lift_all, _model_from_values
        E = rec.root.field
        model = _model_from_values(_lift_all(model_vals, E) + [rec.root])
        from ptorsion.cartier import is_ordinary
        assert not is_ordinary(model)


def test_a2_hits_exact_invariants():
    for p, g in [(5, 2), (7, 3)]:
        res = construct_hyperelliptic_a2(p, g, SearchBudget(200, seed=1))
        assert res.success
        r = res.report
        assert (r.genus, r.p_rank, r.a_number) == (g, g - 2, 2)
        assert r.hyperelliptic
        assert res.provenance["draws_used"] <= 200


def test_a2_is_seed_deterministic():
    r1 = construct_hyperelliptic_a2(5, 3, SearchBudget(200, seed=9))
    r2 = construct_hyperelliptic_a2(5, 3, SearchBudget(200, seed=9))
    assert r1.to_json() == r2.to_json()


def test_a3_contains_three_supersingular_factors():
    res = construct_hyperelliptic_a3(7, 5, SearchBudget(200, seed=0))
    assert res.success
    assert res.report.labels.count("M") >= 3
    assert res.report.a_number >= 3
    assert res.report.hyperelliptic


def test_a3_preconditions():
    with pytest.raises(ValueError):
        construct_hyperelliptic_a3(7, 4, SearchBudget())  # wrong parity class


def test_m_to_n_respects_prank_floor():
    res = construct_M_to_n(5, 4, 2, SearchBudget(300, seed=2))
    assert res.success
    # each designated quotient carries one supersingular factor
    carrying = [lab for lab in res.report.labels
                if lab == "M" or lab.endswith("+M")]
    assert len(carrying) >= 2
    assert res.report.a_number >= 2


def test_a4_reaches_a_number_four():
    for p, g in [(5, 8), (5, 7)]:
        res = construct_a4(p, g, SearchBudget(500, seed=0))
        assert res.success, res.failure
        assert res.report.genus == g
        assert res.report.a_number >= 4
        assert res.children  # glued from two constituent covers


def test_find_genus2_with_exact_pair():
    model = find_genus2_with(5, 1, 1, SearchBudget(500, seed=0))
    g, f, a, label = invariants(model)
    assert (g, f, a) == (2, 1, 1)


def test_find_prank_f_and_budget_failure():
    model = find_prank_f(5, 2, 2, SearchBudget(100, seed=0))
    assert invariants(model)[1] == 2
    with pytest.raises(BudgetError) as err:
        find_prank_f(5, 3, 0, SearchBudget(5, seed=0))
    assert err.value.trace["draws_used"] == 5


def test_extend_keeps_base_torsion():
    base = find_prank_f(5, 2, 1, SearchBudget(200, seed=3))
    g0, f0, a0, _ = invariants(base)
    for s in (1, 2):
        res = extend_with_group_scheme(base, s, SearchBudget(100, seed=1))
        assert res.success
        assert res.report.genus == 2 * g0 - 1 + s
        assert res.report.p_rank >= f0
        if s <= 2:
            assert res.report.hyperelliptic


def test_extend_split_variant():
    base = find_prank_f(7, 3, 3, SearchBudget(200, seed=5))
    res = extend_with_group_scheme(base, 0, SearchBudget(100, seed=1))
    assert res.success
    assert res.report.genus == 2 * 3 - 1


def test_elliptic_extension_gives_genus3():
    base = find_genus2_with(5, 0, 1, SearchBudget(10 ** 4, seed=1, tower_cap=4))
    res = extend_with_ordinary_elliptic(base)
    assert res.success
    assert res.report.genus == 3
    assert (res.report.p_rank, res.report.a_number) == (1, 1)
    assert "N" in res.report.labels


def test_construct_with_N_marks_provenance():
    res = construct_with_N(5, 4)
    assert res.success
    assert res.contains_label("N")
    assert res.report.hyperelliptic
    assert res.children


def test_construct_with_Q_small_prime():
    res = construct_with_Q(3, 3, SearchBudget(4000, seed=0, tower_cap=4))
    assert res.success
    assert res.report.labels == ["Q"]
    res5 = construct_with_Q(3, 5, SearchBudget(4000, seed=0, tower_cap=4))
    assert res5.success
    assert res5.contains_label("Q")


def test_construct_with_Q_rejects_powers_of_two():
    with pytest.raises(ValueError):
        construct_with_Q(3, 4, SearchBudget())


def test_probe_ordinary_completion_reports_experiment():
    F = field(5)
    out = probe_ordinary_completion([F.element(1), F.element(2)],
                                    SearchBudget(50, seed=0))
    assert out["experiment"]
    assert out["tried"] <= 50
    if out["found"]:
        assert out["mu"] is not None


def test_probe_rexact_counts_triples():
    out = probe_rexact(7, SearchBudget(seed=0))
    assert out["experiment"]
    assert out["supersingular_values"] == 3  # closure roots of a cubic
    assert out["triples_tested"] == 1
    assert 0 <= out["ordinary_hits"] <= out["triples_tested"]
