"""Seeded randomized searches and assemblies: non-ordinary extension
values from marked determinant roots, the M^n fibre-product construction
in both parity cases, a-number constructions, targeted invariant searches,
branch-locus extension, and the two open-question probes."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field as dc_field

from .ff import FieldElement, FiniteField, field
from .poly import Poly, RootList, RootRecord, embed, roots, squarefree_part, gcd
from .cartier import (BranchLocus, HyperellipticModel, ModelError, ProjPoint,
                      detg_marked, group_scheme_label, invariants, is_ordinary,
                      normalize_model, p_rank)
from .cover import (CoverSpec, CoverError, genus_total,
                    hyperelliptic_branch_locus, invariant_report,
                    is_hyperelliptic, quotient_branch_locus,
                    validate_strongly_disjoint)


class BudgetError(RuntimeError):
    """A search exhausted its draw budget; carries the attempt trace."""

    def __init__(self, message: str, trace: dict | None = None):
        super().__init__(message)
        self.trace = trace or {}


@dataclass
class SearchBudget:
    max_draws: int = 200
    seed: int = 0
    tower_cap: int = 2


@dataclass
class ConstructionResult:
    construction: str
    spec: CoverSpec | None
    report: object | None          # InvariantReport
    provenance: dict
    success: bool
    failure: str | None = None
    children: list["ConstructionResult"] = dc_field(default_factory=list)

    def contains_label(self, name: str) -> bool:
        """Whether the aggregate p-torsion contains the named factor,
        searching this report and the provenance chain of quotients."""
        if self.report is not None and name in self.report.labels:
            return True
        return any(c.contains_label(name) for c in self.children)

    def to_json(self) -> dict:
        return {"construction": self.construction,
                "success": self.success,
                "failure": self.failure,
                "spec": None if self.spec is None else self.spec.to_json(),
                "report": None if self.report is None else self.report.to_json(),
                "provenance": self.provenance,
                "children": [c.to_json() for c in self.children]}


def _sample_distinct(F: FiniteField, rng: random.Random, count: int,
                     exclude=()) -> list[FieldElement]:
    taken = {v.coeffs for v in exclude}
    if F.order - len(taken) < count:
        raise BudgetError(f"field of order {F.order} too small for "
                          f"{count} fresh points")
    out = []
    while len(out) < count:
        v = F.random_element(rng)
        if v.coeffs not in taken:
            taken.add(v.coeffs)
            out.append(v)
    return out


def _model_from_values(values, with_infinity: bool = True) -> HyperellipticModel:
    F = values[0].field
    pts = list(values) + ([None] if with_infinity else [])
    return normalize_model(BranchLocus(F, pts))


def _lift_all(values, E: FiniteField) -> list[FieldElement]:
    out = []
    for v in values:
        out.append(embed(v.field, E)(v))
    return out


# -- marked determinant roots -------------------------------------------------


def nonordinary_extensions(lambdas, budget: SearchBudget | None = None) -> RootList:
    """Values t for which the curve branched at {lambda_1..lambda_2g, t, inf}
    is non-ordinary: roots of the marked determinant, excluding t = 0 and
    t equal to one of the lambdas.  distinct_count counts roots in the
    closure after that filtering."""
    budget = budget or SearchBudget()
    F = lambdas[0].field
    D = detg_marked(list(lambdas), F)
    if D.degree < 1:
        return RootList(F, [], 0)
    sf = squarefree_part(D)
    for bad in [F.zero()] + list(lambdas):
        if sf(bad).is_zero():
            sf = sf // Poly(F, [-bad, F.one()])
    if sf.degree < 1:
        return RootList(F, [], 0)
    return roots(sf, m_max=budget.tower_cap, seed=budget.seed)


def igusa_count(p: int) -> tuple[int, bool]:
    """Distinct supersingular values of the marked determinant at genus 1,
    with a squarefree certificate; the count is (p-1)/2."""
    F = field(p)
    D = detg_marked([F.zero(), F.one()], F)
    squarefree = gcd(D, D.derivative()).degree == 0
    return squarefree_part(D).degree, squarefree


# -- the M^n fibre-product construction ---------------------------------------


def _root_passes(lambdas, rec: RootRecord, target_f: int) -> bool:
    """Exact (p-rank, a-number) filter for the curve obtained by adjoining
    the root to the lambda base (a-number must be exactly 1)."""
    E = rec.root.field
    vals = _lift_all(lambdas, E) + [rec.root]
    model = _model_from_values(vals)
    g, f, a, _ = invariants(model)
    return f == target_f and a == 1


def construct_M_to_n(p: int, g: int, n: int,
                     budget: SearchBudget | None = None) -> ConstructionResult:
    """(Z/2)^n cover whose n designated quotients each contribute one copy
    of the supersingular-elliptic factor M to the p-torsion."""
    budget = budget or SearchBudget()
    two = 2 ** (n - 2)
    if n < 2 or p < 2 * n + 1:
        raise ValueError(f"need n >= 2 and p >= 2n+1, got p={p}, n={n}")
    if (g - 1) % two != 0 or g < (n - 1) * two + 1:
        raise ValueError(f"genus {g} inadmissible for n={n}")
    ell = (g - 1) // two
    case1 = (ell % 2) != (n % 2)
    g1 = (ell + 3 - n) // 2 if case1 else (ell + 2 - n) // 2
    rng = random.Random(f"{budget.seed}-mton-{p}-{g}-{n}")
    k0 = 1
    while p ** k0 < 2 * g1 + n + 4:
        k0 += 1
    F = field(p, k0)
    name = f"m-to-{n}"
    for draw in range(budget.max_draws):
        built = (_mton_case1(F, p, g, n, g1, rng, budget) if case1
                 else _mton_case2(F, p, g, n, g1, rng, budget))
        if built is None:
            continue
        spec, trace = built
        ok, diag = validate_strongly_disjoint(spec)
        if not ok:
            continue
        expected = two * (2 * g1 + 1 + n) - 2 ** n + 1 if case1 \
            else two * (2 * g1 + 2 + n) - 2 ** n + 1
        if expected != g or genus_total(spec) != g:
            raise CoverError("genus bookkeeping failed")  # upstream bug
        report = invariant_report(spec)
        floor = n * (g1 - 1) if case1 else n * g1 - 1
        if report.p_rank < floor:
            raise CoverError("p-rank fell below the construction's bound")
        trace.update({"seed": budget.seed, "draws_used": draw + 1,
                      "case": 1 if case1 else 2, "g1": g1,
                      "field": spec.field.to_json()})
        return ConstructionResult(name, spec, report, trace, True)
    return ConstructionResult(
        name, None, None,
        {"seed": budget.seed, "draws_used": budget.max_draws,
         "case": 1 if case1 else 2, "g1": g1},
        False, failure="budget exhausted")


def _mton_case1(F, p, g, n, g1, rng, budget):
    lambdas = _sample_distinct(F, rng, 2 * g1)
    rl = nonordinary_extensions(lambdas, budget)
    chosen = [rec for rec in rl.records if _root_passes(lambdas, rec, g1 - 1)]
    if len(chosen) < n:
        return None
    chosen = chosen[:n]
    L = math.lcm(*[rec.degree for rec in chosen])
    E = field(p, F.k * L)
    lams = _lift_all(lambdas, E)
    etas = _lift_all([rec.root for rec in chosen], E)
    loci = [BranchLocus(E, lams + [eta, None]) for eta in etas]
    trace = {"lambda_base": [v.to_json() for v in lambdas],
             "roots": [v.to_json() for v in etas]}
    return CoverSpec(loci), trace


def _mton_case2(F, p, g, n, g1, rng, budget):
    lambdas = _sample_distinct(F, rng, 2 * g1)
    rl = nonordinary_extensions(lambdas, budget)
    marked = next((rec for rec in rl.records
                   if _root_passes(lambdas, rec, g1 - 1)), None)
    if marked is None:
        return None
    E1 = marked.root.field
    base = _lift_all(lambdas, E1) + [marked.root]
    extra = _sample_distinct(E1, rng, 1, exclude=base + [E1.zero()])[0]
    rl2 = nonordinary_extensions(base + [extra], budget)
    chosen = [rec for rec in rl2.records
              if _root_passes(base + [extra], rec, g1)]
    if len(chosen) < n - 1:
        return None
    chosen = chosen[:n - 1]
    L = math.lcm(*([1] + [rec.degree for rec in chosen]))
    E = field(p, E1.k * L)
    lams = _lift_all(base, E)
    lam_extra = _lift_all([extra], E)[0]
    etas = _lift_all([rec.root for rec in chosen], E)
    loci = [BranchLocus(E, lams + [lam_extra, eta, None]) for eta in etas]
    loci.append(BranchLocus(E, lams + [None]))
    trace = {"lambda_base": [v.to_json() for v in lambdas],
             "marked_root": marked.root.to_json(),
             "extra_point": extra.to_json(),
             "roots": [v.to_json() for v in etas]}
    return CoverSpec(loci), trace


def construct_hyperelliptic_a2(p: int, g: int,
                               budget: SearchBudget | None = None) -> ConstructionResult:
    """Hyperelliptic curve of genus g with a-number 2 and p-rank g-2."""
    if g < 2 or p < 5:
        raise ValueError(f"need g >= 2 and p >= 5, got p={p}, g={g}")
    res = construct_M_to_n(p, g, 2, budget)
    res.construction = "a2"
    if not res.success:
        return res
    r = res.report
    if (r.genus, r.p_rank, r.a_number) != (g, g - 2, 2) or not r.hyperelliptic:
        res.success = False
        res.failure = "aggregate invariants missed the target"
    return res


def construct_hyperelliptic_a3(p: int, g: int,
                               budget: SearchBudget | None = None) -> ConstructionResult:
    """Hyperelliptic curve of odd genus g >= 5 whose p-torsion contains M^3."""
    if g < 5 or g % 2 == 0 or p < 7:
        raise ValueError(f"need odd g >= 5 and p >= 7, got p={p}, g={g}")
    res = construct_M_to_n(p, g, 3, budget)
    res.construction = "a3"
    if not res.success:
        return res
    r = res.report
    pair_rows = [row for row in r.rows if bin(row.S).count("1") == 2]
    m_rows = [row for row in r.rows if bin(row.S).count("1") == 1
              and row.a_number == 1 and row.p_rank == row.genus - 1]
    if (r.a_number < 3 or len(m_rows) < 3 or not r.hyperelliptic
            or any(len(row.locus) != 2 for row in pair_rows)):
        res.success = False
        res.failure = "aggregate invariants missed the target"
    return res


# -- gluing two a-number-2 curves ---------------------------------------------


def _invert_to_infinity(B: BranchLocus) -> BranchLocus:
    """Moebius x -> 1/(x - b0) moving the minimal point to infinity."""
    if B.has_infinity:
        return B
    vals = B.finite_values()
    b0 = min(vals, key=lambda v: v.sort_key())
    pts = [(v - b0).inverse() for v in vals if v != b0] + [None]
    return BranchLocus(B.field, pts)


def _translate_to_zero(B: BranchLocus) -> BranchLocus:
    """Shift so the minimal finite point lands at 0 (infinity fixed)."""
    vals = B.finite_values()
    c = min(vals, key=lambda v: v.sort_key())
    pts = [v - c for v in vals] + ([None] if B.has_infinity else [])
    return BranchLocus(B.field, pts)


def _extract_model(spec: CoverSpec, seed: int = 0) -> HyperellipticModel:
    """Hyperelliptic model of the curve a ConstructionResult describes."""
    if spec.n == 1:
        return normalize_model(spec.loci[0])
    return normalize_model(hyperelliptic_branch_locus(spec, seed))


def construct_a4(p: int, g: int,
                 budget: SearchBudget | None = None) -> ConstructionResult:
    """Curve of genus g >= 7 with a-number at least 4, glued from two
    hyperelliptic a-number-2 curves sharing one or two branch points."""
    budget = budget or SearchBudget()
    if g < 7 or p < 5:
        raise ValueError(f"need g >= 7 and p >= 5, got p={p}, g={g}")
    even = g % 2 == 0
    g1 = g // 2 if even else (g - 1) // 2
    child1 = construct_hyperelliptic_a2(p, g1 - 2 if even else g1 - 1, budget)
    child2 = construct_hyperelliptic_a2(p, 2, budget)
    children = [child1, child2]
    if not (child1.success and child2.success):
        return ConstructionResult("a4", None, None, {"seed": budget.seed},
                                  False, "component construction failed",
                                  children)
    B1 = _invert_to_infinity(_extract_model(child1.spec, budget.seed).locus)
    B2 = _invert_to_infinity(_extract_model(child2.spec, budget.seed).locus)
    if not even:
        B1 = _translate_to_zero(B1)
        B2 = _translate_to_zero(B2)
    E = field(p, math.lcm(B1.field.k, B2.field.k))
    B1 = BranchLocus(E, _lift_all(B1.finite_values(), E) + [None])
    vals2 = _lift_all(B2.finite_values(), E)
    rng = random.Random(f"{budget.seed}-a4-{p}-{g}")
    fixed1 = {v.coeffs for v in B1.finite_values()}
    for draw in range(budget.max_draws):
        if even:
            alpha = _sample_distinct(E, rng, 1, exclude=[E.zero()])[0]
            beta = E.random_element(rng)
            moved = [alpha * v + beta for v in vals2]
        else:
            alpha = _sample_distinct(E, rng, 1, exclude=[E.zero()])[0]
            moved = [alpha * v for v in vals2]
        shared = [v for v in moved if v.coeffs in fixed1]
        if even and shared:
            continue
        if not even and any(not v.is_zero() for v in shared):
            continue
        spec = CoverSpec([B1, BranchLocus(E, moved + [None])])
        ok, _diag = validate_strongly_disjoint(spec)
        if not ok:
            continue
        if genus_total(spec) != g:
            raise CoverError("genus bookkeeping failed")
        report = invariant_report(spec)
        prov = {"seed": budget.seed, "draws_used": draw + 1,
                "parity": "even" if even else "odd",
                "field": E.to_json()}
        if report.a_number < 4:
            return ConstructionResult("a4", spec, report, prov, False,
                                      "aggregate a-number below 4", children)
        return ConstructionResult("a4", spec, report, prov, True,
                                  children=children)
    return ConstructionResult("a4", None, None,
                              {"seed": budget.seed,
                               "draws_used": budget.max_draws},
                              False, "budget exhausted", children)


# -- targeted invariant searches ----------------------------------------------


def _find_with_invariants(p: int, g: int, target_f: int, target_a,
                          budget: SearchBudget) -> HyperellipticModel:
    """Random/guided search for a hyperelliptic curve of genus g with
    p-rank target_f (and a-number target_a unless None).

    Candidate fields F_{p^K} are swept smallest first; at each level the
    branch points are drawn from F_{p^k} for each divisor k of K, with the
    final point a degree-(K/k) root of the marked determinant (non-ordinary
    targets) or a direct sample (ordinary targets)."""
    if target_a is not None:
        group_scheme_label(g, target_f, target_a)  # consistency guard
    rng = random.Random(f"{budget.seed}-find-{p}-{g}-{target_f}-{target_a}")
    combos = []
    for K in range(1, budget.tower_cap + 1):
        for k in range(1, K + 1):
            if K % k != 0:
                continue
            if target_f == g and k != K:
                continue
            combos.append((K, k))
    draws = 0
    round_size = 25

    def attempt(K: int, k: int) -> HyperellipticModel | None:
        F = field(p, k)
        needed = 2 * g + 2 if target_f == g else 2 * g + 1
        if F.order < needed:
            return None
        d = K // k
        if target_f == g:
            vals = _sample_distinct(F, rng, 2 * g + 1)
            model = _model_from_values(vals)
            gg, f, a, _ = invariants(model)
            if f == target_f and (target_a is None or a == target_a):
                return model
            return None
        lambdas = _sample_distinct(F, rng, 2 * g)
        rl = nonordinary_extensions(
            lambdas, SearchBudget(seed=budget.seed, tower_cap=d))
        for rec in rl.records:
            if rec.degree != d:
                continue
            E = rec.root.field
            model = _model_from_values(_lift_all(lambdas, E) + [rec.root])
            gg, f, a, _ = invariants(model)
            if f == target_f and (target_a is None or a == target_a):
                return model
        return None

    # round-robin over the field combinations so a target living in a
    # larger field is reached before the budget drains on smaller ones
    while draws < budget.max_draws:
        progressed = False
        for K, k in combos:
            for _ in range(min(round_size, budget.max_draws - draws)):
                draws += 1
                progressed = True
                model = attempt(K, k)
                if model is not None:
                    return model
        if not progressed:
            break
    raise BudgetError(
        f"no genus-{g} curve with (f,a)=({target_f},{target_a}) found",
        {"p": p, "g": g, "draws_used": draws, "seed": budget.seed,
         "tower_cap": budget.tower_cap})


def find_genus2_with(p: int, target_f: int, target_a: int,
                     budget: SearchBudget | None = None) -> HyperellipticModel:
    """Genus-2 curve with the exact (p-rank, a-number) pair."""
    return _find_with_invariants(p, 2, target_f, target_a,
                                 budget or SearchBudget())


def find_prank_f(p: int, g: int, f: int,
                 budget: SearchBudget | None = None) -> HyperellipticModel:
    """Hyperelliptic curve of genus g with p-rank exactly f."""
    if not 0 <= f <= g:
        raise ValueError(f"p-rank {f} out of range for genus {g}")
    return _find_with_invariants(p, g, f, None, budget or SearchBudget())


# -- extension by new branch points -------------------------------------------


def extend_with_group_scheme(C: HyperellipticModel, s: int,
                             budget: SearchBudget | None = None) -> ConstructionResult:
    """n=2 cover of genus 2g'-1+s whose quotient C_{1,2} is the given
    genus-g' curve, so its p-torsion survives into the aggregate.

    s >= 1 adjoins s fresh points shared by both loci; s = 0 instead
    splits the existing locus, pairing the last two points."""
    budget = budget or SearchBudget()
    B0 = C.locus
    gp = C.genus
    F = B0.field
    if s < 0 or (s == 0 and gp < 2):
        raise ValueError("need s >= 1, or s = 0 with genus >= 2")
    rng = random.Random(f"{budget.seed}-extend-{s}")
    pts = B0.sorted_points()
    name = "extend"
    for draw in range(budget.max_draws):
        if s == 0:
            B1 = BranchLocus(F, pts[:-2])
            B2 = BranchLocus(F, pts[-2:])
        else:
            exclude = [q.value for q in pts if not q.is_infinity]
            etas = _sample_distinct(F, rng, s, exclude=exclude)
            if s % 2 == 0:
                B1 = BranchLocus(F, pts + [ProjPoint(e) for e in etas])
                B2 = BranchLocus(F, etas)
            else:
                B1 = BranchLocus(F, pts[:-1] + [ProjPoint(e) for e in etas])
                B2 = BranchLocus(F, [pts[-1]] + [ProjPoint(e) for e in etas])
        spec = CoverSpec([B1, B2])
        ok, _diag = validate_strongly_disjoint(spec)
        if not ok:
            continue
        if quotient_branch_locus(spec, 3) != B0:
            raise CoverError("extension lost the original branch locus")
        if genus_total(spec) != 2 * gp - 1 + s:
            raise CoverError("genus bookkeeping failed")
        report = invariant_report(spec)
        prov = {"seed": budget.seed, "draws_used": draw + 1, "s": s,
                "base_genus": gp, "field": F.to_json()}
        return ConstructionResult(name, spec, report, prov, True)
    return ConstructionResult(name, None, None,
                              {"seed": budget.seed,
                               "draws_used": budget.max_draws, "s": s},
                              False, "budget exhausted")


def extend_with_ordinary_elliptic(C: HyperellipticModel,
                                  budget: SearchBudget | None = None) -> ConstructionResult:
    """Genus-3 cover from a genus-2 curve: split its six branch points into
    an ordinary elliptic locus of four and a two-point locus, so the
    aggregate is invariants(C) plus one ordinary factor."""
    budget = budget or SearchBudget()
    if C.genus != 2:
        raise ValueError("elliptic extension needs a genus-2 input")
    B0 = C.locus
    F = B0.field
    pts = B0.sorted_points()
    from itertools import combinations
    for quad in combinations(range(6), 4):
        A = [pts[i] for i in quad]
        elliptic = normalize_model(BranchLocus(F, A))
        if not is_ordinary(elliptic):
            continue
        rest = [pts[i] for i in range(6) if i not in quad]
        spec = CoverSpec([BranchLocus(F, A), BranchLocus(F, rest)])
        ok, _diag = validate_strongly_disjoint(spec)
        if not ok:
            continue
        if genus_total(spec) != 3:
            raise CoverError("genus bookkeeping failed")
        report = invariant_report(spec)
        prov = {"seed": budget.seed, "subset": list(quad),
                "field": F.to_json()}
        return ConstructionResult("extend-elliptic", spec, report, prov, True)
    return ConstructionResult("extend-elliptic", None, None,
                              {"seed": budget.seed}, False,
                              "no ordinary elliptic subset")


# -- curves containing N and Q ------------------------------------------------


def _wrap_model(name: str, model: HyperellipticModel, prov: dict) -> ConstructionResult:
    spec = CoverSpec([model.locus])
    return ConstructionResult(name, spec, invariant_report(spec), prov, True)


def construct_with_N(p: int, g: int,
                     budget: SearchBudget | None = None) -> ConstructionResult:
    """Hyperelliptic curve of genus g whose p-torsion contains the
    supersingular non-superspecial surface factor N (genus-2 (0,1))."""
    budget = budget or SearchBudget(max_draws=10 ** 4, tower_cap=4)
    if g < 2:
        raise ValueError("need g >= 2")
    name = "with-n"
    if g == 2:
        try:
            model = find_genus2_with(p, 0, 1, budget)
        except BudgetError as exc:
            return ConstructionResult(name, None, None, exc.trace, False,
                                      str(exc))
        return _wrap_model(name, model, {"seed": budget.seed, "path": "base"})
    if g == 3:
        child = construct_with_N(p, 2, budget)
        if not child.success:
            return ConstructionResult(name, None, None, child.provenance,
                                      False, "base search failed", [child])
        res = extend_with_ordinary_elliptic(_extract_model(child.spec), budget)
    else:
        s = 1 if g % 2 == 0 else 2
        child = construct_with_N(p, (g + 1 - s) // 2, budget)
        if not child.success:
            return ConstructionResult(name, None, None, child.provenance,
                                      False, "recursive step failed", [child])
        model = _extract_model(child.spec, budget.seed)
        res = extend_with_group_scheme(model, s, budget)
    res.construction = name
    res.children = [child]
    if res.success and not res.contains_label("N"):
        res.success = False
        res.failure = "aggregate lost the N factor"
    if res.success and not res.report.hyperelliptic:
        res.success = False
        res.failure = "result not hyperelliptic"
    return res


def construct_with_Q(p: int, g: int,
                     budget: SearchBudget | None = None) -> ConstructionResult:
    """Hyperelliptic curve of genus g (not a power of two) whose p-torsion
    contains the supersingular threefold factor Q (genus-3 (0,1))."""
    budget = budget or SearchBudget(max_draws=10 ** 4, tower_cap=4)
    if g < 3 or (g & (g - 1)) == 0:
        raise ValueError("need g >= 3 and g not a power of two")
    name = "with-q"
    if g == 3:
        try:
            model = _find_with_invariants(p, 3, 0, 1, budget)
        except BudgetError as exc:
            return ConstructionResult(name, None, None, exc.trace, False,
                                      str(exc))
        return _wrap_model(name, model, {"seed": budget.seed, "path": "base"})
    choice = None
    for s in (1, 2, 0):
        if (g + 1 - s) % 2 == 0:
            gp = (g + 1 - s) // 2
            if gp >= 3 and (gp & (gp - 1)) != 0:
                choice = (s, gp)
                break
    if choice is None:
        return ConstructionResult(name, None, None, {"seed": budget.seed},
                                  False, "no admissible halving step")
    s, gp = choice
    child = construct_with_Q(p, gp, budget)
    if not child.success:
        return ConstructionResult(name, None, None, child.provenance, False,
                                  "recursive step failed", [child])
    model = _extract_model(child.spec, budget.seed)
    res = extend_with_group_scheme(model, s, budget)
    res.construction = name
    res.children = [child]
    if res.success and not res.contains_label("Q"):
        res.success = False
        res.failure = "aggregate lost the Q factor"
    return res


# -- open-question probes -----------------------------------------------------


def probe_ordinary_completion(lambdas, budget: SearchBudget | None = None) -> dict:
    """Experiment: search for mu making the curve branched at
    {lambda_1..lambda_2r, mu, inf} ordinary.  A miss is reported data, not
    a nonexistence proof."""
    budget = budget or SearchBudget()
    F = lambdas[0].field
    tried = 0
    for k in range(1, budget.tower_cap + 1):
        E = field(F.p, F.k * k)
        lams = _lift_all(lambdas, E)
        taken = {v.coeffs for v in lams}
        for mu in E:
            if mu.coeffs in taken:
                continue
            if tried >= budget.max_draws:
                break
            tried += 1
            if is_ordinary(_model_from_values(lams + [mu])):
                return {"experiment": True, "found": True,
                        "mu": mu.to_json(), "field": E.to_json(),
                        "tried": tried}
    return {"experiment": True, "found": False, "mu": None, "tried": tried}


def probe_rexact(p: int, budget: SearchBudget | None = None) -> dict:
    """Experiment: test every triple of distinct supersingular values for
    ordinariness of the genus-2 curve branched at {0, 1, inf} plus the
    triple; reports per-triple invariants."""
    budget = budget or SearchBudget()
    if p < 7:
        raise ValueError("need p >= 7 for three supersingular values")
    F = field(p)
    D = detg_marked([F.zero(), F.one()], F)
    rl = roots(D, m_max=2, seed=budget.seed)
    if rl.unresolved:
        raise ValueError("supersingular values outside F_p^2")  # cannot happen
    E = field(p, 2)
    vals = sorted(_lift_all([rec.root for rec in rl.records], E),
                  key=lambda v: v.sort_key())
    from itertools import combinations
    triples = []
    hits = 0
    for trip in combinations(vals, 3):
        model = _model_from_values([E.zero(), E.one()] + list(trip))
        g, f, a, label = invariants(model)
        ordinary = f == 2
        hits += ordinary
        triples.append({"triple": [v.to_json() for v in trip],
                        "p_rank": f, "a_number": a, "ordinary": ordinary})
    return {"experiment": True, "supersingular_values": len(vals),
            "triples_tested": len(triples), "ordinary_hits": hits,
            "triples": triples}
