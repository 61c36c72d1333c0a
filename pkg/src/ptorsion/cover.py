"""(Z/2)^n covers of the projective line presented by n branch loci:
quotient loci by membership parity, strong disjointness, genus
bookkeeping, hyperellipticity detection, and the per-quotient invariant
report aggregated through the Jacobian decomposition."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .ff import FieldElement, FiniteField, field, quadratic_character
from .poly import Poly, _linear_roots, embed
from .cartier import BranchLocus, ProjPoint, invariants, normalize_model

MAX_N = 6


class CoverError(ValueError):
    pass


class CoverSpec:
    """n branch loci over one field defining a (Z/2)^n cover."""

    def __init__(self, loci: list[BranchLocus], label: str = ""):
        if not loci:
            raise CoverError("need at least one branch locus")
        if len(loci) > MAX_N:
            raise CoverError(f"n capped at {MAX_N}")
        F = loci[0].field
        for B in loci:
            if B.field != F:
                raise CoverError("branch loci over different fields")
            if len(B) == 0 or len(B) % 2 != 0:
                raise CoverError("each branch locus must be nonempty of even size")
        self.field: FiniteField = F
        self.loci = list(loci)
        self.label = label

    @property
    def n(self) -> int:
        return len(self.loci)

    def union_points(self) -> set[ProjPoint]:
        out: set[ProjPoint] = set()
        for B in self.loci:
            out |= B.points
        return out

    def to_json(self) -> dict:
        return {"field": self.field.to_json(),
                "loci": [B.to_json() for B in self.loci],
                "label": self.label}

    @staticmethod
    def from_json(data: dict) -> "CoverSpec":
        F = FiniteField.from_json(data["field"])
        loci = [BranchLocus.from_json(F, pts) for pts in data["loci"]]
        return CoverSpec(loci, data.get("label", ""))


def subsets(n: int):
    """All nonempty subsets of {1..n} as bitmasks, ascending."""
    return range(1, 1 << n)


def quotient_branch_locus(spec: CoverSpec, S: int) -> BranchLocus:
    """Points lying in an odd number of the loci indexed by S."""
    if not (1 <= S < (1 << spec.n)):
        raise CoverError("subset index out of range")
    pts = []
    for pt in spec.union_points():
        count = sum(1 for i in range(spec.n) if (S >> i) & 1
                    and pt in spec.loci[i])
        if count % 2 == 1:
            pts.append(pt)
    return BranchLocus(spec.field, pts)


def validate_strongly_disjoint(spec: CoverSpec) -> tuple[bool, str | None]:
    seen: dict[frozenset, int] = {}
    for S in subsets(spec.n):
        B_S = quotient_branch_locus(spec, S)
        if B_S.points in seen:
            return False, f"B_S equal for S={seen[B_S.points]:b} and S={S:b}"
        seen[B_S.points] = S
    return True, None


def quotient_genus(spec: CoverSpec, S: int) -> int:
    B_S = quotient_branch_locus(spec, S)
    if len(B_S) % 2 != 0:
        raise CoverError(f"odd quotient locus for S={S:b}")
    return max(len(B_S) // 2 - 1, 0)


def genus_total(spec: CoverSpec) -> int:
    """Genus of the normalized fibre product, cross-checked two ways."""
    n = spec.n
    B = spec.union_points()
    if n == 1:
        return len(B) // 2 - 1
    by_formula = 2 ** (n - 2) * len(B) - 2 ** n + 1
    by_sum = sum(quotient_genus(spec, S) for S in subsets(n))
    if by_formula != by_sum:
        raise CoverError(
            f"genus mismatch: Riemann-Hurwitz gives {by_formula}, "
            f"quotient sum gives {by_sum}")
    return by_formula


def quotient_genus_by_element(spec: CoverSpec, h: tuple[int, ...]) -> int:
    """Genus of the quotient of the cover by the order-2 subgroup <h>:
    the sum of quotient genera over subsets S with sum_{i in S} h_i even."""
    if len(h) != spec.n or not any(h):
        raise CoverError("h must be a nonzero vector of length n")
    total = 0
    for S in subsets(spec.n):
        parity = sum(h[i] for i in range(spec.n) if (S >> i) & 1) % 2
        if parity == 0:
            total += quotient_genus(spec, S)
    return total


def is_hyperelliptic(spec: CoverSpec) -> bool:
    if spec.n == 1:
        return True
    for mask in range(1, 1 << spec.n):
        h = tuple((mask >> i) & 1 for i in range(spec.n))
        if quotient_genus_by_element(spec, h) == 0:
            return True
    return False


@dataclass
class QuotientRow:
    S: int
    locus: BranchLocus
    genus: int
    p_rank: int
    a_number: int
    label: str

    def to_json(self) -> dict:
        return {"S": self.S, "locus": self.locus.to_json(),
                "genus": self.genus, "p_rank": self.p_rank,
                "a_number": self.a_number, "label": self.label}


@dataclass
class InvariantReport:
    rows: list[QuotientRow]
    genus: int
    p_rank: int
    a_number: int
    labels: list[str]
    hyperelliptic: bool
    verification: str = "not run"

    def to_json(self) -> dict:
        return {"rows": [r.to_json() for r in self.rows],
                "genus": self.genus, "p_rank": self.p_rank,
                "a_number": self.a_number, "labels": self.labels,
                "hyperelliptic": self.hyperelliptic,
                "verification": self.verification}


def invariant_report(spec: CoverSpec) -> InvariantReport:
    ok, diag = validate_strongly_disjoint(spec)
    if not ok:
        raise CoverError(f"cover is not strongly disjoint: {diag}")
    rows = []
    total_f = total_a = 0
    labels = []
    for S in subsets(spec.n):
        B_S = quotient_branch_locus(spec, S)
        g_S = max(len(B_S) // 2 - 1, 0)
        if g_S == 0:
            rows.append(QuotientRow(S, B_S, 0, 0, 0, "trivial"))
            continue
        model = normalize_model(B_S)
        g, f, a, label = invariants(model)
        rows.append(QuotientRow(S, B_S, g, f, a, label.name))
        total_f += f
        total_a += a
        labels.append(label.name)
    g_X = genus_total(spec)
    if total_f + total_a > g_X:
        raise CoverError("aggregate invariants exceed the genus")
    return InvariantReport(rows, g_X, total_f, total_a, sorted(labels),
                           is_hyperelliptic(spec))


# -- explicit hyperelliptic model of an n=2 cover -----------------------------


def hyperelliptic_branch_locus(spec: CoverSpec,
                               seed: int = 0) -> BranchLocus:
    """Branch locus of the fibre product itself as a hyperelliptic curve.

    Requires n = 2 with a genus-0 quotient C_T (|B_T| = 2).  The double
    cover X -> C_T ~ P^1 is branched above the union points whose inertia
    element generates the complementary subgroup; those points are pulled
    back through an explicit parametrization of the conic C_T.  The result
    may live in a quadratic extension of the base field."""
    if spec.n != 2:
        raise CoverError("explicit hyperelliptic model implemented for n = 2")
    ok, diag = validate_strongly_disjoint(spec)
    if not ok:
        raise CoverError(f"cover is not strongly disjoint: {diag}")
    target = None
    for S in subsets(2):
        if quotient_genus(spec, S) == 0:
            target = S
            break
    if target is None:
        raise CoverError("fibre product is not hyperelliptic (no genus-0 quotient)")
    B_T = quotient_branch_locus(spec, target)
    # inertia above b: alpha_i = [b in B_i]; X -> C_T ramifies above b iff
    # alpha generates the order-2 subgroup H_T, i.e. alpha != 0 and
    # sum_{i in T} alpha_i even
    ram = []
    for pt in spec.union_points():
        alpha = tuple(1 if pt in B else 0 for B in spec.loci)
        par = sum(alpha[i] for i in range(2) if (target >> i) & 1) % 2
        if par == 0:
            ram.append(pt)
    F = spec.field
    ab = B_T.sorted_points()
    # ratio(x0) = value whose square roots are the two parameter values of
    # the points of C_T above x0
    a_pt, b_pt = ab[0], ab[1]  # sort puts infinity last

    def ratio(pt: ProjPoint) -> FieldElement:
        # pt is never in B_T (its inertia lies in H_T), so no division by 0
        # and no infinite parameter value
        if b_pt.is_infinity:
            # C_T : s^2 = x - a, i.e. x = s^2 + a
            return pt.value - a_pt.value
        if pt.is_infinity:
            return F.one()
        num = pt.value - b_pt.value
        den = pt.value - a_pt.value
        return num * den.inverse()

    values = [ratio(pt) for pt in ram]
    if all(quadratic_character(v) >= 0 for v in values):
        E, phi = F, embed(F, F)
    else:
        E = field(F.p, 2 * F.k)
        phi = embed(F, E)
    new_pts: list[ProjPoint] = []
    rng = random.Random(f"{seed}-hyp")
    for v in values:
        vv = phi(v)
        sq = Poly(E, [-vv, E.zero(), E.one()])  # s^2 - v
        rts = sorted(_linear_roots(sq, rng), key=lambda r: r.sort_key())
        if len(rts) != 2:
            raise CoverError("square root extraction failed")
        new_pts.extend(ProjPoint(r) for r in rts)
    return BranchLocus(E, new_pts)
