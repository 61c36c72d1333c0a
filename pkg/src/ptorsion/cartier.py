"""Branch-locus models of hyperelliptic curves and their p-torsion
invariants: the matrix of half-power coefficients, p-rank, a-number, the
non-ordinarity determinant in a marked branch point, and group-scheme
labels for low genus."""

from __future__ import annotations

from dataclasses import dataclass

from .ff import FieldElement, FiniteField
from .poly import Poly, det_poly_matrix, matrix_det, matrix_rank


class ModelError(ValueError):
    pass


class ProjPoint:
    """A point of the projective line: a field element or infinity."""

    __slots__ = ("value",)

    def __init__(self, value: FieldElement | None):
        self.value = value

    @staticmethod
    def infinity() -> "ProjPoint":
        return _INF

    @staticmethod
    def finite(value: FieldElement) -> "ProjPoint":
        return ProjPoint(value)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPoint) and self.value == other.value

    def __hash__(self) -> int:
        return hash(("proj", self.value))

    def sort_key(self):
        if self.value is None:
            return (1, ())
        return (0, self.value.sort_key())

    def __repr__(self) -> str:
        return "inf" if self.is_infinity else repr(self.value)

    def to_json(self):
        return "inf" if self.is_infinity else self.value.to_json()


_INF = ProjPoint(None)
INFINITY = _INF


class BranchLocus:
    """A finite set of distinct points of the projective line over one field."""

    __slots__ = ("field", "points")

    def __init__(self, F: FiniteField, points):
        pts = []
        for pt in points:
            if isinstance(pt, ProjPoint):
                if pt.value is not None and pt.value.field != F:
                    raise ModelError("branch point in a different field")
                pts.append(pt)
            elif pt is None:
                pts.append(_INF)
            else:
                pts.append(ProjPoint(F.element(pt)))
        if len(set(pts)) != len(pts):
            raise ModelError("repeated branch point")
        self.field = F
        self.points = frozenset(pts)

    def __len__(self) -> int:
        return len(self.points)

    def __contains__(self, pt: ProjPoint) -> bool:
        return pt in self.points

    def __eq__(self, other) -> bool:
        return (isinstance(other, BranchLocus) and other.field == self.field
                and other.points == self.points)

    def __hash__(self) -> int:
        return hash((self.field, self.points))

    def sorted_points(self) -> list[ProjPoint]:
        return sorted(self.points, key=lambda pt: pt.sort_key())

    def finite_values(self) -> list[FieldElement]:
        return [pt.value for pt in self.sorted_points() if not pt.is_infinity]

    @property
    def has_infinity(self) -> bool:
        return _INF in self.points

    def genus(self) -> int:
        """Genus of the double cover branched here (|B| even)."""
        if len(self.points) % 2 != 0:
            raise ModelError("branch locus of odd cardinality")
        return len(self.points) // 2 - 1

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(p) for p in self.sorted_points()) + "}"

    def to_json(self) -> list:
        return [p.to_json() for p in self.sorted_points()]

    @staticmethod
    def from_json(F: FiniteField, data: list) -> "BranchLocus":
        pts = []
        for item in data:
            if item == "inf":
                pts.append(_INF)
            elif isinstance(item, int):
                pts.append(ProjPoint(F.element(item)))
            else:
                pts.append(ProjPoint(F.element(item)))
        return BranchLocus(F, pts)


@dataclass
class HyperellipticModel:
    """Normalized affine equation y^2 = f(x) with the branch point moved
    to infinity recorded (f monic squarefree of degree 2g+1)."""

    locus: BranchLocus
    f: Poly
    genus: int
    moved_point: FieldElement | None  # b0 with x -> 1/(x - b0), or None

    @property
    def field(self) -> FiniteField:
        return self.locus.field

    def to_json(self) -> dict:
        return {"field": self.field.to_json(),
                "branch_locus": self.locus.to_json(),
                "genus": self.genus}


def normalize_model(B: BranchLocus) -> HyperellipticModel:
    """Monic squarefree odd-degree model for the double cover branched at B.

    If infinity is not in B, the minimal point (coefficient-vector order)
    is sent there by x -> 1/(x - b0)."""
    if len(B) % 2 != 0 or len(B) < 4:
        raise ModelError(f"branch locus must have even cardinality >= 4, got {len(B)}")
    F = B.field
    g = len(B) // 2 - 1
    if B.has_infinity:
        f = Poly.from_roots(F, B.finite_values())
        moved = None
    else:
        b0 = min(B.finite_values(), key=lambda v: v.sort_key())
        rts = [(v - b0).inverse() for v in B.finite_values() if v != b0]
        f = Poly.from_roots(F, rts)
        moved = b0
    assert f.degree == 2 * g + 1
    return HyperellipticModel(B, f, g, moved)


@dataclass
class CartierMatrix:
    """g x g matrix with (i, j) entry the x^(ip-j) coefficient of
    f^((p-1)/2), 1-based indices."""

    entries: list[list[FieldElement]]
    genus: int
    field: FiniteField

    def rank(self) -> int:
        return matrix_rank(self.entries)

    def det(self) -> FieldElement:
        return matrix_det(self.entries, self.field)


def cartier_matrix(model: HyperellipticModel) -> CartierMatrix:
    F = model.field
    g = model.genus
    hp = _half_power(model.f)
    p = F.p
    entries = [[hp[i * p - j] for j in range(1, g + 1)] for i in range(1, g + 1)]
    return CartierMatrix(entries, g, F)


def _half_power(f: Poly) -> Poly:
    return f ** ((f.field.p - 1) // 2)


def a_number(model: HyperellipticModel) -> int:
    return model.genus - cartier_matrix(model).rank()


def p_rank(model: HyperellipticModel) -> int:
    """Rank of the g-fold semilinear product A^(sigma^(g-1)) ... A^(sigma) A,
    sigma the absolute (p-power) Frobenius; stable within g steps."""
    A = cartier_matrix(model)
    g = model.genus
    if g == 0:
        return 0
    prod = A.entries
    twisted = A.entries
    for _ in range(g - 1):
        twisted = [[e.frobenius(1) for e in row] for row in twisted]
        prod = _mat_mul(twisted, prod, model.field)
    return matrix_rank(prod)


def _mat_mul(a, b, F: FiniteField):
    n = len(a)
    return [[sum((a[i][l] * b[l][j] for l in range(n)), F.zero())
             for j in range(n)] for i in range(n)]


def is_ordinary(model: HyperellipticModel) -> bool:
    return not cartier_matrix(model).det().is_zero()


# -- determinant with a marked branch point -----------------------------------


def detg_marked(lambdas, F: FiniteField | None = None) -> Poly:
    """Determinant of the half-power coefficient matrix for the curve
    branched at {lambda_1, ..., lambda_2g, t, infinity}, as a polynomial
    in the marked point t."""
    lambdas = [x if isinstance(x, FieldElement) else F.element(x)
               for x in lambdas]
    if not lambdas:
        raise ModelError("need at least two fixed branch values")
    if len(set(lambdas)) != len(lambdas):
        raise ModelError("repeated branch value")
    return _detg_marked_any(lambdas)


def _detg_marked_any(lambdas) -> Poly:
    """As detg_marked but without the distinctness guard (used for the
    two-points-collide specializations)."""
    F = lambdas[0].field
    if len(lambdas) % 2 != 0:
        raise ModelError("number of fixed branch values must be even (2g)")
    g = len(lambdas) // 2
    p = F.p
    # f(x) = (x - t) * prod (x - lambda_i), coefficients in F[t]
    fx = [Poly(F, [F.zero(), -F.one()]), Poly.one(F)]  # [-t, 1]
    for lam in lambdas:
        fx = _bimul(fx, [Poly(F, [-lam]), Poly.one(F)], F)
    hp = _bipow(fx, (p - 1) // 2, F)
    zero = Poly.zero(F)

    def coeff(r: int) -> Poly:
        return hp[r] if 0 <= r < len(hp) else zero

    M = [[coeff(i * p - j) for j in range(1, g + 1)] for i in range(1, g + 1)]
    return det_poly_matrix(M, g * (p - 1) // 2)


def _bimul(a: list[Poly], b: list[Poly], F: FiniteField) -> list[Poly]:
    out = [Poly.zero(F)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return out


def _bipow(a: list[Poly], e: int, F: FiniteField) -> list[Poly]:
    result = [Poly.one(F)]
    while e:
        if e & 1:
            result = _bimul(result, a, F)
        a = _bimul(a, a, F)
        e >>= 1
    return result


def detg_value(lambdas, F: FiniteField | None = None) -> FieldElement:
    """det of the coefficient matrix for the curve y^2 = prod (x - lambda_i)
    with 2g+1 values given (repeats allowed; pure evaluation)."""
    lambdas = [x if isinstance(x, FieldElement) else F.element(x)
               for x in lambdas]
    FF = lambdas[0].field
    if len(lambdas) % 2 != 1:
        raise ModelError("need an odd number (2g+1) of branch values")
    g = len(lambdas) // 2
    f = Poly.from_roots(FF, lambdas)
    hp = _half_power(f)
    p = FF.p
    M = [[hp[i * p - j] for j in range(1, g + 1)] for i in range(1, g + 1)]
    return matrix_det(M, FF)


# -- group-scheme labels ------------------------------------------------------


@dataclass(frozen=True)
class PTorsionLabel:
    name: str
    p_rank: int
    a_number: int

    def __str__(self) -> str:
        return self.name


def group_scheme_label(g: int, f: int, a: int) -> PTorsionLabel:
    """Label of the p-torsion group scheme determined by (genus, p-rank,
    a-number) where the classification is decisive (g <= 3 special cases)."""
    if not (0 <= f <= g) or a < 0 or f + a > g:
        raise ModelError(f"inconsistent invariants (g={g}, f={f}, a={a})")
    if f < g and a == 0:
        raise ModelError("non-ordinary curves have a-number >= 1")
    ord_part = "Z/p+mu_p"
    if g == 1:
        return PTorsionLabel(ord_part if f == 1 else "M", f, a)
    if g == 2:
        if f == 2:
            return PTorsionLabel(f"({ord_part})^2", f, a)
        if f == 1:
            return PTorsionLabel(f"({ord_part})+M", f, a)
        if (f, a) == (0, 2):
            return PTorsionLabel("M^2", f, a)
        if (f, a) == (0, 1):
            return PTorsionLabel("N", f, a)
    if g == 3 and (f, a) == (0, 1):
        return PTorsionLabel("Q", f, a)
    if f == g:
        return PTorsionLabel(f"({ord_part})^{g}", f, a)
    return PTorsionLabel(f"Unknown(f={f},a={a})", f, a)


def invariants(model: HyperellipticModel) -> tuple[int, int, int, PTorsionLabel]:
    g = model.genus
    f = p_rank(model)
    a = a_number(model)
    return g, f, a, group_scheme_label(g, f, a)
