"""Dense univariate polynomial algebra over a finite field.

Covers arithmetic (schoolbook/Karatsuba), gcd, square-free analysis with
the characteristic-p p-th-root recursion, root finding in the field and
in freshly built extensions (distinct-degree then Cantor-Zassenhaus
splitting), embeddings between extensions of one prime field, and
determinants of polynomial matrices by evaluation-interpolation.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field

from .ff import FieldElement, FiniteField, field as make_field

KARATSUBA_THRESHOLD = 32


class PolyError(ValueError):
    pass


class Poly:
    """Coefficients low-to-high over one field; no trailing zeros."""

    __slots__ = ("field", "coeffs")

    def __init__(self, F: FiniteField, coeffs):
        cs = [F.element(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = F
        self.coeffs = tuple(cs)

    @staticmethod
    def zero(F: FiniteField) -> "Poly":
        return Poly(F, [])

    @staticmethod
    def one(F: FiniteField) -> "Poly":
        return Poly(F, [1])

    @staticmethod
    def x(F: FiniteField) -> "Poly":
        return Poly(F, [0, 1])

    @staticmethod
    def from_roots(F: FiniteField, roots) -> "Poly":
        out = Poly.one(F)
        for r in roots:
            out = out * Poly(F, [-F.element(r), F.one()])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, i: int) -> FieldElement:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return self.field.zero()

    def lead(self) -> FieldElement:
        if not self.coeffs:
            raise PolyError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def _check(self, other: "Poly") -> None:
        if not isinstance(other, Poly) or other.field != self.field:
            raise PolyError("polynomials over different fields")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(self.field, [-c for c in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Poly.zero(self.field)
        return Poly(self.field, _mul(list(self.coeffs), list(other.coeffs),
                                     self.field))

    def scale(self, c: FieldElement) -> "Poly":
        return Poly(self.field, [a * c for a in self.coeffs])

    def shift(self, n: int) -> "Poly":
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return Poly(self.field, [self.field.zero()] * n + list(self.coeffs))

    def __divmod__(self, other: "Poly"):
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        F = self.field
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly.zero(F), self
        inv_lead = other.lead().inverse()
        quo = [F.zero()] * (dq + 1)
        oc = other.coeffs
        for i in range(dq, -1, -1):
            c = rem[i + len(oc) - 1] * inv_lead
            if not c.is_zero():
                quo[i] = c
                for j, o in enumerate(oc):
                    rem[i + j] = rem[i + j] - c * o
        return Poly(F, quo), Poly(F, rem[:len(oc) - 1])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = divmod(self, other)
        if not r.is_zero():
            raise PolyError("inexact polynomial division")
        return q

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise PolyError("negative polynomial power")
        result = Poly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def powmod(self, e: int, m: "Poly") -> "Poly":
        result = Poly.one(self.field) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            base = (base * base) % m
            e >>= 1
        return result

    def derivative(self) -> "Poly":
        F = self.field
        return Poly(F, [self.coeffs[i] * F.element(i)
                        for i in range(1, len(self.coeffs))])

    def __call__(self, x: FieldElement) -> FieldElement:
        acc = self.field.zero()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.lead().inverse())

    # -- comparison --------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, Poly) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((self.field, self.coeffs))

    def sort_key(self):
        return (self.degree, tuple(c.sort_key() for c in self.coeffs))

    def __repr__(self) -> str:
        if self.is_zero():
            return "Poly(0)"
        return "Poly(" + " + ".join(
            f"{c!r}*x^{i}" for i, c in enumerate(self.coeffs) if c) + ")"

    def to_json(self) -> dict:
        return {"field": self.field.to_json(),
                "coeffs": [c.to_json() for c in self.coeffs]}


def _mul(a, b, F: FiniteField):
    if min(len(a), len(b)) < KARATSUBA_THRESHOLD:
        return _mul_school(a, b, F)
    return _mul_karatsuba(a, b, F)


def _mul_school(a, b, F: FiniteField):
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                out[i + j] = out[i + j] + ai * bj
    return out


def _mul_karatsuba(a, b, F: FiniteField):
    n = max(len(a), len(b))
    if min(len(a), len(b)) < KARATSUBA_THRESHOLD:
        return _mul_school(a, b, F)
    h = n // 2
    a0, a1 = a[:h], a[h:]
    b0, b1 = b[:h], b[h:]
    z0 = _mul(a0, b0, F) if a0 and b0 else []
    z2 = _mul(a1, b1, F) if a1 and b1 else []
    s1 = _list_add(a0, a1, F)
    s2 = _list_add(b0, b1, F)
    z1 = _mul(s1, s2, F) if s1 and s2 else []
    z1 = _list_sub(_list_sub(z1, z0, F), z2, F)
    out = [F.zero()] * (len(a) + len(b) - 1)
    for i, c in enumerate(z0):
        out[i] = out[i] + c
    for i, c in enumerate(z1):
        out[i + h] = out[i + h] + c
    for i, c in enumerate(z2):
        out[i + 2 * h] = out[i + 2 * h] + c
    return out


def _list_add(a, b, F):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else F.zero()) +
            (b[i] if i < len(b) else F.zero()) for i in range(n)]


def _list_sub(a, b, F):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else F.zero()) -
            (b[i] if i < len(b) else F.zero()) for i in range(n)]


def gcd(f: Poly, g: Poly) -> Poly:
    while not g.is_zero():
        f, g = g, f % g
    return f.monic() if not f.is_zero() else f


def half_power(f: Poly) -> Poly:
    """f^((p-1)/2) fully expanded, p the characteristic of f's field."""
    return f ** ((f.field.p - 1) // 2)


def pth_root(f: Poly) -> Poly:
    """The p-th root of a polynomial with zero derivative (all exponents p|e)."""
    F = f.field
    # c^(1/p) = c^(p^(k-1)) in F_{p^k}; the identity on the prime field
    return Poly(F, [f[i].frobenius(F.k - 1)
                    for i in range(0, f.degree + 1, F.p)])


def squarefree_part(f: Poly) -> Poly:
    if f.is_zero():
        raise PolyError("square-free part of the zero polynomial")
    f = f.monic()
    if f.degree == 0:
        return f
    d = f.derivative()
    if d.is_zero():
        return squarefree_part(pth_root(f))
    # w carries each factor whose multiplicity is not divisible by p, once
    w = f.exact_div(gcd(f, d))
    rem = f
    while True:
        g = gcd(rem, w)
        if g.degree == 0:
            break
        rem = rem.exact_div(g)
    # rem is now a p-th power holding the factors with multiplicity p*e
    if rem.degree == 0:
        return w
    return (w * squarefree_part(pth_root(rem))).monic()


# -- embeddings ---------------------------------------------------------------


class Embedding:
    """Field embedding F_{p^k} -> F_{p^K} (k | K), fixed by a chosen root
    of the small field's modulus; F_p-linear, deterministic."""

    def __init__(self, src: FiniteField, dst: FiniteField, root: FieldElement):
        self.src = src
        self.dst = dst
        self.root = root
        powers = [dst.one()]
        for _ in range(src.k - 1):
            powers.append(powers[-1] * root)
        self._powers = powers
        # K x k matrix of the embedding in F_p bases, row-reduced lazily
        self._solve_cache = None

    def __call__(self, a: FieldElement) -> FieldElement:
        if a.field != self.src:
            if a.field == self.dst:
                return a
            raise PolyError("element not in the embedding's source field")
        acc = self.dst.zero()
        for c, pw in zip(a.coeffs, self._powers):
            if c:
                acc = acc + pw.field.element([c * x % self.dst.p
                                              for x in pw.coeffs])
        return acc

    def map_poly(self, f: Poly) -> Poly:
        return Poly(self.dst, [self(c) for c in f.coeffs])

    def preimage(self, b: FieldElement) -> FieldElement | None:
        """The a in the source field with phi(a) = b, or None."""
        p, k, K = self.src.p, self.src.k, self.dst.k
        if self._solve_cache is None:
            cols = [list(pw.coeffs) for pw in self._powers]
            self._solve_cache = cols
        cols = self._solve_cache
        # solve sum_j a_j * cols[j] = b over F_p by Gaussian elimination
        mat = [[cols[j][i] for j in range(k)] + [b.coeffs[i]] for i in range(K)]
        pivots = []
        row = 0
        for col in range(k):
            piv = next((r for r in range(row, K) if mat[r][col]), None)
            if piv is None:
                continue
            mat[row], mat[piv] = mat[piv], mat[row]
            inv = pow(mat[row][col], p - 2, p)
            mat[row] = [v * inv % p for v in mat[row]]
            for r in range(K):
                if r != row and mat[r][col]:
                    c = mat[r][col]
                    mat[r] = [(v - c * w) % p for v, w in zip(mat[r], mat[row])]
            pivots.append(col)
            row += 1
        sol = [0] * k
        for r, col in enumerate(pivots):
            sol[col] = mat[r][k]
        for r in range(row, K):
            if mat[r][k]:
                return None
        # verify (the system can be inconsistent only via the check above,
        # but non-pivot columns cannot occur for an injective map)
        return self.src.element(sol)


_EMBED_CACHE: dict[tuple, Embedding] = {}


def embed(src: FiniteField, dst: FiniteField) -> Embedding:
    if src == dst:
        return _identity_embedding(src)
    key = (src._hashkey, dst._hashkey)
    emb = _EMBED_CACHE.get(key)
    if emb is not None:
        return emb
    if src.p != dst.p or dst.k % src.k != 0:
        raise PolyError(f"no embedding {src} -> {dst}")
    if src.k == 1:
        root = dst.one()
        emb = Embedding(src, dst, root)
    else:
        h = Poly(dst, [c for c in src.modulus])
        rts = _linear_roots(h, random.Random(0x5eed))
        rts.sort(key=lambda r: r.sort_key())
        emb = Embedding(src, dst, rts[0])
    _EMBED_CACHE[key] = emb
    return emb


class _IdentityEmbedding(Embedding):
    def __init__(self, F: FiniteField):
        self.src = F
        self.dst = F
        self.root = None
        self._powers = []
        self._solve_cache = None

    def __call__(self, a: FieldElement) -> FieldElement:
        return a

    def map_poly(self, f: Poly) -> Poly:
        return f

    def preimage(self, b: FieldElement) -> FieldElement:
        return b


def _identity_embedding(F: FiniteField) -> Embedding:
    key = (F._hashkey, F._hashkey)
    emb = _EMBED_CACHE.get(key)
    if emb is None:
        emb = _IdentityEmbedding(F)
        _EMBED_CACHE[key] = emb
    return emb


# -- factorization / roots ----------------------------------------------------


def _linear_roots(f: Poly, rng: random.Random) -> list[FieldElement]:
    """All roots in f's own field of a polynomial splitting into distinct
    linear factors there (caller guarantees this)."""
    F = f.field
    f = f.monic()
    if f.degree == 0:
        return []
    if f.degree == 1:
        return [-f[0]]
    # random shift + power splitting
    while True:
        a = F.random_element(rng)
        shifted = Poly(F, [a, F.one()])  # x + a
        h = shifted.powmod((F.order - 1) // 2, f)
        g = gcd(h - Poly.one(F), f)
        if 0 < g.degree < f.degree:
            return _linear_roots(g, rng) + _linear_roots(f.exact_div(g), rng)


def distinct_degree_factor(f: Poly) -> list[tuple[int, Poly]]:
    """[(d, product of irreducible factors of degree d)] for square-free monic f."""
    F = f.field
    out = []
    rem = f.monic()
    h = Poly.x(F) % rem
    d = 0
    while rem.degree > 0:
        d += 1
        if 2 * d > rem.degree:
            out.append((rem.degree, rem))
            break
        h = h.powmod(F.order, rem)
        g = gcd(h - Poly.x(F), rem)
        if g.degree > 0:
            out.append((d, g))
            rem = rem.exact_div(g)
            h = h % rem
    return out


def equal_degree_factor(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Cantor-Zassenhaus split of a product of distinct degree-d irreducibles."""
    if f.degree == d:
        return [f.monic()]
    F = f.field
    e = (F.order ** d - 1) // 2
    while True:
        a = Poly(F, [F.random_element(rng) for _ in range(f.degree)])
        if a.degree < 1:
            continue
        g = gcd(a, f)
        if 0 < g.degree < f.degree:
            break
        h = a.powmod(e, f)
        g = gcd(h - Poly.one(F), f)
        if 0 < g.degree < f.degree:
            break
    left = equal_degree_factor(g, d, rng)
    right = equal_degree_factor(f.exact_div(g), d, rng)
    return left + right


def factor_squarefree(f: Poly, seed: int = 0) -> list[Poly]:
    """Monic irreducible factors of a square-free polynomial, sorted."""
    rng = random.Random(f"{seed}-edf-{f.degree}")
    out = []
    for d, prod in distinct_degree_factor(f):
        out.extend(equal_degree_factor(prod, d, rng))
    out.sort(key=lambda g: g.sort_key())
    return out


@dataclass
class RootRecord:
    root: FieldElement          # lives in an extension of the base field
    min_poly: Poly              # irreducible over the base field
    degree: int                 # degree of min_poly over the base field
    multiplicity: int


@dataclass
class RootList:
    base_field: FiniteField
    records: list[RootRecord]
    distinct_count: int                       # deg of the square-free part
    unresolved: list[tuple[int, int]] = dc_field(default_factory=list)
    # (degree over base, multiplicity) of factors beyond the search bound

    def roots_of_degree(self, max_degree: int) -> list[FieldElement]:
        return [r.root for r in self.records if r.degree <= max_degree]


def roots(f: Poly, m_max: int = 1, seed: int = 0) -> RootList:
    """Distinct roots of f in the algebraic closure.

    Explicit roots are produced for irreducible factors of degree <= m_max;
    a factor of base-field degree d gets its roots in the fresh extension
    F_{p^(k*d)}.  Factors of larger degree are reported unresolved.
    """
    if f.is_zero():
        raise PolyError("roots of the zero polynomial")
    F = f.field
    sf = squarefree_part(f)
    records: list[RootRecord] = []
    unresolved: list[tuple[int, int]] = []
    for factor in factor_squarefree(sf, seed):
        mult = _multiplicity(f, factor)
        d = factor.degree
        if d > m_max:
            unresolved.append((d, mult))
            continue
        if d == 1:
            rts = [-factor[0]]
        else:
            E = make_field(F.p, F.k * d)
            phi = embed(F, E)
            lifted = phi.map_poly(factor)
            rts = _linear_roots(lifted, random.Random(f"{seed}-lift-{d}"))
            rts.sort(key=lambda r: r.sort_key())
        for r in rts:
            records.append(RootRecord(r, factor, d, mult))
    return RootList(F, records, sf.degree, unresolved)


def _multiplicity(f: Poly, factor: Poly) -> int:
    m = 0
    while True:
        q, r = divmod(f, factor)
        if not r.is_zero():
            return m
        f = q
        m += 1


# -- linear algebra over a field ---------------------------------------------


def matrix_rank(rows: list[list[FieldElement]]) -> int:
    if not rows:
        return 0
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if not mat[r][col].is_zero()),
                   None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        inv = mat[rank][col].inverse()
        mat[rank] = [v * inv for v in mat[rank]]
        for r in range(nrows):
            if r != rank and not mat[r][col].is_zero():
                c = mat[r][col]
                mat[r] = [v - c * w for v, w in zip(mat[r], mat[rank])]
        rank += 1
        if rank == nrows:
            break
    return rank


def matrix_det(rows: list[list[FieldElement]], F: FiniteField) -> FieldElement:
    n = len(rows)
    if n == 0:
        return F.one()
    mat = [list(r) for r in rows]
    det = F.one()
    for col in range(n):
        piv = next((r for r in range(col, n) if not mat[r][col].is_zero()), None)
        if piv is None:
            return F.zero()
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det = det * mat[col][col]
        inv = mat[col][col].inverse()
        for r in range(col + 1, n):
            if not mat[r][col].is_zero():
                c = mat[r][col] * inv
                mat[r] = [v - c * w for v, w in zip(mat[r], mat[col])]
    return det


# -- determinant of a polynomial matrix ---------------------------------------


def lagrange_interpolate(F: FiniteField, points: list[tuple[FieldElement,
                                                            FieldElement]]) -> Poly:
    result = Poly.zero(F)
    for i, (xi, yi) in enumerate(points):
        if yi.is_zero():
            continue
        num = Poly.one(F)
        denom = F.one()
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            num = num * Poly(F, [-xj, F.one()])
            denom = denom * (xi - xj)
        result = result + num.scale(yi * denom.inverse())
    return result


def det_poly_matrix(M: list[list[Poly]], degree_bound: int) -> Poly:
    """Exact determinant of a square matrix of polynomials over F_q.

    Evaluates at degree_bound + 1 distinct points and interpolates; when
    q <= degree_bound the evaluation lifts to an extension F_{q^m} and
    the result is verified to descend to F_q.
    """
    n = len(M)
    if any(len(row) != n for row in M):
        raise PolyError("non-square matrix")
    if n == 0:
        raise PolyError("empty matrix")
    F = M[0][0].field
    npoints = degree_bound + 1
    if F.order >= npoints:
        E, phi = F, _identity_embedding(F)
    else:
        m = 1
        while F.order ** m < npoints:
            m += 1
        E = make_field(F.p, F.k * m)
        phi = embed(F, E)
    lifted = [[phi.map_poly(entry) for entry in row] for row in M]
    points = []
    for i in range(npoints):
        x = E.from_index(i)
        rows = [[entry(x) for entry in row] for row in lifted]
        points.append((x, matrix_det(rows, E)))
    det_E = lagrange_interpolate(E, points)
    if E is F:
        return det_E
    out = []
    for c in det_E.coeffs:
        a = phi.preimage(c)
        if a is None:
            raise PolyError("determinant failed to descend to the base field")
        out.append(a)
    return Poly(F, out)
