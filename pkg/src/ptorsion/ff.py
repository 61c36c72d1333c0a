"""Exact arithmetic in prime fields F_p and explicit extensions F_{p^k}.

Elements are stored densely in the power basis of a monic irreducible
modulus over F_p (k = 1 means the prime field itself, modulus x).
Everything is immutable; fields built through :func:`field` are cached
so that elements of "the same" F_{p^k} always share one field object.
"""

from __future__ import annotations

import random
from typing import Iterator, Sequence

_WORD_CAP = 2 ** 31  # products of two reduced values must fit in 64 bits


class FieldError(ValueError):
    """Raised for invalid field construction or mixed-field operands."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


# -- minimal polynomial helpers over F_p (coefficient lists, low-to-high) --
# These exist only to build and test moduli; general polynomial algebra
# lives in ptorsion.poly.


def _ptrim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _ptrim(out)


def _pmod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    a = list(a)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
        _ptrim(a)
    return a


def _pgcd(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    return a


def _ppowmod(a: Sequence[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _pmod(a, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _is_irreducible(f: Sequence[int], p: int) -> bool:
    """Distinct-degree criterion: x^(p^k) = x mod f and no small-degree factor."""
    k = len(f) - 1
    if k < 1:
        return False
    x = [0, 1]
    xq = _ppowmod(x, p ** k, f, p)
    if _ptrim([(c - d) % p for c, d in _zip_pad(xq, x, p)]):
        return False
    for r in _prime_divisors(k):
        xr = _ppowmod(x, p ** (k // r), f, p)
        diff = _ptrim([(c - d) % p for c, d in _zip_pad(xr, x, p)])
        if len(_pgcd(diff, f, p)) - 1 != 0:
            return False
    return True


def _zip_pad(a: Sequence[int], b: Sequence[int], p: int):
    n = max(len(a), len(b))
    for i in range(n):
        yield (a[i] if i < len(a) else 0), (b[i] if i < len(b) else 0)


def _prime_divisors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def find_irreducible(p: int, k: int, seed: int = 0) -> list[int]:
    """Monic irreducible of degree k over F_p, deterministic for a given seed."""
    if k < 1:
        raise FieldError("degree must be >= 1")
    if k == 1:
        return [0, 1]
    rng = random.Random(f"{seed}-irred-{p}-{k}")
    while True:
        cand = [rng.randrange(p) for _ in range(k)] + [1]
        if _is_irreducible(cand, p):
            return cand


class FiniteField:
    """F_{p^k} presented as F_p[x] modulo a monic irreducible of degree k."""

    __slots__ = ("p", "k", "modulus", "order", "_red", "_hashkey")

    def __init__(self, p: int, k: int = 1, modulus: Sequence[int] | None = None,
                 seed: int = 0):
        if p < 3 or p % 2 == 0 or not _is_prime(p):
            raise FieldError(f"modulus {p} is not an odd prime")
        if p >= _WORD_CAP:
            raise FieldError(f"prime {p} exceeds the 2^31 cap")
        if k < 1:
            raise FieldError("extension degree must be >= 1")
        if modulus is None:
            modulus = find_irreducible(p, k, seed)
        modulus = [c % p for c in modulus]
        if len(modulus) != k + 1 or modulus[-1] != 1:
            raise FieldError("modulus must be monic of degree k")
        if k > 1 and not _is_irreducible(modulus, p):
            raise FieldError("modulus is reducible over F_p")
        self.p = p
        self.k = k
        self.modulus = tuple(modulus)
        self.order = p ** k
        # reduction rows: x^(k+i) mod modulus, for i = 0 .. k-2
        red = []
        cur = [(-c) % p for c in modulus[:-1]]  # x^k
        for _ in range(max(0, k - 1)):
            red.append(tuple(cur))
            cur = [0] + cur
            lead = cur.pop()
            if lead:
                cur = [(c - lead * m) % p for c, m in zip(cur, modulus[:-1])]
        self._red = red
        self._hashkey = (p, k, self.modulus)

    # -- construction ------------------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldError("element belongs to a different field")
            return value
        if isinstance(value, int):
            coeffs = [value % self.p] + [0] * (self.k - 1)
            return FieldElement(self, tuple(coeffs))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise FieldError("coefficient vector too long")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def zero(self) -> "FieldElement":
        return self.element(0)

    def one(self) -> "FieldElement":
        return self.element(1)

    def gen(self) -> "FieldElement":
        """The residue of x (equals 0 shifted for k = 1: returns 0's successor)."""
        if self.k == 1:
            return self.one()
        return self.element([0, 1])

    def from_index(self, i: int) -> "FieldElement":
        """The i-th element in the fixed enumeration order (base-p digits)."""
        coeffs = []
        for _ in range(self.k):
            coeffs.append(i % self.p)
            i //= self.p
        return FieldElement(self, tuple(coeffs))

    def __iter__(self) -> Iterator["FieldElement"]:
        for i in range(self.order):
            yield self.from_index(i)

    def random_element(self, rng: random.Random) -> "FieldElement":
        return self.from_index(rng.randrange(self.order))

    # -- misc --------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, FiniteField) and self._hashkey == other._hashkey

    def __hash__(self) -> int:
        return hash(self._hashkey)

    def __repr__(self) -> str:
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    def to_json(self) -> dict:
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    @staticmethod
    def from_json(data: dict) -> "FiniteField":
        return FiniteField(data["p"], data["k"], data["modulus"])


class FieldElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # -- helpers -----------------------------------------------------------

    def _check(self, other: "FieldElement") -> None:
        if not isinstance(other, FieldElement) or other.field != self.field:
            raise FieldError("mixed-field operands")

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    @property
    def int_value(self) -> int:
        """Value as an integer for prime-field elements."""
        if self.field.k != 1:
            raise FieldError("int_value only defined on the prime field")
        return self.coeffs[0]

    def index(self) -> int:
        """Position in the field's fixed enumeration order."""
        i = 0
        for c in reversed(self.coeffs):
            i = i * self.field.p + c
        return i

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-a) % p for a in self.coeffs))

    def __mul__(self, other):
        self._check(other)
        F = self.field
        p, k = F.p, F.k
        if k == 1:
            return FieldElement(F, (self.coeffs[0] * other.coeffs[0] % p,))
        a, b = self.coeffs, other.coeffs
        conv = [0] * (2 * k - 1)
        for i in range(k):
            ai = a[i]
            if ai:
                for j in range(k):
                    conv[i + j] += ai * b[j]
        out = [c % p for c in conv[:k]]
        for i in range(k - 1):
            hi = conv[k + i] % p
            if hi:
                row = F._red[i]
                for j in range(k):
                    out[j] = (out[j] + hi * row[j]) % p
        return FieldElement(F, tuple(out))

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("inversion of zero field element")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        self._check(other)
        return self * other.inverse()

    def frobenius(self, j: int = 1) -> "FieldElement":
        """a^(p^j); the identity on the prime field and for j = k."""
        if j < 0:
            raise FieldError("frobenius iteration count must be >= 0")
        F = self.field
        if F.k == 1:
            return self
        return self ** pow(F.p, j % F.k, F.order - 1) if not self.is_zero() \
            else self

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other) -> bool:
        return (isinstance(other, FieldElement) and other.field == self.field
                and other.coeffs == self.coeffs)

    def __hash__(self) -> int:
        return hash((self.field._hashkey, self.coeffs))

    def sort_key(self) -> tuple[int, ...]:
        return self.coeffs

    def __repr__(self) -> str:
        if self.field.k == 1:
            return str(self.coeffs[0])
        return f"{list(self.coeffs)}"

    def to_json(self) -> list[int]:
        return list(self.coeffs)


def quadratic_character(a: FieldElement) -> int:
    """0 for zero, +1 for nonzero squares, -1 otherwise."""
    if a.is_zero():
        return 0
    r = a ** ((a.field.order - 1) // 2)
    return 1 if r == a.field.one() else -1


_FIELD_CACHE: dict[tuple[int, int, int], FiniteField] = {}


def field(p: int, k: int = 1, seed: int = 0) -> FiniteField:
    """Cached F_{p^k} with the deterministic modulus for this seed."""
    key = (p, k, seed)
    F = _FIELD_CACHE.get(key)
    if F is None:
        F = FiniteField(p, k, seed=seed)
        _FIELD_CACHE[key] = F
    return F
