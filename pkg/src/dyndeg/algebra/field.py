"""Exact arithmetic in the splitting field of a monic integer cubic.

For an irreducible cubic p = x^3 + b x^2 + c x + d with negative
discriminant D, the splitting field is K = Q(theta)[delta] with theta the
real root and delta^2 = D.  Elements are stored as a + b*delta with
a, b in Q(theta) (three coordinates each), so complex conjugation is the
structural automorphism delta -> -delta.  The fixed embedding sends theta to
the real root and delta to +i*sqrt(|D|).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterable, Sequence

from .interval import CInterval, RatInterval, bits_for, sqrt_iv
from .poly import PolyQ, charpoly, cyclotomic, squarefree_part

# k with phi(k) <= 6
CYCLOTOMIC_INDICES = (1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 14, 18)


class FieldError(ValueError):
    pass


def cubic_discriminant(p: PolyQ) -> int:
    """Discriminant of a monic integer cubic."""
    _check_cubic(p)
    d, c, b = (int(v) for v in p.coeffs[:3])
    return 18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d


def cubic_irreducible(p: PolyQ) -> bool:
    """A monic integer cubic is irreducible over Q iff it has no rational root."""
    _check_cubic(p)
    d = int(p.coeffs[0])
    if d == 0:
        return False
    return not any(p(Fraction(s * k)) == 0 for k in _divisors(abs(d)) for s in (1, -1))


def _divisors(n: int) -> list[int]:
    small = [k for k in range(1, isqrt(n) + 1) if n % k == 0]
    return sorted(set(small + [n // k for k in small]))


def _check_cubic(p: PolyQ) -> None:
    if p.degree != 3 or not p.is_monic() or not p.is_integral():
        raise FieldError(f"expected a monic integer cubic, got {p}")


# arithmetic in Q(theta) on coefficient triples ------------------------------


def _qt_mul(u: Sequence[Fraction], v: Sequence[Fraction], red: Sequence[Fraction]) -> tuple:
    # red = (r0, r1, r2) with theta^3 = r0 + r1 theta + r2 theta^2
    p = [Fraction(0)] * 5
    for i in range(3):
        if u[i]:
            for j in range(3):
                p[i + j] += u[i] * v[j]
    r0, r1, r2 = red
    # theta^4 = r0 theta + r1 theta^2 + r2 theta^3
    for k in (4, 3):
        c = p[k]
        if c:
            p[k] = Fraction(0)
            p[k - 3] += c * r0
            p[k - 2] += c * r1
            p[k - 1] += c * r2
    return (p[0], p[1], p[2])


def _solve3(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = 3
    A = [row[:] + [rhs[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        inv = 1 / A[col][col]
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]


class SplitCubicField:
    """Splitting field K of an irreducible monic integer cubic with D < 0."""

    def __init__(self, cubic: PolyQ):
        _check_cubic(cubic)
        if not cubic_irreducible(cubic):
            raise FieldError(f"{cubic} is reducible over Q")
        D = cubic_discriminant(cubic)
        if D >= 0:
            raise FieldError(f"{cubic} has discriminant {D} >= 0; only one-real-root cubics are supported")
        self.cubic = cubic
        self.disc = D
        self._red = tuple(-c for c in cubic.coeffs[:3])

    def __repr__(self) -> str:
        return f"SplitCubicField({self.cubic.format()})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SplitCubicField) and self.cubic == other.cubic

    def __hash__(self) -> int:
        return hash(self.cubic)

    @property
    def degree(self) -> int:
        return 6

    # elements -------------------------------------------------------------

    def __call__(self, x) -> "KElem":
        if isinstance(x, KElem):
            return x
        return KElem(self, (Fraction(x), 0, 0), (0, 0, 0))

    def elem(self, coords: Iterable) -> "KElem":
        cs = [Fraction(c) for c in coords]
        if len(cs) != 6:
            raise FieldError("an element of K has six coordinates")
        return KElem(self, cs[:3], cs[3:])

    @cached_property
    def theta(self) -> "KElem":
        return KElem(self, (0, 1, 0), (0, 0, 0))

    @cached_property
    def delta(self) -> "KElem":
        return KElem(self, (0, 0, 0), (1, 0, 0))

    def roots(self) -> tuple["KElem", "KElem", "KElem"]:
        """(theta, xi_plus, xi_minus); xi_plus has positive imaginary part."""
        b = self.cubic.coeffs[2]
        t = self.theta
        dp = self.cubic.derivative()(t)
        assert not dp.is_zero()
        s = self.delta / dp
        base = -(t + b)
        return t, (base + s) / 2, (base - s) / 2

    # real root enclosure ----------------------------------------------------

    @lru_cache(maxsize=64)
    def theta_enclosure(self, bits: int) -> RatInterval:
        """Dyadic enclosure of the real root, width <= 2**-bits."""
        p = self.cubic
        bound = 1 + max(abs(c) for c in p.coeffs[:-1])
        lo, hi = -bound, bound
        # p(lo) < 0 < p(hi) for a monic cubic
        target = Fraction(1, 1 << bits)
        lo, hi = Fraction(lo), Fraction(hi)
        while hi - lo > target:
            m = (lo + hi) / 2
            v = p(m)
            if v == 0:
                return RatInterval(m)
            if v < 0:
                lo = m
            else:
                hi = m
        return RatInterval(lo, hi)

    @lru_cache(maxsize=64)
    def sqrt_disc_enclosure(self, bits: int) -> RatInterval:
        return sqrt_iv(Fraction(-self.disc), bits)


class KElem:
    """Element a + b*delta of K, with a, b in Q(theta)."""

    __slots__ = ("field", "a", "b")

    def __init__(self, field: SplitCubicField, a: Iterable, b: Iterable):
        self.field = field
        self.a = tuple(Fraction(x) for x in a)
        self.b = tuple(Fraction(x) for x in b)

    @property
    def coords(self) -> tuple[Fraction, ...]:
        return self.a + self.b

    def _wrap(self, other) -> "KElem":
        if isinstance(other, KElem):
            if other.field is not self.field and other.field != self.field:
                raise FieldError("elements of different fields")
            return other
        return self.field(other)

    def is_zero(self) -> bool:
        return not any(self.a) and not any(self.b)

    def is_rational(self) -> bool:
        return not any(self.a[1:]) and not any(self.b)

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise FieldError(f"{self} is not rational")
        return self.a[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a[0] == other
        if not isinstance(other, KElem):
            return NotImplemented
        return self.field == other.field and self.a == other.a and self.b == other.b

    def __hash__(self) -> int:
        return hash((self.a, self.b))

    def __repr__(self) -> str:
        return f"KElem({[str(c) for c in self.coords]})"

    def __neg__(self) -> "KElem":
        return KElem(self.field, (-x for x in self.a), (-x for x in self.b))

    def __add__(self, other) -> "KElem":
        o = self._wrap(other)
        return KElem(self.field, (x + y for x, y in zip(self.a, o.a)), (x + y for x, y in zip(self.b, o.b)))

    __radd__ = __add__

    def __sub__(self, other) -> "KElem":
        return self + (-self._wrap(other))

    def __rsub__(self, other) -> "KElem":
        return self._wrap(other) - self

    def __mul__(self, other) -> "KElem":
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return KElem(self.field, (c * x for x in self.a), (c * x for x in self.b))
        o = self._wrap(other)
        red = self.field._red
        D = self.field.disc
        aa = _qt_mul(self.a, o.a, red)
        bb = _qt_mul(self.b, o.b, red) if any(self.b) and any(o.b) else (0, 0, 0)
        ab = _qt_mul(self.a, o.b, red) if any(o.b) else (0, 0, 0)
        ba = _qt_mul(self.b, o.a, red) if any(self.b) else (0, 0, 0)
        return KElem(
            self.field,
            (x + D * y for x, y in zip(aa, bb)),
            (x + y for x, y in zip(ab, ba)),
        )

    __rmul__ = __mul__

    def _qt_inverse(self, u: Sequence[Fraction]) -> tuple:
        red = self.field._red
        # columns: u * theta^j
        cols = [_qt_mul(u, e, red) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1))]
        M = [[cols[j][i] for j in range(3)] for i in range(3)]
        return tuple(_solve3(M, [Fraction(1), Fraction(0), Fraction(0)]))

    def inverse(self) -> "KElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in K")
        red = self.field._red
        D = self.field.disc
        # (a + b delta)^-1 = (a - b delta) / (a^2 - D b^2)
        n = _qt_mul(self.a, self.a, red)
        if any(self.b):
            bb = _qt_mul(self.b, self.b, red)
            n = tuple(x - D * y for x, y in zip(n, bb))
        ninv = self._qt_inverse(n)
        return KElem(self.field, _qt_mul(self.a, ninv, red), (-x for x in _qt_mul(self.b, ninv, red)))

    def __truediv__(self, other) -> "KElem":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * self._wrap(other).inverse()

    def __rtruediv__(self, other) -> "KElem":
        return self._wrap(other) * self.inverse()

    def __pow__(self, n: int) -> "KElem":
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = self.field(1)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conj(self) -> "KElem":
        return KElem(self.field, self.a, (-x for x in self.b))

    # linear algebra over Q -----------------------------------------------------

    def mult_matrix(self) -> list[list[Fraction]]:
        """6x6 rational matrix of multiplication by self in the basis
        1, theta, theta^2, delta, theta delta, theta^2 delta (columns are images)."""
        F = self.field
        basis = [F.elem([1 if i == j else 0 for i in range(6)]) for j in range(6)]
        cols = [(self * e).coords for e in basis]
        return [[cols[j][i] for j in range(6)] for i in range(6)]

    def charpoly(self) -> PolyQ:
        return charpoly(self.mult_matrix())

    def min_poly(self) -> PolyQ:
        # the characteristic polynomial is a power of the minimal polynomial
        return squarefree_part(self.charpoly())

    def norm(self) -> Fraction:
        """Norm from K to Q (determinant of multiplication)."""
        return self.charpoly().coeffs[0]

    def trace(self) -> Fraction:
        return -self.charpoly().coeffs[5]

    # embedding ---------------------------------------------------------------

    def embed_bits(self, bits: int) -> CInterval:
        F = self.field
        t = F.theta_enclosure(bits)
        s = F.sqrt_disc_enclosure(bits)
        ra = self.a[0] + t * (self.a[1] + t * self.a[2])
        if not any(self.b):
            return CInterval(ra, 0)
        rb = self.b[0] + t * (self.b[1] + t * self.b[2])
        return CInterval(ra, rb * s)

    def embed(self, eps: Fraction = Fraction(1, 10**20)) -> CInterval:
        """Certified enclosure of the image under the fixed embedding, width <= eps."""
        eps = Fraction(eps)
        bits = bits_for(eps)
        while True:
            z = self.embed_bits(bits)
            if z.width <= eps:
                return z
            bits += max(16, bits // 2)


def is_unit(a: KElem) -> bool:
    """Membership in the unit group of the ring of integers of K."""
    if a.is_zero():
        raise FieldError("is_unit of zero")
    m = a.min_poly()
    return m.is_integral() and abs(m.coeffs[0]) == 1


@lru_cache(maxsize=None)
def _cyclotomics() -> tuple[PolyQ, ...]:
    return tuple(cyclotomic(k) for k in CYCLOTOMIC_INDICES)


def is_root_of_unity(a: KElem) -> bool:
    if a.is_zero():
        raise FieldError("is_root_of_unity of zero")
    return a.min_poly() in _cyclotomics()


def roots_in_field(F: SplitCubicField) -> tuple[KElem, KElem, KElem]:
    return F.roots()


def conj(a: KElem) -> KElem:
    return a.conj()


def min_poly(a: KElem) -> PolyQ:
    return a.min_poly()


def embed(a: KElem, eps: Fraction) -> CInterval:
    return a.embed(eps)
