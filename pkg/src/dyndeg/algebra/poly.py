"""Univariate polynomials over the rationals.

Coefficients are stored lowest degree first; the zero polynomial has an
empty coefficient tuple.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class PolyQ:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # construction -------------------------------------------------------

    @classmethod
    def x(cls) -> "PolyQ":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls((c,))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "PolyQ":
        p = cls((1,))
        for r in roots:
            p = p * cls((-_frac(r), 1))
        return p

    @classmethod
    def from_high(cls, coeffs: Sequence) -> "PolyQ":
        """Build from coefficients listed highest degree first."""
        return cls(reversed(list(coeffs)))

    # basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.lead == 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_high(self) -> list[Fraction]:
        return list(reversed(self.coeffs))

    def int_coeffs(self) -> list[int]:
        if not self.is_integral():
            raise ValueError(f"polynomial {self} has non-integer coefficients")
        return [int(c) for c in self.coeffs]

    # arithmetic ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyQ):
            if isinstance(other, (int, Fraction)):
                other = PolyQ.const(other)
            else:
                return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __neg__(self) -> "PolyQ":
        return PolyQ(-c for c in self.coeffs)

    def __add__(self, other) -> "PolyQ":
        other = _promote(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return PolyQ(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __sub__(self, other) -> "PolyQ":
        return self + (-_promote(other))

    def __rsub__(self, other) -> "PolyQ":
        return _promote(other) - self

    def __mul__(self, other) -> "PolyQ":
        other = _promote(other)
        if self.is_zero() or other.is_zero():
            return PolyQ()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "PolyQ":
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result, base = PolyQ((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "PolyQ") -> tuple["PolyQ", "PolyQ"]:
        other = _promote(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        if len(rem) - 1 < dq:
            return PolyQ(), self
        quo = [Fraction(0)] * (len(rem) - dq)
        inv_lead = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv_lead
            quo[k - dq] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return PolyQ(quo), PolyQ(rem[:dq])

    def __floordiv__(self, other) -> "PolyQ":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "PolyQ":
        return divmod(self, other)[1]

    def scale(self, c) -> "PolyQ":
        c = _frac(c)
        return PolyQ(c * a for a in self.coeffs)

    def monic(self) -> "PolyQ":
        if self.is_zero():
            return self
        return self.scale(1 / self.lead)

    def derivative(self) -> "PolyQ":
        return PolyQ(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, x):
        """Horner evaluation; works for any ring element supporting + and *."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def reverse(self, n: int | None = None) -> "PolyQ":
        """x^n p(1/x) with n defaulting to the degree."""
        n = self.degree if n is None else n
        cs = list(self.coeffs) + [Fraction(0)] * (n + 1 - len(self.coeffs))
        return PolyQ(reversed(cs[: n + 1]))

    def strip_x(self) -> tuple["PolyQ", int]:
        """Remove the largest power of x dividing p; returns (p / x^k, k)."""
        k = 0
        while k < len(self.coeffs) and self.coeffs[k] == 0:
            k += 1
        return PolyQ(self.coeffs[k:]), k

    def primitive(self) -> "PolyQ":
        """Integer primitive multiple with positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return PolyQ(Fraction(i // g) for i in ints)

    def __repr__(self) -> str:
        return f"PolyQ({self.format()})"

    def format(self, var: str = "x") -> str:
        if self.is_zero():
            return "0"
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if i == 0:
                body = str(a)
            else:
                mono = var if i == 1 else f"{var}^{i}"
                body = mono if a == 1 else f"{a}*{mono}"
            parts.append((sign, body))
        head_sign, head = parts[0]
        out = ("-" if head_sign == "-" else "") + head
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _promote(p) -> PolyQ:
    if isinstance(p, PolyQ):
        return p
    return PolyQ.const(p)


def poly_gcd(p: PolyQ, q: PolyQ) -> PolyQ:
    """Monic gcd (zero if both inputs are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


def squarefree_part(p: PolyQ) -> PolyQ:
    """Monic product of the distinct irreducible factors of p."""
    if p.degree <= 0:
        return PolyQ((1,)) if not p.is_zero() else p
    g = poly_gcd(p, p.derivative())
    return (p // g).monic()


def sturm_sequence(p: PolyQ) -> list[PolyQ]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = -(seq[-2] % seq[-1])
        if r.is_zero():
            break
        seq.append(r)
    return seq


def _sign_changes(values: Sequence[Fraction]) -> int:
    signs = [v > 0 for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_real_roots(seq: list[PolyQ], a: Fraction, b: Fraction) -> int:
    """Distinct real roots in (a, b] of the squarefree head of a Sturm sequence."""
    return _sign_changes([q(a) for q in seq]) - _sign_changes([q(b) for q in seq])


def cauchy_bound(p: PolyQ) -> Fraction:
    """All complex roots satisfy |z| < 1 + max |a_i / a_n|."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


def cyclotomic(k: int) -> PolyQ:
    p = PolyQ([-1] + [0] * (k - 1) + [1])
    for d in range(1, k):
        if k % d == 0:
            p = p // cyclotomic(d)
    return p


def charpoly(mat: Sequence[Sequence]) -> PolyQ:
    """Characteristic polynomial det(xI - M) via Faddeev-LeVerrier (exact)."""
    n = len(mat)
    M = [[_frac(v) for v in row] for row in mat]
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    Mk = [[Fraction(0)] * n for _ in range(n)]  # M_0 = 0
    c = Fraction(1)
    for k in range(1, n + 1):
        # M_k = M (M_{k-1} + c_{n-k+1} I)
        T = [row[:] for row in Mk]
        for i in range(n):
            T[i][i] += c
        Mk = [[sum(M[i][l] * T[l][j] for l in range(n)) for j in range(n)] for i in range(n)]
        c = -sum(Mk[i][i] for i in range(n)) / k
        coeffs[n - k] = c
    return PolyQ(coeffs)
