"""Closed intervals with rational endpoints and certified elementary functions.

Every operation returns an enclosure of the exact image.  Transcendental
functions are evaluated with fixed-point integer series whose truncation and
rounding errors are bounded explicitly, then rounded outward to dyadic
rationals.  No floating point value ever enters an endpoint.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Union

Number = Union[int, Fraction]

DEFAULT_BITS = 128
_GUARD = 24


def bits_for(eps: Fraction) -> int:
    """Number of fractional bits whose ulp is below eps/4."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    b = 0
    while Fraction(1, 1 << b) > eps / 4:
        b += 1
    return max(b, 8)


def floor_dyadic(q: Fraction, bits: int) -> Fraction:
    return Fraction((q.numerator << bits) // q.denominator, 1 << bits)


def ceil_dyadic(q: Fraction, bits: int) -> Fraction:
    return Fraction(-((-q.numerator << bits) // q.denominator), 1 << bits)


class RatInterval:
    """Closed interval [lo, hi] with Fraction endpoints, lo <= hi."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Number, hi: Number | None = None):
        lo = Fraction(lo)
        hi = lo if hi is None else Fraction(hi)
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def coerce(cls, x) -> "RatInterval":
        return x if isinstance(x, RatInterval) else cls(x)

    # queries ------------------------------------------------------------

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        if isinstance(x, RatInterval):
            return self.lo <= x.lo and x.hi <= self.hi
        if isinstance(x, float):
            x = Fraction(x)
        return self.lo <= x <= self.hi

    __contains__ = contains

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi

    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __float__(self) -> float:
        return float(self.mid)

    def __repr__(self) -> str:
        return f"RatInterval({float(self.lo)!r}, {float(self.hi)!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, RatInterval):
            return self.lo == other.lo and self.hi == other.hi
        if isinstance(other, (int, Fraction)):
            return self.lo == self.hi == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.lo, self.hi))

    # certain comparisons
    def gt(self, other) -> bool:
        return self.lo > RatInterval.coerce(other).hi

    def lt(self, other) -> bool:
        return self.hi < RatInterval.coerce(other).lo

    def positive(self) -> bool:
        return self.lo > 0

    def negative(self) -> bool:
        return self.hi < 0

    # arithmetic ---------------------------------------------------------

    def __neg__(self) -> "RatInterval":
        return RatInterval(-self.hi, -self.lo)

    def __add__(self, other) -> "RatInterval":
        o = RatInterval.coerce(other)
        return RatInterval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __sub__(self, other) -> "RatInterval":
        o = RatInterval.coerce(other)
        return RatInterval(self.lo - o.hi, self.hi - o.lo)

    def __rsub__(self, other) -> "RatInterval":
        return RatInterval.coerce(other) - self

    def __mul__(self, other) -> "RatInterval":
        o = RatInterval.coerce(other)
        if self.is_exact() and o.is_exact():
            return RatInterval(self.lo * o.lo)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return RatInterval(min(ps), max(ps))

    __rmul__ = __mul__

    def reciprocal(self) -> "RatInterval":
        if self.contains_zero():
            raise ZeroDivisionError(f"interval {self!r} contains zero")
        return RatInterval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "RatInterval":
        return self * RatInterval.coerce(other).reciprocal()

    def __rtruediv__(self, other) -> "RatInterval":
        return RatInterval.coerce(other) * self.reciprocal()

    def sqr(self) -> "RatInterval":
        a, b = self.lo * self.lo, self.hi * self.hi
        if self.contains_zero():
            return RatInterval(0, max(a, b))
        return RatInterval(min(a, b), max(a, b))

    def __pow__(self, n: int) -> "RatInterval":
        if n < 0:
            return self.reciprocal() ** (-n)
        if n == 0:
            return RatInterval(1)
        if n % 2 == 0:
            return self.sqr() ** (n // 2) if n > 2 else self.sqr()
        return RatInterval(self.lo**n, self.hi**n)

    def __abs__(self) -> "RatInterval":
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return RatInterval(0, max(-self.lo, self.hi))

    def hull(self, other) -> "RatInterval":
        o = RatInterval.coerce(other)
        return RatInterval(min(self.lo, o.lo), max(self.hi, o.hi))

    def intersect(self, other) -> "RatInterval":
        o = RatInterval.coerce(other)
        return RatInterval(max(self.lo, o.lo), min(self.hi, o.hi))

    def round_out(self, bits: int) -> "RatInterval":
        """Outward rounding to dyadic endpoints (keeps denominators bounded)."""
        return RatInterval(floor_dyadic(self.lo, bits), ceil_dyadic(self.hi, bits))


def iv_max(*xs: RatInterval) -> RatInterval:
    xs = [RatInterval.coerce(x) for x in xs]
    return RatInterval(max(x.lo for x in xs), max(x.hi for x in xs))


def iv_min(*xs: RatInterval) -> RatInterval:
    xs = [RatInterval.coerce(x) for x in xs]
    return RatInterval(min(x.lo for x in xs), min(x.hi for x in xs))


# fixed-point kernels ----------------------------------------------------
#
# Each kernel returns an integer pair (lo, hi) with lo <= value * 2**P <= hi.


def _atanh_fixed(yn: int, yd: int, P: int) -> tuple[int, int]:
    """atanh(yn/yd) for |yn/yd| <= 1/2."""
    sign = -1 if yn < 0 else 1
    yn = abs(yn)
    assert 2 * yn <= yd
    t = (yn << P) // yd
    y2n, y2d = yn * yn, yd * yd
    s, j = 0, 0
    while t:
        s += t // (2 * j + 1)
        t = t * y2n // y2d
        j += 1
    # truncated terms and floors lose at most j+2 per term; tail <= 4/3 (j+1)
    err = (j + 2) * (j + 3) // 2 + 2 * (j + 2)
    return (s, s + err) if sign > 0 else (-s - err, -s)


def _atan_series_fixed(yn: int, yd: int, P: int) -> tuple[int, int]:
    """atan(yn/yd) for 0 <= yn/yd <= 1/2 via the alternating series."""
    assert 0 <= 2 * yn <= yd
    t = (yn << P) // yd
    y2n, y2d = yn * yn, yd * yd
    s, j = 0, 0
    while t:
        term = t // (2 * j + 1)
        s += -term if j & 1 else term
        t = t * y2n // y2d
        j += 1
    err = (j + 2) * (j + 3) // 2 + (j + 2)
    return s - err, s + err


def _pi_fixed(P: int) -> tuple[int, int]:
    a_lo, a_hi = _atan_series_fixed(1, 5, P)
    b_lo, b_hi = _atan_series_fixed(1, 239, P)
    return 16 * a_lo - 4 * b_hi, 16 * a_hi - 4 * b_lo


def _atan_fixed(n: int, d: int, P: int) -> tuple[int, int]:
    """atan(n/d) for any rational n/d (d > 0)."""
    if n < 0:
        lo, hi = _atan_fixed(-n, d, P)
        return -hi, -lo
    if n > d:
        plo, phi = _pi_fixed(P)
        lo, hi = _atan_fixed(d, n, P)
        # pi/2 - atan(d/n), with pi/2 rounded outward
        return (plo >> 1) - hi, -((-phi) >> 1) - lo
    # 0 <= x <= 1: reduce by the nearest c in {0, 1/2, 1}
    if 4 * n <= d:
        return _atan_series_fixed(n, d, P)
    if 4 * n <= 3 * d:
        c_lo, c_hi = _atan_series_fixed(1, 2, P)
        # (x - 1/2) / (1 + x/2) = (2n - d) / (2d + n)
        rn, rd = 2 * n - d, 2 * d + n
    else:
        plo, phi = _pi_fixed(P)
        c_lo, c_hi = plo >> 2, -((-phi) >> 2)
        # (x - 1) / (1 + x) = (n - d) / (n + d)
        rn, rd = n - d, n + d
    if rn < 0:
        r_lo, r_hi = _atan_series_fixed(-rn, rd, P)
        r_lo, r_hi = -r_hi, -r_lo
    else:
        r_lo, r_hi = _atan_series_fixed(rn, rd, P)
    return c_lo + r_lo, c_hi + r_hi


def _log_fixed(n: int, d: int, P: int) -> tuple[int, int]:
    """log(n/d) for n, d > 0."""
    k = n.bit_length() - d.bit_length()
    num = n << max(-k, 0)
    den = d << max(k, 0)
    # num/den lies in (1/2, 2), so |y| < 1/3
    y_lo, y_hi = _atanh_fixed(num - den, num + den, P)
    lo, hi = 2 * y_lo, 2 * y_hi
    if k:
        l2_lo, l2_hi = _atanh_fixed(1, 3, P)
        if k > 0:
            lo += 2 * k * l2_lo
            hi += 2 * k * l2_hi
        else:
            lo += 2 * k * l2_hi
            hi += 2 * k * l2_lo
    return lo, hi


def _from_fixed(lo: int, hi: int, P: int, bits: int) -> RatInterval:
    iv = RatInterval(Fraction(lo, 1 << P), Fraction(hi, 1 << P))
    return iv.round_out(bits)


# public elementary functions ---------------------------------------------


def pi_iv(eps: Fraction | None = None, bits: int | None = None) -> RatInterval:
    bits = bits if bits is not None else (bits_for(eps) if eps is not None else DEFAULT_BITS)
    P = bits + _GUARD
    return _from_fixed(*_pi_fixed(P), P, bits)


def _log_point(q: Fraction, bits: int) -> RatInterval:
    if q <= 0:
        raise ValueError(f"log of nonpositive value {q}")
    if q == 1:
        return RatInterval(0)
    P = bits + _GUARD
    return _from_fixed(*_log_fixed(q.numerator, q.denominator, P), P, bits)


def log_iv(x, bits: int = DEFAULT_BITS) -> RatInterval:
    x = RatInterval.coerce(x)
    if x.lo <= 0:
        raise ValueError(f"log domain error: {x!r} is not positive")
    if x.is_exact():
        return _log_point(x.lo, bits)
    return RatInterval(_log_point(x.lo, bits).lo, _log_point(x.hi, bits).hi)


def atan_point(q: Fraction, bits: int = DEFAULT_BITS) -> RatInterval:
    q = Fraction(q)
    if q == 0:
        return RatInterval(0)
    P = bits + _GUARD
    return _from_fixed(*_atan_fixed(q.numerator, q.denominator, P), P, bits)


def atan_iv(x, bits: int = DEFAULT_BITS) -> RatInterval:
    x = RatInterval.coerce(x)
    return RatInterval(atan_point(x.lo, bits).lo, atan_point(x.hi, bits).hi)


def _sqrt_lo(q: Fraction, bits: int) -> Fraction:
    return Fraction(isqrt((q.numerator << (2 * bits)) // q.denominator), 1 << bits)


def _sqrt_hi(q: Fraction, bits: int) -> Fraction:
    scaled = q.numerator << (2 * bits)
    fl = scaled // q.denominator
    r = isqrt(fl)
    if r * r == fl and fl * q.denominator == scaled:
        return Fraction(r, 1 << bits)
    return Fraction(r + 1, 1 << bits)


def sqrt_iv(x, bits: int = DEFAULT_BITS) -> RatInterval:
    x = RatInterval.coerce(x)
    if x.lo < 0:
        raise ValueError(f"sqrt domain error: {x!r} has negative part")
    return RatInterval(_sqrt_lo(x.lo, bits), _sqrt_hi(x.hi, bits))


# complex rectangles -------------------------------------------------------


class CInterval:
    """Rectangle re + i*im in the complex plane with rational corners."""

    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = RatInterval.coerce(re)
        self.im = RatInterval.coerce(im)

    @classmethod
    def coerce(cls, z) -> "CInterval":
        return z if isinstance(z, CInterval) else cls(z)

    @property
    def width(self) -> Fraction:
        return max(self.re.width, self.im.width)

    def contains(self, z) -> bool:
        z = complex(z)
        return self.re.contains(Fraction(z.real)) and self.im.contains(Fraction(z.imag))

    def contains_zero(self) -> bool:
        return self.re.contains_zero() and self.im.contains_zero()

    def __repr__(self) -> str:
        return f"CInterval({self.re!r}, {self.im!r})"

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __neg__(self) -> "CInterval":
        return CInterval(-self.re, -self.im)

    def __add__(self, other) -> "CInterval":
        o = CInterval.coerce(other)
        return CInterval(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other) -> "CInterval":
        o = CInterval.coerce(other)
        return CInterval(self.re - o.re, self.im - o.im)

    def __rsub__(self, other) -> "CInterval":
        return CInterval.coerce(other) - self

    def __mul__(self, other) -> "CInterval":
        o = CInterval.coerce(other)
        return CInterval(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conj(self) -> "CInterval":
        return CInterval(self.re, -self.im)

    def abs2(self) -> RatInterval:
        return self.re.sqr() + self.im.sqr()

    def abs(self, bits: int = DEFAULT_BITS) -> RatInterval:
        return sqrt_iv(self.abs2(), bits)

    def __truediv__(self, other) -> "CInterval":
        o = CInterval.coerce(other)
        n = self * o.conj()
        d = o.abs2()
        return CInterval(n.re / d, n.im / d)

    def __pow__(self, n: int) -> "CInterval":
        result, base = CInterval(1), self
        if n < 0:
            base, n = CInterval(1) / base, -n
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def round_out(self, bits: int) -> "CInterval":
        return CInterval(self.re.round_out(bits), self.im.round_out(bits))


def _abs_arg_corner(x: Fraction, y: Fraction, bits: int) -> RatInterval:
    y = abs(y)
    if x > 0:
        return atan_point(y / x, bits)
    half_pi = pi_iv(bits=bits) / 2
    if x == 0:
        return half_pi
    return half_pi + atan_point(-x / y, bits) if y else pi_iv(bits=bits)


def abs_arg_iv(z: CInterval, bits: int = DEFAULT_BITS) -> RatInterval:
    """Enclosure of |arg z| (principal branch) over a rectangle avoiding 0."""
    if z.contains_zero():
        raise ValueError("argument of a rectangle containing zero")
    corners = [(x, y) for x in (z.re.lo, z.re.hi) for y in (z.im.lo, z.im.hi)]
    out = None
    for x, y in corners:
        a = _abs_arg_corner(x, y, bits)
        out = a if out is None else out.hull(a)
    if z.im.contains_zero():
        if z.re.hi > 0:
            out = out.hull(0)
        if z.re.lo < 0:
            out = out.hull(pi_iv(bits=bits))
    return out


def log_abs_iv(z: CInterval, bits: int = DEFAULT_BITS) -> RatInterval:
    """log |z| = log(|z|^2) / 2 for a rectangle avoiding 0."""
    a2 = z.abs2()
    if a2.lo <= 0:
        raise ValueError("log|z| of a rectangle touching zero")
    return log_iv(a2, bits) / 2
