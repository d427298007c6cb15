"""Weil heights of elements of K via the Mahler measure.

Root moduli are certified with Weierstrass inclusion disks: for a
polynomial p of degree n with pairwise distinct approximations z_i, the
disks |z - z_i| <= n |W_i|, W_i = p(z_i) / (lc(p) prod_{j != i} (z_i - z_j)),
cover all roots and every connected component of k disks holds exactly k
roots.  Seeds come from mpmath; the certificate itself is exact rational
arithmetic, so a bad seed can only cause a retry, never a wrong answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .field import FieldError, KElem
from .interval import (
    CInterval,
    RatInterval,
    abs_arg_iv,
    bits_for,
    floor_dyadic,
    log_abs_iv,
    log_iv,
    sqrt_iv,
)
from .poly import PolyQ, squarefree_part

MAX_BITS = 4096


class RootIsolationError(RuntimeError):
    pass


@dataclass(frozen=True)
class RootDisk:
    re: Fraction
    im: Fraction
    radius: Fraction

    def modulus(self, bits: int) -> RatInterval:
        c = sqrt_iv(self.re * self.re + self.im * self.im, bits)
        return RatInterval(max(c.lo - self.radius, Fraction(0)), c.hi + self.radius)


def _seeds(p: PolyQ, bits: int) -> list[complex]:
    with mpmath.workprec(bits + 32):
        coeffs = [mpmath.mpf(c.numerator) / c.denominator for c in p.to_high()]
        return mpmath.polyroots(coeffs, maxsteps=200 + bits, extraprec=2 * bits + 64)


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _ = mpmath.mpf(x)._mpf_
    q = Fraction(man) * Fraction(2) ** exp
    return -q if sign else q


def root_disks(p: PolyQ, bits: int = 96) -> list[RootDisk]:
    """Disjoint certified inclusion disks, one per root of squarefree p."""
    if p.degree < 1:
        return []
    if squarefree_part(p).degree != p.degree:
        raise RootIsolationError(f"{p} is not squarefree")
    n = p.degree
    while bits <= MAX_BITS:
        try:
            roots = _seeds(p, bits)
        except mpmath.libmp.NoConvergence:
            bits *= 2
            continue
        centers = [
            CInterval(floor_dyadic(_mpf_to_fraction(z.real), bits), floor_dyadic(_mpf_to_fraction(z.imag), bits))
            for z in (mpmath.mpc(r) for r in roots)
        ]
        disks = _inclusion(p, centers, n, bits)
        if disks is not None:
            return disks
        bits *= 2
    raise RootIsolationError(f"could not isolate the roots of {p}")


def _inclusion(p: PolyQ, centers: list[CInterval], n: int, bits: int) -> list[RootDisk] | None:
    lead = p.lead
    radii = []
    for i, z in enumerate(centers):
        denom = CInterval(lead)
        for j, w in enumerate(centers):
            if j != i:
                diff = z - w
                if diff.abs2().hi == 0:
                    return None
                denom = denom * diff
        W = p(z) / denom
        radii.append(n * sqrt_iv(W.abs2(), bits + 8).hi)
    for i in range(n):
        for j in range(i + 1, n):
            d2 = (centers[i] - centers[j]).abs2().lo
            if d2 <= (radii[i] + radii[j]) ** 2:
                return None
    return [RootDisk(z.re.lo, z.im.lo, r) for z, r in zip(centers, radii)]


def _log_plus(m: RatInterval, bits: int) -> RatInterval:
    if m.hi <= 1:
        return RatInterval(0)
    if m.lo >= 1:
        return log_iv(m, bits)
    return RatInterval(0, log_iv(m.hi, bits).hi)


def log_mahler_measure(p: PolyQ, bits: int = 96) -> RatInterval:
    """log of lc(p) prod max(1, |root|) for an integer polynomial p."""
    p = p.primitive()
    lead = abs(p.lead)
    if p.degree == 1:
        return log_iv(max(lead, abs(p.coeffs[0])), bits)
    out = log_iv(lead, bits)
    for disk in root_disks(p, bits):
        out = out + _log_plus(disk.modulus(bits), bits)
    return out


def height_rel(a: KElem, eps: Fraction = Fraction(1, 10**12)) -> RatInterval:
    """Relative Weil height [K:Q] * h_abs(a) = (6 / deg) log M(minpoly(a))."""
    if a.is_zero():
        raise FieldError("height of zero")
    m = a.min_poly()
    scale = Fraction(a.field.degree, m.degree)
    bits = bits_for(eps / scale) + 8
    while True:
        h = log_mahler_measure(m, bits) * scale
        if h.width <= eps:
            return h
        bits *= 2


def abs_log(a: KElem, eps: Fraction = Fraction(1, 10**12)) -> RatInterval:
    """|log z| for the principal logarithm of the embedded element."""
    if a.is_zero():
        raise FieldError("log of zero")
    bits = bits_for(eps) + 8
    while True:
        z = a.embed_bits(bits)
        if not z.contains_zero():
            la = log_abs_iv(z, bits)
            arg = abs_arg_iv(z, bits)
            v = sqrt_iv(la.sqr() + arg.sqr(), bits)
            if v.width <= eps:
                return v
        bits *= 2


def h_prime(a: KElem, eps: Fraction = Fraction(1, 10**12)) -> RatInterval:
    """(1/d) max{h(a), |log a|, 1} with d = [K:Q] and h the relative height."""
    d = a.field.degree
    h = height_rel(a, eps)
    lg = abs_log(a, eps)
    m = RatInterval(max(h.lo, lg.lo, Fraction(1)), max(h.hi, lg.hi, Fraction(1)))
    return m / d


def log_abs(a: KElem, eps: Fraction = Fraction(1, 10**12)) -> RatInterval:
    """log |a| under the fixed embedding."""
    if a.is_zero():
        raise FieldError("log of zero")
    bits = bits_for(eps) + 8
    while True:
        z = a.embed_bits(bits)
        if z.abs2().lo > 0:
            v = log_abs_iv(z, bits)
            if v.width <= eps:
                return v
        bits *= 2
