"""Effective zero-freedom for large indices from a lower bound on linear forms in logarithms.

If a_N = c1 xi1^N + c2 xi2^N + c3 xi3^N = 0 with |xi1| = |xi2| > 1 and
xi1 xi2 xi3 = +-1, then

    -C h'(xi1/xi2) h'(-c1/c2) h'(-1) max{log 2N, 1}
        < log 2 + log|c3/c2| - 3 N log|xi1|,

with C = 18 (k+1)! k^(k+1) (32 d)^(k+2) log(2 k d) for k = 3, d = 6.
The right side eventually wins, which bounds every zero index.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, factorial

from ..algebra.field import SplitCubicField
from ..algebra.heights import h_prime, log_abs
from ..algebra.interval import RatInterval, log_iv
from .coeffs import SeqCoeffs

BAKER_K = 3
BAKER_D = 6
DEFAULT_BAKER_TARGET = 7 * 10**18


class HypothesisFailure(ValueError):
    pass


def baker_integer_part(k: int, d: int) -> int:
    return 18 * factorial(k + 1) * k ** (k + 1) * (32 * d) ** (k + 2)


def baker_constant(k: int, d: int, bits: int = 96) -> RatInterval:
    """18 (k+1)! k^(k+1) (32 d)^(k+2) log(2 k d)."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return log_iv(2 * k * d, bits) * baker_integer_part(k, d)


def _gap_lower(N: int, C: Fraction, slope: Fraction, offset: Fraction, bits: int) -> Fraction:
    """Certified lower bound of slope*N + offset - C*max(log 2N, 1)."""
    lg = log_iv(2 * N, bits).hi
    return slope * N + offset - C * max(lg, Fraction(1))


def baker_threshold(C_total: RatInterval, slope: RatInterval, offset: RatInterval, bits: int = 96) -> int:
    """Smallest N0 with slope*N + offset > C*max(log 2N, 1) certified for every N >= N0.

    The gap g(N) = sN + o - C log 2N is convex with minimum at N = C/s: if
    it is positive there it is positive for every N >= 2, otherwise its last
    root lies above C/s and is located by bisection on certified values.
    """
    C = Fraction(RatInterval.coerce(C_total).hi)
    s = Fraction(RatInterval.coerce(slope).lo)
    o = Fraction(RatInterval.coerce(offset).lo)
    if s <= 0:
        raise ValueError("slope must be positive")
    if C < 0:
        raise ValueError("C_total must be nonnegative")

    def ok(N: int) -> bool:
        return _gap_lower(N, C, s, o, bits) > 0

    # for N >= 2 the max is log 2N, and g decreases up to C/s then increases
    M = max(2, ceil(C / s))
    if ok(M):
        return 1 if ok(1) else 2
    lo, hi = M, 2 * M
    while not ok(hi):
        lo, hi = hi, 2 * hi
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class BakerBound:
    N0: int
    constant: RatInterval
    h_ratio: RatInterval
    h_coeff: RatInterval
    h_minus_one: RatInterval
    slope: RatInterval
    offset: RatInterval


def zero_free_bound_from_baker(
    coeffs: SeqCoeffs,
    F: SplitCubicField,
    eps: Fraction = Fraction(1, 10**9),
    xi1_abs_log: RatInterval | None = None,
    h_ratio: RatInterval | None = None,
) -> BakerBound:
    """N0 such that a_N != 0 for every N > N0."""
    if not coeffs.all_nonzero:
        raise HypothesisFailure("some eigen-coefficient vanishes")
    if not coeffs.c1_ne_minus_c2:
        raise HypothesisFailure("c1 = -c2")
    xi1, xi2, _ = coeffs.roots
    lx = xi1_abs_log if xi1_abs_log is not None else log_abs(xi1, eps)
    if not lx.positive():
        raise HypothesisFailure("|xi1| > 1 is not certified")
    hr = h_ratio if h_ratio is not None else h_prime(xi1 / xi2, eps)
    hc = h_prime(-coeffs.c1 / coeffs.c2, eps)
    hm = h_prime(F(-1), eps)
    C = baker_constant(BAKER_K, BAKER_D) * hr * hc * hm
    slope = lx * 3
    offset = -log_iv(2) - log_abs(coeffs.c3 / coeffs.c2, eps)
    N0 = baker_threshold(C, slope, offset)
    return BakerBound(N0, C, hr, hc, hm, slope, offset)


def contradiction_holds(N: int, C_total, slope, offset, bits: int = 96) -> bool:
    """slope*N + offset > C*max(log 2N, 1), certified at a single N."""
    C = Fraction(RatInterval.coerce(C_total).hi)
    return _gap_lower(N, C, Fraction(RatInterval.coerce(slope).lo), Fraction(RatInterval.coerce(offset).lo), bits) > 0
