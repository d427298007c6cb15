"""From an eventually recurrent series to a polynomial equation for lambda."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..algebra.interval import RatInterval
from ..algebra.poly import PolyQ, cauchy_bound, count_real_roots, squarefree_part, sturm_sequence


class NoOnsetFound(LookupError):
    pass


class InconsistentSeries(ValueError):
    pass


class NoRealRoot(ValueError):
    pass


def _relation_holds(P: Sequence[int], rec: Sequence[int], i: int) -> bool:
    r1, r2, r3 = rec
    return P[i] == r1 * P[i - 1] + r2 * P[i - 2] + r3 * P[i - 3]


def eventual_rec_detect(P: Sequence[int], rec: Sequence[int], n_start_max: int, first_index: int = 1) -> int:
    """Smallest n0 such that P_n = r1 P_{n-1} + r2 P_{n-2} + r3 P_{n-3} for every supplied n >= n0.

    A relation at n is only checkable when P_{n-3} is supplied, i.e. n >= first_index + 3.
    """
    if len(P) < 4:
        raise ValueError("need at least four terms to check an order-3 relation")
    onset = first_index
    for i in range(3, len(P)):
        if not _relation_holds(P, rec, i):
            onset = first_index + i + 1
    if onset > n_start_max:
        raise NoOnsetFound(f"relation only holds from n = {onset} > {n_start_max}")
    if onset >= first_index + len(P):
        raise NoOnsetFound("relation fails at the last supplied term")
    return onset


def series_to_polynomial(P: Sequence[int], rec: Sequence[int], onset: int, first_index: int = 1) -> PolyQ:
    """Integer polynomial in lambda equivalent to sum_n P_n lambda^{-n} = 1.

    With t = 1/lambda and G(t) = sum P_n t^n, Q(t) G(t) = R(t) where
    Q = 1 - r1 t - r2 t^2 - r3 t^3 and R collects the pre-onset terms; G = 1
    becomes Q(t) - R(t) = 0, cleared to lambda^deg (Q - R)(1/lambda).
    """
    n1 = max(onset, first_index + 3)
    need = n1 - first_index
    if len(P) < need:
        raise InconsistentSeries(f"need terms up to n = {n1 - 1}")
    for i in range(max(3, need), len(P)):
        if not _relation_holds(P, rec, i):
            raise InconsistentSeries(f"recurrence violated at n = {first_index + i}")
    r1, r2, r3 = rec
    Q = PolyQ((1, -r1, -r2, -r3))
    G = PolyQ([0] * first_index + list(P[:need]))
    QG = Q * G
    R = PolyQ(QG.coeffs[:n1])
    return (Q - R).reverse(max(Q.degree, R.degree)).primitive()


def largest_real_root(p: PolyQ, eps: Fraction = Fraction(1, 10**6)) -> RatInterval:
    """Enclosure (lo, hi] of the largest real root by Sturm-count bisection."""
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    if p.degree == 1:
        return RatInterval(-p[0] / p[1])
    q = squarefree_part(p)
    seq = sturm_sequence(q)
    B = cauchy_bound(q)
    lo, hi = -B - 1, B
    if count_real_roots(seq, lo, hi) == 0:
        raise NoRealRoot(f"{p.format()} has no real root")
    while hi - lo > eps:
        mid = (lo + hi) / 2
        if count_real_roots(seq, mid, hi) >= 1:
            lo = mid
        elif q(mid) == 0:
            return RatInterval(mid)
        else:
            hi = mid
    return RatInterval(lo, hi)
