"""Certificates for matrices with a simple real dominant eigenvalue.

For such A, A^n v = theta^n d + xi^n s + conj(xi)^n conj(s) with d real,
|theta| > 1 > |xi|.  A linear functional l then satisfies

    |l(A^n v)| >= |l(d)| |theta|^n - 2 |l(s)| |xi|^n,

and the right side increases with n once positive.  Below that onset the
claims are checked on exact integer vectors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..algebra.field import KElem
from ..algebra.interval import RatInterval, bits_for, sqrt_iv
from ..matrix import IntMat3, Vec3, dot
from .coeffs import EigenData, UnsupportedMatrix

MAX_ONSET = 10_000


class MarginNotCertifiable(ArithmeticError):
    pass


def _functional(l: Sequence[int], vec: Sequence[KElem]) -> KElem:
    return sum((li * x for li, x in zip(l, vec) if li), vec[0].field(0))


class DominantSplit:
    """Exact eigencomponents plus enclosures of |theta| and |xi|."""

    def __init__(self, A: IntMat3, eps: Fraction = Fraction(1, 10**12)):
        self.eig = EigenData(A)
        self.A = A
        self.bits = bits_for(eps) + 16
        F = self.eig.F
        th = F.theta_enclosure(self.bits)
        if th.contains_zero():
            raise MarginNotCertifiable("real root enclosure touches 0")
        self.theta_sign = 1 if th.positive() else -1
        self.theta_abs = abs(th)
        # |xi|^2 = |det| / |theta| for a monic cubic with constant term -det
        self.xi_abs = sqrt_iv(RatInterval(1) / self.theta_abs, self.bits)
        if not (self.theta_abs.lo > 1 and self.xi_abs.hi < 1):
            raise MarginNotCertifiable("no certified spectral gap |theta| > 1 > |xi|")

    def split(self, v: Sequence[int]) -> tuple[list[KElem], list[KElem]]:
        comps = self.eig.components(v)
        return comps[2], comps[0]  # theta part, xi_plus part

    def real(self, a: KElem) -> RatInterval:
        z = a.embed_bits(self.bits)
        return z.re

    def modulus(self, a: KElem) -> RatInterval:
        return a.embed_bits(self.bits).abs(self.bits)

    def lower_bound(self, dom_min: RatInterval, sub_max: RatInterval, n: int) -> RatInterval:
        return dom_min * self.theta_abs**n - sub_max * self.xi_abs**n * 2

    def onset(self, dom_min: RatInterval, sub_max: RatInterval) -> int:
        if not dom_min.positive():
            raise MarginNotCertifiable("dominant functional vanishes")
        for n in range(1, MAX_ONSET):
            if self.lower_bound(dom_min, sub_max, n).positive():
                return n
        raise MarginNotCertifiable(f"no onset below {MAX_ONSET}")


# argmax stabilisation ---------------------------------------------------------


@dataclass(frozen=True)
class ArgmaxCert:
    v: Vec3
    u_star: Vec3
    onset: int  # argmax is u_star for every n >= onset
    analytic_onset: int  # margin certified analytically from here on
    margin_at_onset: RatInterval


def argmax_stabilize(
    A: IntMat3,
    v: Sequence[int],
    U: Sequence[Vec3],
    eps: Fraction = Fraction(1, 10**12),
    split: DominantSplit | None = None,
) -> ArgmaxCert:
    """u* maximizing <u, A^n v> over U for all large n, and the first n from which that holds."""
    sp = split or DominantSplit(A, eps)
    if sp.theta_sign < 0:
        raise MarginNotCertifiable("negative dominant eigenvalue: the dominant direction alternates")
    d, s = sp.split(v)
    dvals = [sp.real(_functional(u, d)) for u in U]
    best = max(range(len(U)), key=lambda i: dvals[i].hi)
    u_star = tuple(U[best])
    diffs = [tuple(a - b for a, b in zip(u_star, u)) for u in U if tuple(u) != u_star]
    dom = [sp.real(_functional(g, d)) for g in diffs]
    if not all(x.positive() for x in dom):
        raise MarginNotCertifiable(f"dominant functional has no strict maximizer on U for v = {tuple(v)}")
    dom_min = RatInterval(min(x.lo for x in dom), min(x.hi for x in dom))
    sub = [sp.modulus(_functional(g, s)) for g in diffs]
    sub_max = RatInterval(max(x.lo for x in sub), max(x.hi for x in sub))
    n0 = sp.onset(dom_min, sub_max)
    # extend downward by exact evaluation
    k = n0
    vec = tuple(v)
    powers = [vec]
    for _ in range(n0 - 1):
        powers.append(A.apply(powers[-1]))
    while k > 1:
        x = powers[k - 1]
        top = max(dot(u, x) for u in U)
        if dot(u_star, x) != top:
            break
        k -= 1
    return ArgmaxCert(tuple(v), u_star, k, n0, sp.lower_bound(dom_min, sub_max, n0))


# cone certificate -------------------------------------------------------------


@dataclass(frozen=True)
class VectorConeCert:
    v: Vec3
    onset: int
    dom_min: RatInterval
    sub_max: RatInterval
    bound_at_onset: RatInterval


@dataclass
class DominantConeCert:
    passed: bool
    vectors: list[VectorConeCert] = field(default_factory=list)
    exact_checked_upto: int = 0
    witness: tuple | None = None  # (v, n, A^n v) where (*) fails
    reason: str = ""

    def cert_for(self, v: Sequence[int]) -> VectorConeCert:
        return next(c for c in self.vectors if c.v == tuple(v))


def _star(x) -> bool:
    a, b, c = x
    return a != 0 and b != 0 and c != 0 and a != b and b != c and c != a


def dominant_cone_cert(
    A: IntMat3,
    vectors: Sequence[Vec3],
    functionals: Sequence[Vec3],
    eps: Fraction = Fraction(1, 10**12),
) -> DominantConeCert:
    """Certify (*) for A^n v, all n >= 1 and all given v."""
    first = [(tuple(v), A.apply(v)) for v in vectors]
    for v, x in first:
        if not _star(x):
            return DominantConeCert(False, witness=(v, 1, x), exact_checked_upto=1, reason="(*) fails at n = 1")
    try:
        sp = DominantSplit(A, eps)
    except (UnsupportedMatrix, MarginNotCertifiable) as exc:
        return DominantConeCert(False, reason=str(exc))
    certs = []
    for v in vectors:
        d, s = sp.split(v)
        dom = [abs(sp.real(_functional(l, d))) for l in functionals]
        sub = [sp.modulus(_functional(l, s)) for l in functionals]
        dom_min = RatInterval(min(x.lo for x in dom), min(x.hi for x in dom))
        sub_max = RatInterval(max(x.lo for x in sub), max(x.hi for x in sub))
        try:
            n0 = sp.onset(dom_min, sub_max)
        except MarginNotCertifiable as exc:
            return DominantConeCert(False, certs, reason=f"{tuple(v)}: {exc}")
        certs.append(VectorConeCert(tuple(v), n0, dom_min, sub_max, sp.lower_bound(dom_min, sub_max, n0)))
    top = max(c.onset for c in certs)
    for v in vectors:
        x = tuple(v)
        for n in range(1, top):
            x = A.apply(x)
            if not _star(x):
                return DominantConeCert(False, certs, n, (tuple(v), n, x), "(*) fails")
    return DominantConeCert(True, certs, top - 1)
