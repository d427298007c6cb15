"""The functional Psi_{U,V}(A^n), the cone predicate, and certified lambda_1 enclosures.

lambda_1(f_A) is the unique lambda > 0 with

    F(lambda) = sum_{n >= 1} Psi(A^n) lambda^{-n} = 1.

F is strictly decreasing, so bisection on exact rational bounds of F is
enough.  The lower bound is a partial sum (all terms are nonnegative); the
upper bound adds a geometric tail from Psi(A^n) <= 8 ||A^n||_1 and
submultiplicativity of the operator 1-norm.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.interval import RatInterval
from .maps import build_fA, degree_bound
from .matrix import IntMat3, Vec3, dot

E1, E2, E3 = (1, 0, 0), (0, 1, 0), (0, 0, 1)


@dataclass(frozen=True)
class SupportSets:
    U: tuple[Vec3, ...] = ((0, 0, 0), (-1, 0, 0), (0, -1, 0), (0, 0, -1))
    V: tuple[Vec3, ...] = ((1, 1, 0), (0, 1, 1), (-1, -1, 0), (0, -1, -1))
    P: tuple[Vec3, ...] = ((-1, -1, -1), E1, E2, E3)

    @property
    def W(self) -> tuple[Vec3, ...]:
        out = []
        for a in self.U:
            for b in self.U:
                d = tuple(x - y for x, y in zip(a, b))
                if any(d) and d not in out:
                    out.append(d)
        return tuple(out)


SUPPORT = SupportSets()

# functionals whose nonvanishing is the cone predicate (*)
STAR_FUNCTIONALS: tuple[Vec3, ...] = (E1, E2, E3, (1, -1, 0), (0, 1, -1), (-1, 0, 1))


def star_test(x: Sequence[int]) -> bool:
    """x, y, z pairwise distinct and nonzero."""
    a, b, c = x
    return a != 0 and b != 0 and c != 0 and a != b and b != c and c != a


def max_over_U(x: Sequence[int], U: Iterable[Vec3] = SUPPORT.U) -> int:
    return max(dot(u, x) for u in U)


def psi_of_matrix(M: IntMat3, S: SupportSets = SUPPORT) -> int:
    return sum(max_over_U(M.apply(v), S.U) for v in S.V)


def psi(A: IntMat3, n: int = 1) -> int:
    """Psi_{U,V}(A^n) as an exact integer."""
    return psi_of_matrix(A**n)


def psi_sequence(A: IntMat3, N: int, start: int = 1) -> list[int]:
    """Psi(A^n) for n = start .. start + N - 1 via incremental vector powers."""
    vs = list(SUPPORT.V)
    for _ in range(start):
        vs = [A.apply(v) for v in vs]
    out = []
    for _ in range(N):
        out.append(sum(max_over_U(v) for v in vs))
        vs = [A.apply(v) for v in vs]
    return out


def psi_bounds(A: IntMat3) -> tuple[int, int]:
    """(Psi(A), degree bound of f_A): the elementary bracket for lambda_1(f_A)."""
    return psi(A, 1), degree_bound(build_fA(A).forward)


# lambda_1 --------------------------------------------------------------------


class TailNotConvergent(ArithmeticError):
    pass


class BracketInvalid(ArithmeticError):
    pass


class ConeConditionRequired(ValueError):
    pass


@dataclass(frozen=True)
class ConeEvidence:
    """Evidence that the cone condition holds for every A^n, n >= 1."""

    kind: str  # "dominant", "recurrence", "cited"
    passed: bool
    detail: dict = field(default_factory=dict, compare=False)


class SeriesBounds:
    """Exact partial sums of Psi(A^n) lambda^{-n} plus a certified tail."""

    def __init__(self, A: IntMat3, m_start: int = 8, m_max: int = 32):
        self.A = A
        self.m_start = m_start
        self.m_max = m_max
        self._psi: list[int] = []
        self._norms: dict[int, int] = {}

    def psi_terms(self, N: int) -> list[int]:
        if len(self._psi) < N:
            self._psi = psi_sequence(self.A, N)
        return self._psi[:N]

    def norm(self, k: int) -> int:
        if k not in self._norms:
            self._norms[k] = (self.A**k).norm1()
        return self._norms[k]

    def choose_m(self, lam: Fraction) -> int:
        m = self.m_start
        while m <= self.m_max:
            if self.norm(m) < lam**m:
                return m
            m *= 2
        raise TailNotConvergent(f"||A^m||_1 >= lambda^m for all m <= {self.m_max} at lambda = {float(lam):.6g}")

    def partial(self, lam: Fraction, N: int) -> Fraction:
        acc = Fraction(0)
        for p in reversed(self.psi_terms(N)):
            acc = (acc + p) / lam
        return acc

    def tail(self, lam: Fraction, N: int, m: int | None = None) -> Fraction:
        """Upper bound for sum_{n > N} Psi(A^n) lambda^{-n}; N is rounded up to a multiple of m."""
        m = m or self.choose_m(lam)
        rho = Fraction(self.norm(m)) / lam**m
        if rho >= 1:
            raise TailNotConvergent(f"tail ratio {float(rho):.6g} >= 1")
        Q = -(-N // m)
        head = sum(Fraction(self.norm(r)) / lam**r for r in range(1, m + 1))
        # terms N < n <= Q m are covered by the same geometric bound with q = Q - 1
        extra = Fraction(0)
        if Q * m > N:
            q0 = Q - 1
            for n in range(N + 1, Q * m + 1):
                r = n - q0 * m
                extra += 8 * Fraction(self.norm(m)) ** q0 * self.norm(r) / lam**n
        return 8 * head * rho**Q / (1 - rho) + extra

    def bounds(self, lam: Fraction, N: int) -> tuple[Fraction, Fraction]:
        lo = self.partial(lam, N)
        return lo, lo + self.tail(lam, N)


@dataclass(frozen=True)
class Lambda1Enclosure:
    interval: RatInterval
    terms: int
    m: int
    F_lo_lower: Fraction  # certified lower bound of F(interval.lo); > 1
    F_hi_upper: Fraction  # certified upper bound of F(interval.hi); < 1

    @property
    def lo(self) -> Fraction:
        return self.interval.lo

    @property
    def hi(self) -> Fraction:
        return self.interval.hi


def lambda1_enclosure(
    A: IntMat3,
    cone_cert: ConeEvidence | None,
    eps: Fraction = Fraction(1, 10**6),
    n_start: int = 64,
    n_max: int = 4096,
) -> Lambda1Enclosure:
    """Bisect F(lambda) = 1 with exact rational bounds until the bracket is narrower than eps."""
    if cone_cert is None or not cone_cert.passed:
        raise ConeConditionRequired("the series equation needs a passing cone-condition certificate")
    lower, upper = psi_bounds(A)
    sb = SeriesBounds(A)
    lo, hi = Fraction(max(lower, 1)), Fraction(upper)
    N = n_start

    def classify(lam: Fraction) -> int:
        """+1 if F(lam) > 1, -1 if F(lam) < 1, 0 if undecided at the current N."""
        nonlocal N
        while True:
            try:
                f_lo, f_hi = sb.bounds(lam, N)
            except TailNotConvergent:
                if N >= n_max:
                    raise
                f_lo, f_hi = sb.partial(lam, N), None
            if f_lo > 1:
                return 1
            if f_hi is not None and f_hi < 1:
                return -1
            if N >= n_max:
                return 0
            N *= 2

    if classify(lo) != 1:
        raise BracketInvalid(f"series not certified > 1 at lambda = {lo}")
    if classify(hi) != -1:
        raise BracketInvalid(f"series not certified < 1 at lambda = {hi}")
    while hi - lo > eps:
        mid = (lo + hi) / 2
        # keep endpoints dyadic and short
        mid = Fraction(round(mid * 2**40), 2**40)
        if mid <= lo or mid >= hi:
            break
        s = classify(mid)
        if s == 1:
            lo = mid
        elif s == -1:
            hi = mid
        else:
            raise BracketInvalid(f"cannot separate F(lambda) from 1 at {float(mid)} with {N} terms")
    f_lo_lower = sb.partial(lo, N)
    f_hi_upper = sb.bounds(hi, N)[1]
    return Lambda1Enclosure(RatInterval(lo, hi), N, sb.choose_m(hi), f_lo_lower, f_hi_upper)


def check_sign_contract(A: IntMat3, enc: Lambda1Enclosure) -> bool:
    """Re-derive F(lo) > 1 > F(hi) from scratch with the stored term count."""
    sb = SeriesBounds(A)
    below = sb.partial(enc.lo, enc.terms)
    above = sb.bounds(enc.hi, enc.terms)[1]
    return below > 1 > above
