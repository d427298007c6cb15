"""Monomial and linear maps of P^3, the compositions f_A, and orbit heights."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Sequence, Union

from .algebra.interval import RatInterval, log_iv
from .matrix import IntMat3

log = logging.getLogger(__name__)

# 4x4 matrix of the linear change of coordinates used by f_A
B_MATRIX = (
    (1, -1, 1, -1),
    (1, 1, -1, 1),
    (-1, 1, 1, -1),
    (1, -1, 1, 1),
)
B_INVERSE = tuple(
    tuple(Fraction(x, 2) for x in row)
    for row in ((1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (-1, 0, 0, 1))
)
MINUS_I = IntMat3(((-1, 0, 0), (0, -1, 0), (0, 0, -1)))

DEFAULT_ORBIT_STEPS = 3


class IndeterminatePoint(ArithmeticError):
    """A factor of the composition is undefined at the given point."""

    def __init__(self, message: str, index: int | None = None):
        super().__init__(message)
        self.index = index


# points ----------------------------------------------------------------------


class ProjPointQ:
    """Rational point of P^3 as coprime integers, first nonzero entry positive."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        fr = [Fraction(c) for c in coords]
        if len(fr) != 4:
            raise ValueError("a point of P^3 has four coordinates")
        if not any(fr):
            raise ValueError("the zero vector is not a projective point")
        den = reduce(lcm, (c.denominator for c in fr), 1)
        ints = [int(c * den) for c in fr]
        g = reduce(gcd, ints, 0)
        ints = [x // g for x in ints]
        first = next(x for x in ints if x)
        if first < 0:
            ints = [-x for x in ints]
        self.coords: tuple[int, ...] = tuple(ints)

    def __eq__(self, other) -> bool:
        return isinstance(other, ProjPointQ) and self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return "[" + ":".join(str(x) for x in self.coords) + "]"

    def in_torus(self) -> bool:
        return all(self.coords)


def weil_height(P: ProjPointQ, bits: int = 96) -> RatInterval:
    """log max |x_i| for the coprime integer representative."""
    return log_iv(max(abs(x) for x in P.coords), bits)


# factors ---------------------------------------------------------------------


@dataclass(frozen=True)
class HomogMonomialMap:
    expo: tuple[tuple[int, ...], ...]
    degree: int

    def __post_init__(self):
        sums = {sum(r) for r in self.expo}
        if sums != {self.degree}:
            raise ValueError(f"row sums {sorted(sums)} differ from degree {self.degree}")
        if any(x < 0 for r in self.expo for x in r):
            raise ValueError("negative exponent in a homogeneous monomial map")
        if any(min(col) != 0 for col in zip(*self.expo)):
            raise ValueError("exponent columns must have minimum 0")

    def format(self) -> str:
        def mono(row):
            parts = []
            for j, e in enumerate(row):
                if e == 1:
                    parts.append(f"x{j}")
                elif e:
                    parts.append(f"x{j}^{e}")
            return "*".join(parts) or "1"

        return "[" + " : ".join(mono(r) for r in self.expo) + "]"


def homogenize_monomial(A: IntMat3) -> HomogMonomialMap:
    """Homogeneous exponent table of h_A on P^3 (row i gives coordinate i)."""
    raw = [[0, 0, 0, 0]]
    for i in range(3):
        row = A.rows[i]
        raw.append([-sum(row), row[0], row[1], row[2]])
    mins = [min(raw[i][j] for i in range(4)) for j in range(4)]
    expo = tuple(tuple(raw[i][j] - mins[j] for j in range(4)) for i in range(4))
    return HomogMonomialMap(expo, sum(expo[0]))


@dataclass(frozen=True)
class LinearFactor:
    matrix: tuple[tuple[Fraction, ...], ...]
    name: str = "L"

    degree = 1

    def __call__(self, x: Sequence[Fraction]) -> list[Fraction]:
        return [sum(m * v for m, v in zip(row, x)) for row in self.matrix]

    def integer_row_bound(self) -> int:
        """Max absolute row sum of the smallest integer multiple of the matrix."""
        den = reduce(lcm, (Fraction(m).denominator for r in self.matrix for m in r), 1)
        ints = [[int(Fraction(m) * den) for m in r] for r in self.matrix]
        g = reduce(gcd, (x for r in ints for x in r), 0)
        return max(sum(abs(x) // g for x in r) for r in ints)


@dataclass(frozen=True)
class MonomialFactor:
    source: IntMat3
    name: str = "h"

    @property
    def homog(self) -> HomogMonomialMap:
        return homogenize_monomial(self.source)

    @property
    def degree(self) -> int:
        return self.homog.degree

    def __call__(self, x: Sequence[Fraction]) -> list[Fraction]:
        expo = self.homog.expo
        for j in range(4):
            if x[j] == 0 and any(expo[i][j] > 0 for i in range(4)):
                raise IndeterminatePoint(f"{self.name}: coordinate x{j} vanishes")
        return [reduce(lambda acc, jv: acc * jv[1] ** expo[i][jv[0]], enumerate(x), Fraction(1)) for i in range(4)]


Factor = Union[LinearFactor, MonomialFactor]


@dataclass(frozen=True)
class BirationalComposition:
    """f = factors[0] o factors[1] o ... ; evaluation applies the last factor first."""

    factors: tuple = field(default_factory=tuple)
    name: str = "f"

    def __post_init__(self):
        for f in self.factors:
            if isinstance(f, LinearFactor) and _det4(f.matrix) == 0:
                raise ValueError(f"linear factor {f.name} is singular")

    def describe(self) -> str:
        return " o ".join(f.name for f in self.factors) or "id"


def _det4(M) -> Fraction:
    A = [[Fraction(x) for x in r] for r in M]
    n, det = 4, Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            A[r] = [a - f * b for a, b in zip(A[r], A[c])]
    return det


def degree_bound(c: BirationalComposition) -> int:
    out = 1
    for f in c.factors:
        out *= f.degree
    return out


def height_constant(c: BirationalComposition, bits: int = 64) -> RatInterval:
    """C with h(f(P)) <= deg(f) h(P) + C, from integer row sums and degrees."""
    const = RatInterval(0)
    for f in reversed(c.factors):
        if isinstance(f, LinearFactor):
            const = const + log_iv(f.integer_row_bound(), bits)
        else:
            const = const * f.degree
    return const


@dataclass(frozen=True)
class FA:
    forward: BirationalComposition
    inverse: BirationalComposition
    conjugated_inverse: BirationalComposition


def _lin(M, name):
    return LinearFactor(tuple(tuple(Fraction(x) for x in r) for r in M), name)


def build_fA(A: IntMat3) -> FA:
    """f_A = L_{B^-1} o h_{-I} o L_B o h_A, its inverse, and f_{A^-1}."""
    Ainv = A.inverse()
    LB, LBi = _lin(B_MATRIX, "L_B"), _lin(B_INVERSE, "L_B^-1")
    cremona = MonomialFactor(MINUS_I, "h_-I")
    forward = BirationalComposition((LBi, cremona, LB, MonomialFactor(A, "h_A")), "f_A")
    inverse = BirationalComposition((MonomialFactor(Ainv, "h_A^-1"), LBi, cremona, LB), "f_A^-1")
    conj = BirationalComposition((LBi, cremona, LB, MonomialFactor(Ainv, "h_A^-1")), "f_{A^-1}")
    return FA(forward, inverse, conj)


def evaluate(c: BirationalComposition, P: ProjPointQ) -> ProjPointQ:
    x = [Fraction(v) for v in P.coords]
    for f in reversed(c.factors):
        x = _normalize(f(x))
        if not any(x):
            raise IndeterminatePoint(f"{f.name}: image is the zero vector")
    return ProjPointQ(x)


def _normalize(x: list[Fraction]) -> list[Fraction]:
    if not any(x):
        return x
    den = reduce(lcm, (v.denominator for v in x), 1)
    ints = [int(v * den) for v in x]
    g = reduce(gcd, ints, 0)
    return [Fraction(v // g) for v in ints]


@dataclass
class OrbitResult:
    points: list[ProjPointQ]
    heights: list[RatInterval]
    complete: bool
    failed_at: int | None = None
    reason: str | None = None

    def growth_ratios(self, bits: int = 64) -> list[RatInterval]:
        """h+(f^k P)^(1/k) for k >= 1 with h+ = max(1, h)."""
        out = []
        for k, h in enumerate(self.heights):
            if k == 0:
                continue
            hp = RatInterval(max(h.lo, 1), max(h.hi, 1))
            out.append(nth_root_iv(hp, k, bits))
        return out


def nth_root_iv(x: RatInterval, k: int, bits: int = 64) -> RatInterval:
    def iroot(n: int, k: int) -> int:
        if n < 2:
            return n
        r = 1 << ((n.bit_length() + k - 1) // k)
        while True:
            s = ((k - 1) * r + n // r ** (k - 1)) // k
            if s >= r:
                return r
            r = s

    def lo_root(q: Fraction) -> Fraction:
        scaled = (q.numerator << (bits * k)) // q.denominator
        return Fraction(iroot(scaled, k), 1 << bits)

    def hi_root(q: Fraction) -> Fraction:
        r = lo_root(q)
        return r if r**k == q else r + Fraction(1, 1 << bits)

    return RatInterval(lo_root(x.lo), hi_root(x.hi))


def orbit_heights(c: BirationalComposition, P: ProjPointQ, n_max: int = DEFAULT_ORBIT_STEPS) -> OrbitResult:
    """Heights of f^k(P) for k = 0..n_max, stopping early on indeterminacy."""
    deg = degree_bound(c)
    pts, hs = [P], [weil_height(P)]
    for k in range(1, n_max + 1):
        digits = float(hs[-1].hi) * deg / 2.302585
        if digits > 5e6:
            log.warning("orbit step %d of %s may produce ~%.3g-digit coordinates", k, c.name, digits)
        try:
            Q = evaluate(c, pts[-1])
        except IndeterminatePoint as exc:
            return OrbitResult(pts, hs, False, k, str(exc))
        pts.append(Q)
        hs.append(weil_height(Q))
    return OrbitResult(pts, hs, True)
