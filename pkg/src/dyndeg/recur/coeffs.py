"""Exact eigen-decomposition of <w, A^n v> over the splitting field K."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from ..algebra.field import FieldError, KElem, SplitCubicField
from ..matrix import IntMat3


class UnsupportedMatrix(ValueError):
    pass


def _cross(u: Sequence[KElem], v: Sequence[KElem]) -> list[KElem]:
    return [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]


def _null_vector(rows: list[list[KElem]]) -> list[KElem]:
    """Kernel generator of a rank-2 3x3 matrix over K (cross product of two independent rows)."""
    for i, j in ((0, 1), (0, 2), (1, 2)):
        q = _cross(rows[i], rows[j])
        if not all(x.is_zero() for x in q):
            return q
    raise AssertionError("eigenvalue of a simple root must have a one-dimensional eigenspace")


class EigenData:
    """Right/left eigenvectors of A over K for the roots (xi_plus, xi_minus, theta)."""

    def __init__(self, A: IntMat3, F: SplitCubicField | None = None):
        cubic = A.charpoly()
        if F is None:
            try:
                F = SplitCubicField(cubic)
            except FieldError as exc:
                raise UnsupportedMatrix(str(exc)) from exc
        if F.cubic != cubic:
            raise UnsupportedMatrix("characteristic polynomial does not match the field")
        self.A = A
        self.F = F
        theta, xp, xm = F.roots()
        self.roots = (xp, xm, theta)

    @cached_property
    def vectors(self) -> tuple[tuple[list[KElem], list[KElem]], ...]:
        out = []
        F = self.F
        for xi in self.roots:
            M = [[F(self.A[i, j]) - (xi if i == j else 0) for j in range(3)] for i in range(3)]
            q = _null_vector(M)
            s = _null_vector([[M[i][j] for i in range(3)] for j in range(3)])
            norm = sum((a * b for a, b in zip(s, q)), F(0))
            s = [x / norm for x in s]
            out.append((q, s))
        return tuple(out)

    def components(self, v: Sequence[int]) -> list[list[KElem]]:
        """The three eigencomponents of v; they sum to v exactly."""
        out = []
        for q, s in self.vectors:
            coef = sum((si * x for si, x in zip(s, v)), self.F(0))
            out.append([qi * coef for qi in q])
        return out


@dataclass(frozen=True)
class SeqCoeffs:
    c1: KElem
    c2: KElem
    c3: KElem
    roots: tuple[KElem, KElem, KElem]

    @property
    def all_nonzero(self) -> bool:
        return not (self.c1.is_zero() or self.c2.is_zero() or self.c3.is_zero())

    @property
    def c1_ne_minus_c2(self) -> bool:
        return not (self.c1 + self.c2).is_zero()

    def value(self, n: int) -> KElem:
        x1, x2, x3 = self.roots
        return self.c1 * x1**n + self.c2 * x2**n + self.c3 * x3**n


def coeffs_in_K(A: IntMat3, v: Sequence[int], w: Sequence[int], F: SplitCubicField | None = None,
                eig: EigenData | None = None) -> SeqCoeffs:
    """c_i with <w, A^n v> = c1 xi1^n + c2 xi2^n + c3 xi3^n, exactly in K."""
    eig = eig or EigenData(A, F)
    cs = []
    for q, s in eig.vectors:
        wq = sum((wi * qi for wi, qi in zip(w, q)), eig.F(0))
        sv = sum((si * vi for si, vi in zip(s, v)), eig.F(0))
        cs.append(wq * sv)
    return SeqCoeffs(cs[0], cs[1], cs[2], eig.roots)
