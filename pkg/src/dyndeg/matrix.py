"""Integer 3x3 matrices in GL_3(Z) and small vector helpers."""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .algebra.poly import PolyQ

Vec3 = tuple[int, int, int]


class MatrixInputError(ValueError):
    pass


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def neg(v: Sequence[int]) -> Vec3:
    return tuple(-x for x in v)


class IntMat3:
    """Immutable 3x3 integer matrix with determinant +-1."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[int]], check: bool = True):
        rs = tuple(tuple(int(x) for x in r) for r in rows)
        if len(rs) != 3 or any(len(r) != 3 for r in rs):
            raise MatrixInputError("expected a 3x3 matrix")
        self.rows = rs
        if check and abs(self.det) != 1:
            raise MatrixInputError(f"determinant {self.det} is not +-1; matrix is not in GL_3(Z)")

    @classmethod
    def identity(cls) -> "IntMat3":
        return cls(((1, 0, 0), (0, 1, 0), (0, 0, 1)))

    def __repr__(self) -> str:
        return f"IntMat3({[list(r) for r in self.rows]})"

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMat3) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.rows[i][j]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.rows]

    @property
    def det(self) -> int:
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def __matmul__(self, other):
        if isinstance(other, IntMat3):
            cols = list(zip(*other.rows))
            return IntMat3(((dot(r, c) for c in cols) for r in self.rows), check=False)
        return tuple(dot(r, other) for r in self.rows)

    def apply(self, v: Sequence[int]) -> Vec3:
        return tuple(dot(r, v) for r in self.rows)

    def __neg__(self) -> "IntMat3":
        return IntMat3(((-x for x in r) for r in self.rows), check=False)

    def transpose(self) -> "IntMat3":
        return IntMat3(zip(*self.rows), check=False)

    def inverse(self) -> "IntMat3":
        (a, b, c), (d, e, f), (g, h, i) = self.rows
        adj = (
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        )
        det = self.det
        if abs(det) != 1:
            raise MatrixInputError("matrix is not invertible over Z")
        return IntMat3(((x * det for x in r) for r in adj), check=False)

    def __pow__(self, n: int) -> "IntMat3":
        base = self
        if n < 0:
            base, n = self.inverse(), -n
        result = IntMat3.identity()
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def norm1(self) -> int:
        """Maximum absolute column sum (operator 1-norm)."""
        return max(sum(abs(self.rows[i][j]) for i in range(3)) for j in range(3))

    def trace(self) -> int:
        return sum(self.rows[i][i] for i in range(3))

    def charpoly(self) -> PolyQ:
        """det(xI - A) = x^3 - tr x^2 + c2 x - det."""
        r = self.rows
        c2 = (
            r[0][0] * r[1][1] - r[0][1] * r[1][0]
            + r[0][0] * r[2][2] - r[0][2] * r[2][0]
            + r[1][1] * r[2][2] - r[1][2] * r[2][1]
        )
        return PolyQ((Fraction(-self.det), Fraction(c2), Fraction(-self.trace()), Fraction(1)))


def parse_matrix(text: str) -> IntMat3:
    """Three lines of three integers; blank lines and '#' comments ignored."""
    rows = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        except ValueError as exc:
            raise MatrixInputError(f"malformed matrix row {line!r}") from exc
    if len(rows) != 3 or any(len(r) != 3 for r in rows):
        raise MatrixInputError("matrix file must contain three rows of three integers")
    return IntMat3(rows)


def read_matrix(path: str | Path) -> IntMat3:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MatrixInputError(f"cannot read {path}: {exc}") from exc
    return parse_matrix(text)


def format_matrix(A: IntMat3) -> str:
    return "\n".join(" ".join(str(x) for x in r) for r in A.rows) + "\n"


# matrices used throughout
A0 = IntMat3(((-3, -14, -12), (4, 11, 6), (-2, -4, -1)))
A1 = IntMat3(((56, -19, -17), (-16, 6, 5), (207, -71, -63)))
