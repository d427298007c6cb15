"""Order-3 integer recurrences <w, A^n v> and their zero patterns modulo m.

Because the last recurrence coefficient is +-1 the state map
(a_n, a_{n+1}, a_{n+2}) -> (a_{n+1}, a_{n+2}, a_{n+3}) is a bijection of
(Z/m)^3, so every orbit is purely periodic and the cycle starts at n = 0.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import lcm
from typing import Callable, Iterable, Sequence

from ..matrix import IntMat3, dot

DEFAULT_STEP_CAP = 10**7


class StepCapExceeded(RuntimeError):
    def __init__(self, m: int, cap: int):
        super().__init__(f"period modulo {m} exceeds {cap} steps")
        self.m = m


class NotFound(LookupError):
    pass


class TargetNotReached(LookupError):
    pass


@dataclass(frozen=True)
class LinRec3:
    """a_n = r1 a_{n-1} + r2 a_{n-2} + r3 a_{n-3} with initial terms a_0, a_1, a_2."""

    rec: tuple[int, int, int]
    init: tuple[int, int, int]

    def __post_init__(self):
        if abs(self.rec[2]) != 1:
            raise ValueError("the recurrence must be invertible (r3 = +-1)")

    def terms(self, n: int) -> list[int]:
        """a_0 .. a_{n-1}."""
        out = list(self.init[:n])
        r1, r2, r3 = self.rec
        while len(out) < n:
            out.append(r1 * out[-1] + r2 * out[-2] + r3 * out[-3])
        return out

    def term(self, n: int) -> int:
        return self.terms(n + 1)[n]


def rec_from_matrix(A: IntMat3) -> tuple[int, int, int]:
    """(r1, r2, r3) with x^3 - r1 x^2 - r2 x - r3 the characteristic polynomial of A."""
    c = A.charpoly().int_coeffs()  # low degree first, monic
    return (-c[2], -c[1], -c[0])


def seq_from_pair(A: IntMat3, v: Sequence[int], w: Sequence[int]) -> LinRec3:
    Av = A.apply(v)
    AAv = A.apply(Av)
    return LinRec3(rec_from_matrix(A), (dot(w, v), dot(w, Av), dot(w, AAv)))


# mod-m cycles -----------------------------------------------------------------


@dataclass(frozen=True)
class ModCert:
    m: int
    period: int
    zero_positions: tuple[int, ...]


def mod_cycle(r: LinRec3, m: int, step_cap: int = DEFAULT_STEP_CAP) -> ModCert:
    """Full period of the state triple mod m and the zero positions inside it."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    r1, r2, r3 = (x % m for x in r.rec)
    a, b, c = (x % m for x in r.init)
    start = (a, b, c)
    zeros = [0] if a == 0 else []
    n = 0
    while True:
        a, b, c = b, c, (r1 * c + r2 * b + r3 * a) % m
        n += 1
        if (a, b, c) == start:
            return ModCert(m, n, tuple(zeros))
        if a == 0:
            zeros.append(n)
        if n >= step_cap:
            raise StepCapExceeded(m, step_cap)


def _period_if_zero_free(r: LinRec3, m: int, allow_start_zero: bool, step_cap: int) -> int | None:
    """Period mod m if the only zeros are (optionally) at n = 0; None as soon as another zero shows up."""
    r1, r2, r3 = (x % m for x in r.rec)
    a, b, c = (x % m for x in r.init)
    if a == 0 and not allow_start_zero:
        return None
    start = (a, b, c)
    n = 0
    while True:
        a, b, c = b, c, (r1 * c + r2 * b + r3 * a) % m
        n += 1
        if (a, b, c) == start:
            return n
        if a == 0:
            return None
        if n >= step_cap:
            raise StepCapExceeded(m, step_cap)


def certify_never_zero(r: LinRec3, moduli: Iterable[int], step_cap: int = DEFAULT_STEP_CAP) -> int:
    """First modulus in which no term of the sequence vanishes; then a_n != 0 for all n >= 0."""
    for m in moduli:
        try:
            if _period_if_zero_free(r, m, False, step_cap) is not None:
                return m
        except StepCapExceeded:
            continue
    raise NotFound("no modulus in range certifies the sequence zero-free")


@dataclass(frozen=True)
class LcmCert:
    moduli_used: tuple[tuple[int, int], ...]  # (modulus, period)
    lcm_periods: int
    target: int
    skipped: tuple[int, ...] = ()

    def verify(self, r: LinRec3, step_cap: int = DEFAULT_STEP_CAP) -> bool:
        """Re-check every stored modulus and the lcm without any search."""
        acc = 1
        for m, per in self.moduli_used:
            cert = mod_cycle(r, m, step_cap)
            if cert.period != per or cert.zero_positions != (0,):
                return False
            acc = lcm(acc, per)
        return acc == self.lcm_periods and acc > self.target


def certify_zero_only_at_start(
    r: LinRec3, moduli: Iterable[int], target: int, step_cap: int = DEFAULT_STEP_CAP
) -> LcmCert:
    """Accumulate lcm of periods over moduli where a_n = 0 only at n = 0 (mod period).

    Any integer zero a_N = 0 forces N = 0 modulo each such period, hence modulo
    their lcm; once the lcm exceeds target, a_N != 0 for 1 <= N <= target.
    """
    if r.init[0] != 0:
        raise ValueError("sequence does not start with zero")
    used: list[tuple[int, int]] = []
    skipped: list[int] = []
    acc = 1
    for m in moduli:
        try:
            per = _period_if_zero_free(r, m, True, step_cap)
        except StepCapExceeded:
            skipped.append(m)
            continue
        if per is None:
            continue
        used.append((m, per))
        acc = lcm(acc, per)
        if acc > target:
            return LcmCert(tuple(used), acc, target, tuple(skipped))
    raise TargetNotReached(f"lcm {acc} did not exceed {target}")


# concurrency ------------------------------------------------------------------


def default_jobs() -> int:
    env = os.environ.get("DYNDEG_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def parallel_map(fn: Callable, items: Sequence, jobs: int | None = None) -> list:
    """Map in a process pool when jobs > 1; results keep input order."""
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))
