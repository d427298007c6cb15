from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dyndeg.matrix import A1, A0, IntMat3
from dyndeg.psi import (
    SUPPORT,
    ConeConditionRequired,
    ConeEvidence,
    SeriesBounds,
    check_sign_contract,
    lambda1_enclosure,
    max_over_U,
    psi,
    psi_bounds,
    psi_of_matrix,
    psi_sequence,
    star_test,
)

CITED = ConeEvidence("cited", True)


def brute_psi(M: IntMat3) -> int:
    # enumeration oracle straight from the definition
    total = 0
    for v in SUPPORT.V:
        x = [sum(M.rows[i][j] * v[j] for j in range(3)) for i in range(3)]
        total += max(u[0] * x[0] + u[1] * x[1] + u[2] * x[2] for u in SUPPORT.U)
    return total


def test_support_sets():
    assert len(SUPPORT.W) == 12
    assert set(SUPPORT.W) == {tuple(-x for x in w) for w in SUPPORT.W}


def test_psi_values():
    assert psi(A0) == 75
    assert psi(A1) == 291
    assert psi(IntMat3.identity()) == 2
    inv = A0.inverse()
    assert [psi(inv, n) for n in range(1, 5)] == [209, 3067, 44541, 646855]
    assert psi_sequence(inv, 4) == [209, 3067, 44541, 646855]


def test_max_sequences_A_inverse():
    inv = A0.inverse()
    expected = [
        [29, 427, 6201, 90055],
        [51, 755, 10967, 159271],
        [47, 681, 9887, 143585],
        [82, 1204, 17486, 253944],
    ]
    for v, exp in zip(SUPPORT.V, expected):
        got, x = [], v
        for _ in range(4):
            x = inv.apply(x)
            got.append(max_over_U(x))
        assert got == exp


def test_A1_inverse_terms():
    assert psi_sequence(A1.inverse(), 10) == [173, 290, 174, 131, 130, 67, 261, 122, 253, 383]


small_mats = st.lists(st.integers(-4, 4), min_size=9, max_size=9).map(lambda xs: [xs[0:3], xs[3:6], xs[6:9]])


@given(small_mats)
def test_psi_matches_enumeration(rows):
    M = IntMat3(rows, check=False)
    assert psi_of_matrix(M) == brute_psi(M)


@given(st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)))
def test_star_test(x):
    assert star_test(x) == (len({0, *x}) == 4)


def test_bounds_bracket():
    assert psi_bounds(A0) == (75, 150)
    assert psi_bounds(A1) == (291, 669)


def test_enclosure_needs_cone():
    with pytest.raises(ConeConditionRequired):
        lambda1_enclosure(A1, None)
    with pytest.raises(ConeConditionRequired):
        lambda1_enclosure(A1, ConeEvidence("recurrence", False))


@pytest.mark.parametrize("A,lo,hi", [(A1, 291, 669), (A0, 75, 150)])
def test_lambda1_enclosure(A, lo, hi):
    enc = lambda1_enclosure(A, CITED, Fraction(1, 10**6))
    assert lo <= enc.lo and enc.hi <= hi
    assert enc.interval.width <= Fraction(1, 10**6)
    assert check_sign_contract(A, enc)
    assert enc.F_lo_lower > 1 > enc.F_hi_upper


def test_series_bounds_are_consistent():
    sb = SeriesBounds(A1)
    for lam in (Fraction(292), Fraction(293), Fraction(400)):
        lo, hi = sb.bounds(lam, 64)
        assert lo <= hi
        assert sb.partial(lam, 32) <= lo
