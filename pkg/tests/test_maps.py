from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from dyndeg.algebra.interval import log_iv
from dyndeg.maps import (
    B_INVERSE,
    B_MATRIX,
    MINUS_I,
    HomogMonomialMap,
    IndeterminatePoint,
    ProjPointQ,
    build_fA,
    degree_bound,
    evaluate,
    height_constant,
    homogenize_monomial,
    orbit_heights,
    weil_height,
)
from dyndeg.matrix import A1, A0, IntMat3

torus = st.lists(st.integers(-5, 5).filter(bool), min_size=4, max_size=4).map(ProjPointQ)


def test_homogenize_A0():
    h = homogenize_monomial(A0)
    assert h.degree == 50
    assert h.expo == ((21, 3, 14, 12), (50, 0, 0, 0), (0, 7, 25, 18), (28, 1, 10, 11))
    assert h.format() == "[x0^21*x1^3*x2^14*x3^12 : x0^50 : x1^7*x2^25*x3^18 : x0^28*x1*x2^10*x3^11]"


def test_homogenize_A1_and_cremona():
    h = homogenize_monomial(A1)
    assert h.degree == 223
    assert h.expo == ((73, 16, 71, 63), (53, 72, 52, 46), (78, 0, 77, 68), (0, 223, 0, 0))
    c = homogenize_monomial(MINUS_I)
    assert c.degree == 3
    assert c.expo == ((0, 1, 1, 1), (1, 0, 1, 1), (1, 1, 0, 1), (1, 1, 1, 0))


def test_homog_validation():
    with pytest.raises(ValueError):
        HomogMonomialMap(((1, 0), (0, 2)), 1)


def test_B_inverse():
    for i in range(4):
        for j in range(4):
            assert sum(B_MATRIX[i][k] * B_INVERSE[k][j] for k in range(4)) == (1 if i == j else 0)


def test_degree_bounds():
    assert degree_bound(build_fA(A0).forward) == 150
    assert degree_bound(build_fA(A1).forward) == 669


def test_point_normalization():
    assert ProjPointQ([Fraction(1, 2), 1, Fraction(3, 2), 2]).coords == (1, 2, 3, 4)
    assert ProjPointQ([-2, 4, 0, 6]).coords == (1, -2, 0, -3)
    with pytest.raises(ValueError):
        ProjPointQ([0, 0, 0, 0])


def test_cremona_involution_and_indeterminacy():
    f = build_fA(IntMat3.identity())
    P = ProjPointQ([2, 3, 5, 7])
    cre = f.forward.factors[1]
    once = ProjPointQ(cre([Fraction(x) for x in P.coords]))
    assert ProjPointQ(cre([Fraction(x) for x in once.coords])) == P
    with pytest.raises(IndeterminatePoint):
        evaluate(build_fA(A0).forward, ProjPointQ([1, 0, 1, 1]))


@settings(max_examples=100)
@given(torus)
def test_round_trip(P):
    f = build_fA(A0)
    try:
        Q = evaluate(f.forward, P)
        back = evaluate(f.inverse, Q)
    except IndeterminatePoint:
        assume(False)
    assert back == P


@settings(max_examples=10)
@given(torus)
def test_round_trip_A1(P):
    f = build_fA(A1)
    try:
        back = evaluate(f.inverse, evaluate(f.forward, P))
    except IndeterminatePoint:
        assume(False)
    assert back == P


@settings(max_examples=30)
@given(torus)
def test_height_inequality_on_orbits(P):
    f = build_fA(A0).forward
    res = orbit_heights(f, P, 2)
    deg = degree_bound(f)
    rigorous = height_constant(f)
    log4 = log_iv(4)
    for h0, h1 in zip(res.heights, res.heights[1:]):
        assert h1.lo <= h0.hi * deg + rigorous.hi
        assert h1.lo <= h0.hi * deg + log4.hi


def test_orbit_heights_growth():
    res = orbit_heights(build_fA(A0).forward, ProjPointQ([1, 2, 3, 5]), 2)
    assert res.complete
    assert res.heights[0].contains(log_iv(5).mid)
    g = res.growth_ratios()
    assert len(g) == 2
    # h+(f^2 P)^(1/2) stays below the degree bound
    assert g[1].hi < 150


def test_orbit_stops_on_indeterminacy():
    res = orbit_heights(build_fA(A0).forward, ProjPointQ([1, 0, 1, 1]), 3)
    assert not res.complete and res.failed_at == 1 and res.reason


def test_weil_height():
    assert weil_height(ProjPointQ([1, 1, 1, 1])).contains(0)
    assert weil_height(ProjPointQ([Fraction(1, 3), 1, 1, 1])).contains(log_iv(3).mid)
