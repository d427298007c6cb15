import json
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dyndeg.algebra.field import is_unit
from dyndeg.algebra.interval import RatInterval
from dyndeg.certificate import dumps, to_document, verify_document
from dyndeg.certify import (
    W_HALF,
    SpectralClass,
    angle_conditions,
    classify_spectrum,
    exempt,
    full_report,
    hyperbolicity,
    product_profile,
    sigma,
    transcendence_conditions,
)
from dyndeg.matrix import A1, A0, IntMat3
from dyndeg.psi import SUPPORT

PAIRS = [(v, w) for v in SUPPORT.V for w in W_HALF]
pair = st.sampled_from(PAIRS)


def test_classify():
    assert classify_spectrum(A1).cls is SpectralClass.COMPLEX_PAIR_DOMINANT
    assert classify_spectrum(A0).cls is SpectralClass.COMPLEX_PAIR_DOMINANT
    assert classify_spectrum(A1.inverse()).cls is SpectralClass.PERRON_REAL
    assert classify_spectrum(IntMat3.identity()).cls is SpectralClass.UNSUPPORTED
    # three real roots
    assert classify_spectrum(IntMat3(((0, 1, 0), (0, 0, 1), (1, 3, 0)))).cls is SpectralClass.UNSUPPORTED


def test_sigma_on_unit_circle_and_orientation(eig1):
    for v, w in PAIRS:
        s = sigma(v, w, A1, eig=eig1)
        assert s * s.conj() == eig1.F(1)
        s2 = sigma(v, w, A1, eig=eig1, index=1)
        assert s2 == s.inverse()
        assert is_unit(s) == is_unit(s2)


@given(pair, pair)
def test_exemption_symmetric(p1, p2):
    assert exempt(p1, p2) == exempt(p2, p1)
    assert exempt(p1, p1)


def test_angle_routes_agree():
    for A in (A1, A0):
        r = angle_conditions(classify_spectrum(A).field)
        assert r == {"cyclotomic_route": True, "galois_route": True, "agree": True}


def test_transcendence_conditions_A1():
    rep = transcendence_conditions(A1, both_orientations=True)
    assert rep.cond_irreducible and rep.cond_pair_and_angle
    assert len(rep.cond_sigma_units) == 24 and rep.sigma_ok
    assert len(rep.cond_ratio_units) + rep.ratio_pairs_exempt == 24 * 23 // 2
    assert rep.ratio_ok
    assert rep.verdict == "UNKNOWN"  # no cone evidence supplied
    assert not rep.reasons


def test_transcendence_unsupported():
    rep = transcendence_conditions(A1.inverse())
    assert rep.verdict == "FAIL"


@pytest.mark.parametrize(
    "lams,p,decided",
    [
        ((1, RatInterval(291, 669), RatInterval(Fraction("174.66"), Fraction("174.67")), 1), 1, True),
        ((1, RatInterval(75, 150), RatInterval(Fraction("223.66"), Fraction("223.67")), 1), 2, True),
        ((1, RatInterval(1), RatInterval(1), 1), None, True),
        ((1, RatInterval(100, 200), RatInterval(150, 160), 1), None, False),
    ],
)
def test_hyperbolicity(lams, p, decided):
    h = hyperbolicity(lams)
    assert (h.p, h.decided) == (p, decided)


@given(st.lists(st.tuples(st.integers(1, 50), st.integers(0, 5)), min_size=2, max_size=6))
def test_hyperbolicity_unique(raw):
    ivs = [RatInterval(a, a + b) for a, b in raw]
    h = hyperbolicity(ivs)
    winners = [p for p, x in enumerate(ivs) if all(x.lo > y.hi for i, y in enumerate(ivs) if i != p)]
    assert len(winners) <= 1
    assert h.p == (winners[0] if winners else None)


def test_product_profile():
    mu, nu = RatInterval(292, 293), RatInterval(174, 175)
    assert product_profile(mu, nu, 4) == [RatInterval(1), mu, mu, nu, RatInterval(1)]
    assert product_profile(mu, nu, 3) == [RatInterval(1), mu, nu, RatInterval(1)]
    assert len(product_profile(mu, nu, 5)) == 6
    with pytest.raises(ValueError):
        product_profile(nu, mu, 4)
    with pytest.raises(ValueError):
        product_profile(mu, nu, 2)


def test_identity_report():
    c = full_report(IntMat3.identity())
    assert c.status == "UNSUPPORTED"
    assert c.reasons and "reducible" in c.reasons[0]
    doc = to_document(c)
    assert doc["body"]["lambda"]["l1"]["kind"] == "unknown"


def test_A0_report():
    c = full_report(A0)
    assert c.hyperbolicity.p == 2
    assert c.l1.interval.lo >= 1 and c.l1.interval.hi <= 150
    assert c.l2.algebraic.polynomial.int_coeffs()[::-1] == [1, -224, 75]
    # with the forward cone taken as given the enclosure route runs
    c2 = full_report(A0, assume_cone=True)
    assert c2.l1.kind == "enclosure" and 75 <= c2.l1.interval.lo and c2.l1.interval.hi <= 150
    assert c2.hyperbolicity.p == 2


def test_A1_certificate_roundtrip():
    c = full_report(A1, profile_dims=[4])
    text = dumps(c)
    assert text == dumps(full_report(A1, profile_dims=[4]))
    doc = json.loads(text)
    body = doc["body"]
    assert body["hyperbolicity"]["p"] == 1
    assert body["lambda"]["l1"]["transcendence"]["verdict"] == "PASS"
    assert len(body["cone_evidence"]["sequences"]) == 36
    assert all("/" in body["lambda"]["l1"]["interval"][k] for k in ("lo", "hi"))
    checks = verify_document(doc)
    assert checks and all(ok for _, ok in checks)
    # tampering is detected
    seq = next(s for s in body["cone_evidence"]["sequences"] if s["method"] == "zero_only_at_start")
    seq["lcm"] = str(int(seq["lcm"]) + 1)
    assert not all(ok for _, ok in verify_document(doc))


def test_parallel_fan_out_is_deterministic():
    from dyndeg.certify import recurrence_cone_cert

    a = recurrence_cone_cert(A1, jobs=2)
    b = recurrence_cone_cert(A1, jobs=1)
    assert a.passed and a.detail["sequences"] == b.detail["sequences"]
