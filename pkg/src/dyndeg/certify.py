"""End-to-end certification of dynamical degrees for f_A."""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra.field import KElem, SplitCubicField, cubic_discriminant, cubic_irreducible, is_root_of_unity, is_unit
from .algebra.heights import h_prime, log_abs
from .algebra.interval import RatInterval
from .algebra.poly import PolyQ
from .matrix import IntMat3, Vec3
from .psi import (
    SUPPORT,
    STAR_FUNCTIONALS,
    ConeEvidence,
    Lambda1Enclosure,
    lambda1_enclosure,
    psi_bounds,
    psi_sequence,
)
from .recur.baker import DEFAULT_BAKER_TARGET, HypothesisFailure, zero_free_bound_from_baker
from .recur.coeffs import EigenData, coeffs_in_K
from .recur.dominant import ArgmaxCert, MarginNotCertifiable, argmax_stabilize, dominant_cone_cert
from .recur.linrec import (
    DEFAULT_STEP_CAP,
    LcmCert,
    NotFound,
    TargetNotReached,
    certify_never_zero,
    certify_zero_only_at_start,
    parallel_map,
    rec_from_matrix,
    seq_from_pair,
)
from .recur.series import NoOnsetFound, eventual_rec_detect, largest_real_root, series_to_polynomial

log = logging.getLogger(__name__)

# sign-reduced V u P and the six functionals of (*), in sequence order
CONE_VECTORS: tuple[Vec3, ...] = ((1, 1, 0), (0, 1, 1), (-1, -1, -1), (1, 0, 0), (0, 1, 0), (0, 0, 1))
# W up to sign, as used for the sigma checks
W_HALF: tuple[Vec3, ...] = ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, -1, 0), (0, 1, -1), (-1, 0, 1))

DEFAULT_MODULI = range(5, 2000)
NEVER_ZERO_MODULI = range(5, 60)


class SpectralClass(str, enum.Enum):
    PERRON_REAL = "PerronReal"
    COMPLEX_PAIR_DOMINANT = "ComplexPairDominant"
    UNSUPPORTED = "Unsupported"


@dataclass(frozen=True)
class Spectrum:
    cls: SpectralClass
    reason: str = ""
    field: SplitCubicField | None = None
    theta: RatInterval | None = None


def classify_spectrum(A: IntMat3, bits: int = 64) -> Spectrum:
    p = A.charpoly()
    if not cubic_irreducible(p):
        return Spectrum(SpectralClass.UNSUPPORTED, f"characteristic polynomial {p.format()} is reducible")
    D = cubic_discriminant(p)
    if D >= 0:
        return Spectrum(SpectralClass.UNSUPPORTED, f"discriminant {D} >= 0: three real roots")
    F = SplitCubicField(p)
    th = F.theta_enclosure(bits)
    a = abs(th)
    # |xi|^2 = 1 / |theta| since |det A| = 1
    if a.lo > 1:
        return Spectrum(SpectralClass.PERRON_REAL, "", F, th)
    if a.hi < 1:
        return Spectrum(SpectralClass.COMPLEX_PAIR_DOMINANT, "", F, th)
    return Spectrum(SpectralClass.UNSUPPORTED, "root moduli not separated", F, th)


# sigma and the unit conditions --------------------------------------------------


class DegeneratePair(ArithmeticError):
    pass


def projection_coeff(v: Sequence[int], w: Sequence[int], eig: EigenData, index: int = 0) -> KElem:
    """<w, pi(v)> for the projection onto the eigenline of root `index`."""
    q, s = eig.vectors[index]
    F = eig.F
    wq = sum((wi * qi for wi, qi in zip(w, q)), F(0))
    sv = sum((si * vi for si, vi in zip(s, v)), F(0))
    return wq * sv


def sigma(v: Sequence[int], w: Sequence[int], A: IntMat3, F: SplitCubicField | None = None,
          eig: EigenData | None = None, index: int = 0) -> KElem:
    """-conj(c)/c with c = <w, pi(v)>."""
    eig = eig or EigenData(A, F)
    c = projection_coeff(v, w, eig, index)
    if c.is_zero():
        raise DegeneratePair(f"<w, pi(v)> = 0 for v = {tuple(v)}, w = {tuple(w)}")
    return -c.conj() / c


def _parallel(a: Sequence[int], b: Sequence[int]) -> bool:
    return tuple(a) == tuple(b) or tuple(a) == tuple(-x for x in b)


def exempt(p1: tuple, p2: tuple) -> bool:
    """Pairs (v, w), (v', w') with v || v' and w || w' have ratio +-1 and are skipped."""
    return _parallel(p1[0], p2[0]) and _parallel(p1[1], p2[1])


@dataclass
class TranscendenceReport:
    cond_irreducible: bool
    cond_pair_and_angle: bool | None
    angle_routes: dict = field(default_factory=dict)
    cond_sigma_units: list = field(default_factory=list)  # (v, w, is_non_unit)
    cond_ratio_units: list = field(default_factory=list)  # (i, j, is_non_unit)
    ratio_pairs_exempt: int = 0
    cone_condition: ConeEvidence | None = None
    reasons: list = field(default_factory=list)

    @property
    def sigma_ok(self) -> bool:
        return bool(self.cond_sigma_units) and all(x[2] for x in self.cond_sigma_units)

    @property
    def ratio_ok(self) -> bool:
        return bool(self.cond_ratio_units) and all(x[2] for x in self.cond_ratio_units)

    @property
    def verdict(self) -> str:
        if not self.cond_irreducible or self.cond_pair_and_angle is False:
            return "FAIL"
        if self.cond_sigma_units and not self.sigma_ok:
            return "FAIL"
        if self.cond_ratio_units and not self.ratio_ok:
            return "FAIL"
        if self.cone_condition is not None and not self.cone_condition.passed and self.cone_condition.kind != "unknown":
            return "FAIL"
        if (
            self.cond_pair_and_angle
            and self.sigma_ok
            and self.ratio_ok
            and self.cone_condition is not None
            and self.cone_condition.passed
        ):
            return "PASS"
        return "UNKNOWN"


def angle_conditions(F: SplitCubicField) -> dict:
    """xi1/xi2 is not a root of unity, by two independent routes that must agree."""
    theta, xp, xm = F.roots()
    ratio = xp / xm
    cyclo = not is_root_of_unity(ratio)
    # a Galois conjugate of xi1/xi2 is xi1/theta; roots of unity have all conjugates on |z| = 1
    conjugate = xp / theta
    is_conj = ratio.min_poly()(conjugate).is_zero()
    mod = log_abs(conjugate, Fraction(1, 10**12))
    galois = is_conj and (mod.positive() or mod.negative())
    return {"cyclotomic_route": cyclo, "galois_route": galois, "agree": cyclo == galois}


def _is_non_unit(x: KElem) -> bool:
    return not is_unit(x)


def transcendence_conditions(
    A: IntMat3, cone: ConeEvidence | None = None, jobs: int | None = None, both_orientations: bool = False
) -> TranscendenceReport:
    p = A.charpoly()
    rep = TranscendenceReport(cond_irreducible=cubic_irreducible(p), cond_pair_and_angle=None)
    if not rep.cond_irreducible:
        rep.cond_pair_and_angle = False
        rep.reasons.append(f"{p.format()} is reducible")
        return rep
    sc = classify_spectrum(A)
    if sc.cls is not SpectralClass.COMPLEX_PAIR_DOMINANT:
        rep.cond_pair_and_angle = False
        rep.reasons.append(f"spectral class {sc.cls.value}: no dominant complex pair")
        return rep
    F = sc.field
    routes = angle_conditions(F)
    rep.angle_routes = routes
    if not routes["agree"]:
        rep.reasons.append("angle routes disagree")
        rep.cond_pair_and_angle = None
    else:
        rep.cond_pair_and_angle = routes["cyclotomic_route"]
    eig = EigenData(A, F)
    indices = (0, 1) if both_orientations else (0,)
    for idx in indices:
        sigmas = []
        for v in SUPPORT.V:
            for w in W_HALF:
                try:
                    s = sigma(v, w, A, eig=eig, index=idx)
                except DegeneratePair as exc:
                    rep.reasons.append(str(exc))
                    rep.cond_sigma_units = []
                    return rep
                sigmas.append((v, w, s))
        nonunit = parallel_map(_is_non_unit, [s for _, _, s in sigmas], jobs)
        su = [(v, w, ok) for (v, w, _), ok in zip(sigmas, nonunit)]
        pairs, exempt_count = [], 0
        for i in range(len(sigmas)):
            for j in range(i + 1, len(sigmas)):
                if exempt(sigmas[i][:2], sigmas[j][:2]):
                    exempt_count += 1
                else:
                    pairs.append((i, j))
        ratios = parallel_map(_is_non_unit, [sigmas[i][2] / sigmas[j][2] for i, j in pairs], jobs)
        ru = [(i, j, ok) for (i, j), ok in zip(pairs, ratios)]
        if idx == 0:
            rep.cond_sigma_units, rep.cond_ratio_units, rep.ratio_pairs_exempt = su, ru, exempt_count
        elif [x[2] for x in su] != [x[2] for x in rep.cond_sigma_units] or [x[2] for x in ru] != [
            x[2] for x in rep.cond_ratio_units
        ]:
            rep.reasons.append("verdicts differ between the two conjugate orientations")
            rep.cond_pair_and_angle = None
    rep.cone_condition = cone
    return rep


# cone condition ---------------------------------------------------------------


@dataclass(frozen=True)
class SequenceCert:
    index: int
    v: Vec3
    w: Vec3
    init: tuple[int, int, int]
    method: str  # "never_zero" or "zero_only_at_start"
    modulus: int | None = None
    lcm: LcmCert | None = None
    baker_N0: int | None = None
    target: int | None = None


def cone_sequences(A: IntMat3) -> list:
    """The 36 sequences <w, A^n v>, numbered from 1 in (v, w) order."""
    out = []
    for i, v in enumerate(CONE_VECTORS):
        for j, w in enumerate(STAR_FUNCTIONALS):
            out.append((6 * i + j + 1, v, w, seq_from_pair(A, v, w)))
    return out


def _certify_one(args) -> SequenceCert | str:
    index, v, w, r, nz_moduli, moduli, target, N0, step_cap = args
    try:
        if r.init[0] != 0:
            m = certify_never_zero(r, nz_moduli, step_cap)
            return SequenceCert(index, v, w, r.init, "never_zero", modulus=m, baker_N0=N0)
        cert = certify_zero_only_at_start(r, moduli, target, step_cap)
        return SequenceCert(index, v, w, r.init, "zero_only_at_start", lcm=cert, baker_N0=N0, target=target)
    except (NotFound, TargetNotReached) as exc:
        return f"sequence {index}: {exc}"


def recurrence_cone_cert(
    A: IntMat3,
    moduli: Iterable[int] = DEFAULT_MODULI,
    never_zero_moduli: Iterable[int] = NEVER_ZERO_MODULI,
    baker_target: int = DEFAULT_BAKER_TARGET,
    step_cap: int = DEFAULT_STEP_CAP,
    jobs: int | None = None,
    eps: Fraction = Fraction(1, 10**9),
) -> ConeEvidence:
    """Cone condition for a dominant complex pair via zero-freedom of the 36 sequences."""
    sc = classify_spectrum(A)
    if sc.cls is not SpectralClass.COMPLEX_PAIR_DOMINANT:
        return ConeEvidence("unknown", False, {"reason": f"spectral class {sc.cls.value}"})
    F = sc.field
    eig = EigenData(A, F)
    seqs = cone_sequences(A)
    bounds = {}
    xi1 = eig.roots[0]
    lx = log_abs(xi1, eps)
    hr = h_prime(xi1 / eig.roots[1], eps)
    for index, v, w, r in seqs:
        c = coeffs_in_K(A, v, w, eig=eig)
        if not (c.all_nonzero and c.c1_ne_minus_c2):
            return ConeEvidence("recurrence", False, {"reason": f"sequence {index}: degenerate coefficients"})
        if r.init[0] == 0:
            try:
                bounds[index] = zero_free_bound_from_baker(c, F, eps, xi1_abs_log=lx, h_ratio=hr).N0
            except HypothesisFailure as exc:
                return ConeEvidence("recurrence", False, {"reason": f"sequence {index}: {exc}"})
    moduli, never_zero_moduli = list(moduli), list(never_zero_moduli)
    tasks = [
        (index, v, w, r, never_zero_moduli, moduli, max(baker_target, bounds.get(index, 0)), bounds.get(index), step_cap)
        for index, v, w, r in seqs
    ]
    results = parallel_map(_certify_one, tasks, jobs)
    failures = [x for x in results if isinstance(x, str)]
    certs = [x for x in results if not isinstance(x, str)]
    detail = {"sequences": certs, "failures": failures, "baker_target": baker_target}
    if failures:
        return ConeEvidence("unknown", False, detail)
    # zero-start sequences need lcm > their own Baker bound; nonzero-start ones are zero-free outright
    return ConeEvidence("recurrence", True, detail)


def cone_condition(A: IntMat3, **kw) -> ConeEvidence:
    sc = classify_spectrum(A)
    if sc.cls is SpectralClass.PERRON_REAL:
        cert = dominant_cone_cert(A, CONE_VECTORS, STAR_FUNCTIONALS)
        return ConeEvidence("dominant", cert.passed, {"cert": cert})
    if sc.cls is SpectralClass.COMPLEX_PAIR_DOMINANT:
        return recurrence_cone_cert(A, **kw)
    # an exact counterexample still settles the question
    cert = dominant_cone_cert(A, CONE_VECTORS, STAR_FUNCTIONALS)
    if cert.witness is not None:
        return ConeEvidence("dominant", False, {"cert": cert})
    return ConeEvidence("unknown", False, {"reason": sc.reason})


# algebraic degree through the series equation -----------------------------------


@dataclass(frozen=True)
class AlgebraicDegree:
    polynomial: PolyQ  # with the factor lambda^k removed
    raw_polynomial: PolyQ
    root: RatInterval
    onset: int  # first n from which the Psi terms obey the recurrence
    series_onset: int  # onset also covering every argmax onset, used to build the polynomial
    terms: tuple[int, ...]
    argmax: tuple[ArgmaxCert, ...]
    cone: ConeEvidence


class DegreeUnknown(RuntimeError):
    pass


def algebraic_lambda1(M: IntMat3, eps: Fraction = Fraction(1, 10**12), cone: ConeEvidence | None = None) -> AlgebraicDegree:
    """lambda_1(f_M) for M with a real dominant root, as the largest root of an integer polynomial."""
    sc = classify_spectrum(M)
    if sc.cls is not SpectralClass.PERRON_REAL:
        raise DegreeUnknown(f"{sc.cls.value}: the argmax sequences need a real dominant root")
    cone = cone or cone_condition(M)
    if not cone.passed:
        raise DegreeUnknown("cone condition not certified")
    try:
        certs = tuple(argmax_stabilize(M, v, SUPPORT.U) for v in SUPPORT.V)
    except MarginNotCertifiable as exc:
        raise DegreeUnknown(str(exc)) from exc
    k0 = max(c.onset for c in certs)
    N = k0 + 12
    P = psi_sequence(M, N)
    rec = rec_from_matrix(M)
    try:
        detected = eventual_rec_detect(P, rec, N - 3)
    except NoOnsetFound as exc:
        raise DegreeUnknown(str(exc)) from exc
    onset = max(detected, k0 + 3)
    raw = series_to_polynomial(P, rec, onset)
    poly, _ = raw.strip_x()
    root = largest_real_root(poly, eps)
    return AlgebraicDegree(poly, raw, root, detected, onset, tuple(P), certs, cone)


# verdicts ---------------------------------------------------------------------


@dataclass(frozen=True)
class Hyperbolicity:
    p: int | None
    decided: bool

    def describe(self) -> str:
        if not self.decided:
            return "undecidable at current precision"
        if self.p is None:
            return "not cohomologically hyperbolic"
        return f"{self.p}-cohomologically hyperbolic"


def hyperbolicity(lams: Sequence) -> Hyperbolicity:
    """p with lambda_p strictly above every other lambda_i, from enclosures."""
    ivs = [RatInterval.coerce(x) for x in lams]
    undecided = False
    for p, lp in enumerate(ivs):
        others = [x for i, x in enumerate(ivs) if i != p]
        if all(lp.lo > x.hi for x in others):
            return Hyperbolicity(p, True)
        if not any(x.lo >= lp.hi for x in others):
            undecided = True
    return Hyperbolicity(None, not undecided)


def product_profile(mu, nu, d: int) -> list[RatInterval]:
    """Degrees (1, mu, ..., mu, nu, 1) of the product construction on P^d."""
    mu, nu = RatInterval.coerce(mu), RatInterval.coerce(nu)
    if d < 3:
        raise ValueError("dimension must be at least 3")
    if not (nu.lo > 1 and mu.lo > nu.hi):
        raise ValueError("profile needs 1 < nu < mu")
    return [RatInterval(1)] + [mu] * (d - 2) + [nu, RatInterval(1)]


# full report ------------------------------------------------------------------


@dataclass
class DegreeResult:
    kind: str  # "algebraic", "enclosure", "bound", "unknown"
    interval: RatInterval | None = None
    algebraic: AlgebraicDegree | None = None
    enclosure: Lambda1Enclosure | None = None
    transcendence: TranscendenceReport | None = None
    cone: ConeEvidence | None = None
    reason: str = ""


@dataclass
class Certificate:
    matrix: IntMat3
    spectral_class: SpectralClass
    inverse_class: SpectralClass
    bounds: tuple[int, int]
    l1: DegreeResult
    l2: DegreeResult
    hyperbolicity: Hyperbolicity
    profiles: dict = field(default_factory=dict)
    reasons: list = field(default_factory=list)

    @property
    def lambdas(self) -> list[RatInterval | None]:
        return [RatInterval(1), self.l1.interval, self.l2.interval, RatInterval(1)]

    @property
    def status(self) -> str:
        if self.spectral_class is SpectralClass.UNSUPPORTED:
            return "UNSUPPORTED"
        if not self.hyperbolicity.decided:
            return "UNKNOWN"
        return "PASS"


def _fallback(M: IntMat3, cone: ConeEvidence | None, reason: str) -> DegreeResult:
    # 1 <= lambda_1(f) <= deg f holds for every birational f, with no cone hypothesis
    return DegreeResult("bound", RatInterval(1, psi_bounds(M)[1]), cone=cone, reason=reason)


def degree_via(
    M: IntMat3,
    eps: Fraction,
    cone: ConeEvidence | None = None,
    with_transcendence: bool = True,
    n_start: int = 64,
    **cone_kw,
) -> DegreeResult:
    """lambda_1(f_M): polynomial route for a real dominant root, series enclosure otherwise."""
    sc = classify_spectrum(M)
    if sc.cls is SpectralClass.UNSUPPORTED:
        return DegreeResult("unknown", reason=sc.reason)
    if cone is None:
        cone = cone_condition(M, **cone_kw) if sc.cls is SpectralClass.COMPLEX_PAIR_DOMINANT else cone_condition(M)
    if sc.cls is SpectralClass.PERRON_REAL:
        try:
            alg = algebraic_lambda1(M, eps, cone)
        except DegreeUnknown as exc:
            return _fallback(M, cone, str(exc))
        return DegreeResult("algebraic", alg.root, algebraic=alg, cone=cone)
    if not cone.passed:
        return _fallback(M, cone, "cone condition not certified; only the elementary bracket applies")
    enc = lambda1_enclosure(M, cone, eps, n_start=n_start)
    trans = transcendence_conditions(M, cone, cone_kw.get("jobs")) if with_transcendence else None
    return DegreeResult("enclosure", enc.interval, enclosure=enc, transcendence=trans, cone=cone)


CITED_CONE = ConeEvidence("cited", True, {"note": "cone condition supplied by the caller as a known result"})


def full_report(
    A: IntMat3,
    profile_dims: Sequence[int] = (),
    eps: Fraction = Fraction(1, 10**6),
    cone_forward: ConeEvidence | None = None,
    refine_budget: int = 3,
    assume_cone: bool = False,
    n_start: int = 64,
    **cone_kw,
) -> Certificate:
    if assume_cone and cone_forward is None:
        cone_forward = CITED_CONE
    sc = classify_spectrum(A)
    inv = A.inverse()
    sc_inv = classify_spectrum(inv)
    reasons = list(dict.fromkeys(r for r in (sc.reason, sc_inv.reason) if r))
    if sc.cls is SpectralClass.UNSUPPORTED:
        none = DegreeResult("unknown", reason=sc.reason)
        return Certificate(A, sc.cls, sc_inv.cls, psi_bounds(A), none, none, Hyperbolicity(None, False), {}, reasons)
    l1 = degree_via(A, eps, cone_forward, n_start=n_start, **cone_kw)
    l2 = degree_via(inv, eps, None, with_transcendence=False, n_start=n_start, **cone_kw)
    for _ in range(refine_budget + 1):
        if l1.interval is None or l2.interval is None:
            hyp = Hyperbolicity(None, False)
            break
        hyp = hyperbolicity([1, l1.interval, l2.interval, 1])
        if hyp.decided:
            break
        eps = eps / 1000
        l1 = degree_via(A, eps, l1.cone, n_start=n_start, **cone_kw)
        l2 = degree_via(inv, eps, l2.cone, with_transcendence=False, n_start=n_start, **cone_kw)
    profiles = {}
    if l1.interval is not None and l2.interval is not None:
        for d in profile_dims:
            try:
                profiles[d] = product_profile(l1.interval, l2.interval, d)
            except ValueError as exc:
                reasons.append(f"profile d={d}: {exc}")
    for r in (l1, l2):
        if r.reason and r.reason not in reasons:
            reasons.append(r.reason)
    return Certificate(A, sc.cls, sc_inv.cls, psi_bounds(A), l1, l2, hyp, profiles, reasons)
