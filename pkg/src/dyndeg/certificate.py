"""Deterministic JSON certificates and their re-verification.

Rationals are written as "num/den" strings and large integers as decimal
strings.  The body contains no timestamps, so equal inputs give equal bytes;
versions live in a separate header.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import mpmath

from . import __version__
from .algebra.interval import RatInterval
from .algebra.poly import PolyQ, cauchy_bound, count_real_roots, squarefree_part, sturm_sequence
from .certify import (
    CONE_VECTORS,
    Certificate,
    DegreeResult,
    SequenceCert,
    TranscendenceReport,
    classify_spectrum,
    hyperbolicity,
)
from .matrix import IntMat3
from .psi import STAR_FUNCTIONALS, ConeEvidence, Lambda1Enclosure, check_sign_contract, psi_sequence
from .recur.dominant import DominantConeCert, dominant_cone_cert
from .recur.linrec import LcmCert, mod_cycle, rec_from_matrix, seq_from_pair
from .recur.series import series_to_polynomial

FORMAT = "dyndeg-certificate"


def q(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def unq(s: str) -> Fraction:
    return Fraction(s)


def iv(x: RatInterval | None) -> dict | None:
    if x is None:
        return None
    return {"lo": q(x.lo), "hi": q(x.hi)}


def univ(d: dict) -> RatInterval:
    return RatInterval(unq(d["lo"]), unq(d["hi"]))


def _vec(v) -> list[int]:
    return [int(x) for x in v]


def _sequence(s: SequenceCert) -> dict:
    out: dict[str, Any] = {
        "index": s.index,
        "v": _vec(s.v),
        "w": _vec(s.w),
        "init": [str(x) for x in s.init],
        "method": s.method,
    }
    if s.modulus is not None:
        out["modulus"] = s.modulus
    if s.lcm is not None:
        out["moduli"] = [[m, p] for m, p in s.lcm.moduli_used]
        out["lcm"] = str(s.lcm.lcm_periods)
        out["target"] = str(s.lcm.target)
        out["skipped"] = list(s.lcm.skipped)
    if s.baker_N0 is not None:
        out["baker_N0"] = str(s.baker_N0)
    return out


def _dominant(c: DominantConeCert) -> dict:
    return {
        "passed": c.passed,
        "exact_checked_upto": c.exact_checked_upto,
        "witness": None if c.witness is None else {"v": _vec(c.witness[0]), "n": c.witness[1], "image": [str(x) for x in c.witness[2]]},
        "vectors": [
            {"v": _vec(x.v), "onset": x.onset, "bound_at_onset": iv(x.bound_at_onset)} for x in c.vectors
        ],
        "reason": c.reason,
    }


def cone_doc(ev: ConeEvidence | None) -> dict | None:
    if ev is None:
        return None
    out: dict[str, Any] = {"kind": ev.kind, "passed": ev.passed}
    d = ev.detail
    if "sequences" in d:
        out["sequences"] = [_sequence(s) for s in d["sequences"]]
        out["failures"] = list(d.get("failures", []))
        out["baker_target"] = str(d["baker_target"])
    if "cert" in d:
        out["dominant"] = _dominant(d["cert"])
    for key in ("reason", "note"):
        if key in d:
            out[key] = d[key]
    return out


def transcendence_doc(t: TranscendenceReport | None) -> dict | None:
    if t is None:
        return None
    return {
        "verdict": t.verdict,
        "irreducible": t.cond_irreducible,
        "pair_and_angle": t.cond_pair_and_angle,
        "angle_routes": t.angle_routes,
        "sigma_non_units": [{"v": _vec(v), "w": _vec(w), "non_unit": ok} for v, w, ok in t.cond_sigma_units],
        "ratio_non_units": sum(1 for x in t.cond_ratio_units if x[2]),
        "ratio_pairs_checked": len(t.cond_ratio_units),
        "ratio_pairs_exempt": t.ratio_pairs_exempt,
        "statement": "hypotheses of the transcendence criterion verified; transcendence follows from that criterion"
        if t.verdict == "PASS"
        else "hypotheses not all verified",
        "reasons": list(t.reasons),
    }


def degree_doc(r: DegreeResult) -> dict:
    out: dict[str, Any] = {"kind": r.kind, "interval": iv(r.interval), "reason": r.reason}
    if r.enclosure is not None:
        e = r.enclosure
        out["enclosure"] = {"terms": e.terms, "m": e.m, "F_lo_lower": q(e.F_lo_lower), "F_hi_upper": q(e.F_hi_upper)}
    if r.algebraic is not None:
        a = r.algebraic
        out["polynomial"] = [str(c) for c in a.polynomial.int_coeffs()[::-1]]
        out["polynomial_text"] = a.polynomial.format("lambda")
        out["raw_polynomial"] = [str(c) for c in a.raw_polynomial.int_coeffs()[::-1]]
        out["root"] = iv(a.root)
        out["onset"] = a.onset
        out["series_onset"] = a.series_onset
        out["terms"] = [str(x) for x in a.terms]
        out["argmax"] = [
            {"v": _vec(c.v), "u_star": _vec(c.u_star), "onset": c.onset, "analytic_onset": c.analytic_onset}
            for c in a.argmax
        ]
    if r.transcendence is not None:
        out["transcendence"] = transcendence_doc(r.transcendence)
    return out


def to_document(c: Certificate) -> dict:
    body = {
        "matrix": [_vec(r) for r in c.matrix.rows],
        "spectral_class": c.spectral_class.value,
        "inverse_spectral_class": c.inverse_class.value,
        "status": c.status,
        "bounds": {"psi": str(c.bounds[0]), "degree": str(c.bounds[1])},
        "lambda": {"l0": "1", "l1": degree_doc(c.l1), "l2": degree_doc(c.l2), "l3": "1"},
        "cone_evidence": cone_doc(c.l1.cone),
        "inverse_cone_evidence": cone_doc(c.l2.cone),
        "hyperbolicity": {"p": c.hyperbolicity.p, "decided": c.hyperbolicity.decided, "text": c.hyperbolicity.describe()},
        "profiles": {str(d): [iv(x) for x in prof] for d, prof in sorted(c.profiles.items())},
        "reasons": list(c.reasons),
    }
    header = {"format": FORMAT, "dyndeg": __version__, "mpmath": mpmath.__version__}
    return {"header": header, "body": body}


def dumps(c: Certificate) -> str:
    return json.dumps(to_document(c), indent=2, sort_keys=True) + "\n"


# re-verification -------------------------------------------------------------


def _check_sequences(A: IntMat3, ev: dict, out: list) -> None:
    vectors = {tuple(s["v"]) for s in ev["sequences"]}
    ok_cover = len(ev["sequences"]) == len(CONE_VECTORS) * len(STAR_FUNCTIONALS) and vectors == set(CONE_VECTORS)
    out.append(("cone sequences cover V u P x W", ok_cover))
    for s in ev["sequences"]:
        r = seq_from_pair(A, s["v"], s["w"])
        if [str(x) for x in r.init] != s["init"]:
            out.append((f"sequence {s['index']} initial terms", False))
            continue
        if s["method"] == "never_zero":
            ok = r.init[0] != 0 and mod_cycle(r, s["modulus"]).zero_positions == ()
        else:
            cert = LcmCert(tuple((m, p) for m, p in s["moduli"]), int(s["lcm"]), int(s["target"]), tuple(s["skipped"]))
            ok = cert.verify(r) and int(s["lcm"]) > int(s.get("baker_N0", "0"))
        out.append((f"sequence {s['index']} ({s['method']})", ok))


def _check_algebraic(M: IntMat3, d: dict, out: list, label: str) -> None:
    terms = [int(x) for x in d["terms"]]
    fresh = psi_sequence(M, len(terms))
    out.append((f"{label} Psi terms", fresh == terms))
    poly = series_to_polynomial(terms, rec_from_matrix(M), d["series_onset"])
    stored_raw = PolyQ.from_high([int(x) for x in d["raw_polynomial"]])
    out.append((f"{label} polynomial from series", poly == stored_raw))
    p = PolyQ.from_high([int(x) for x in d["polynomial"]])
    root = univ(d["root"])
    seq = sturm_sequence(squarefree_part(p))
    big = cauchy_bound(p) + 1
    if root.is_exact():
        ok = p(root.lo) == 0 and count_real_roots(seq, root.lo, big) == 0
    else:
        ok = count_real_roots(seq, root.lo, root.hi) >= 1 and count_real_roots(seq, root.hi, big) == 0
    out.append((f"{label} largest root enclosure", ok))


def verify_document(doc: dict) -> list[tuple[str, bool]]:
    """Re-check every stored claim without repeating any search."""
    b = doc["body"]
    out: list[tuple[str, bool]] = [("format", doc.get("header", {}).get("format") == FORMAT)]
    A = IntMat3(b["matrix"])
    out.append(("spectral class", classify_spectrum(A).cls.value == b["spectral_class"]))
    inv = A.inverse()
    out.append(("inverse spectral class", classify_spectrum(inv).cls.value == b["inverse_spectral_class"]))
    ev = b.get("cone_evidence")
    if ev and "sequences" in ev and ev["passed"]:
        _check_sequences(A, ev, out)
    for key, M in (("cone_evidence", A), ("inverse_cone_evidence", inv)):
        e = b.get(key)
        if e and "dominant" in e:
            fresh = dominant_cone_cert(M, CONE_VECTORS, STAR_FUNCTIONALS)
            out.append((f"{key} dominant certificate", fresh.passed == e["passed"]))
    lam = b["lambda"]
    for label, M in (("l1", A), ("l2", inv)):
        d = lam[label]
        if d["kind"] == "enclosure":
            e = d["enclosure"]
            enc = Lambda1Enclosure(univ(d["interval"]), e["terms"], e["m"], unq(e["F_lo_lower"]), unq(e["F_hi_upper"]))
            out.append((f"{label} sign contract", check_sign_contract(M, enc)))
        elif d["kind"] == "algebraic":
            _check_algebraic(M, d, out, label)
    ivs = [lam[k]["interval"] for k in ("l1", "l2")]
    if all(ivs):
        h = hyperbolicity([1, univ(ivs[0]), univ(ivs[1]), 1])
        out.append(("hyperbolicity", h.p == b["hyperbolicity"]["p"] and h.decided == b["hyperbolicity"]["decided"]))
    return out


def verify_text(text: str) -> list[tuple[str, bool]]:
    return verify_document(json.loads(text))
