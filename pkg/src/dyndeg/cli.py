"""Command-line front end.

Exit codes: 0 success/PASS, 1 certified FAIL, 2 unknown or undecidable, 3 input error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra.interval import RatInterval
from .certificate import dumps, verify_text
from .certify import (
    CITED_CONE,
    Certificate,
    DegreeResult,
    classify_spectrum,
    cone_condition,
    degree_via,
    full_report,
    transcendence_conditions,
)
from .maps import ProjPointQ, build_fA, degree_bound, homogenize_monomial, orbit_heights
from .matrix import MatrixInputError, read_matrix
from .psi import psi
from .recur.baker import DEFAULT_BAKER_TARGET
from .recur.linrec import DEFAULT_STEP_CAP, default_jobs

EXIT_OK, EXIT_FAIL, EXIT_UNKNOWN, EXIT_INPUT = 0, 1, 2, 3


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    matrix: str
    eps: Fraction = Fraction(1, 10**6)
    moduli: range = range(5, 2000)
    step_cap: int = DEFAULT_STEP_CAP
    baker_target: int = DEFAULT_BAKER_TARGET
    n_start: int = 64
    jobs: int = 1
    out: str | None = None
    profile_dims: list[int] = field(default_factory=list)
    assume_cone: bool = False

    def __post_init__(self):
        if self.eps <= 0:
            raise InputError("--eps must be positive")
        if len(self.moduli) == 0 or self.moduli.start < 2:
            raise InputError("--moduli must be an ascending range LO..HI with LO >= 2")
        if self.step_cap < 1000:
            raise InputError("--step-cap must be at least 1000")
        if self.n_start < 4:
            raise InputError("--n-start must be at least 4")
        if any(d < 3 for d in self.profile_dims):
            raise InputError("--profile-d entries must be at least 3")

    @property
    def cone_kw(self) -> dict:
        return {
            "moduli": self.moduli,
            "step_cap": self.step_cap,
            "baker_target": self.baker_target,
            "jobs": self.jobs,
        }


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from exc


def _moduli(s: str) -> range:
    try:
        lo, hi = (int(x) for x in s.split(".."))
    except ValueError as exc:
        raise argparse.ArgumentTypeError("expected LO..HI") from exc
    if hi < lo:
        raise argparse.ArgumentTypeError("modulus range must be ascending")
    return range(lo, hi + 1)


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers: {s!r}") from exc


def _big_int(s: str) -> int:
    """Integer, exponent notation allowed (7e18)."""
    try:
        x = Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}") from exc
    if x.denominator != 1 or x < 1:
        raise argparse.ArgumentTypeError(f"not a positive integer: {s!r}")
    return int(x)


def fmt(x: RatInterval | None, digits: int = 10) -> str:
    if x is None:
        return "unknown"
    if x.is_exact():
        v = x.lo
        return str(v.numerator) if v.denominator == 1 else f"{float(v):.{digits}g}"
    return f"[{float(x.lo):.{digits}g}, {float(x.hi):.{digits}g}]"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("matrix", help="matrix file: three lines of three integers, '#' comments allowed")
    common.add_argument("--eps", type=_rational, default=Fraction(1, 10**6), help="enclosure width (default 1/10^6)")
    common.add_argument("--moduli", type=_moduli, default=range(5, 2000), help="modulus range LO..HI (default 5..1999)")
    common.add_argument("--step-cap", type=int, default=DEFAULT_STEP_CAP, help="per-modulus step cap")
    common.add_argument("--baker-target", type=_big_int, default=DEFAULT_BAKER_TARGET, help="lcm target (default 7e18)")
    common.add_argument("--n-start", type=int, default=64, help="initial series length")
    common.add_argument("--jobs", type=int, default=None, help="worker processes (default $DYNDEG_JOBS or 1)")
    common.add_argument("--out", help="write the certificate JSON here")
    common.add_argument("--assume-cone", action="store_true", help="take the forward cone condition as given")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="dyndeg", description="Certified dynamical degrees of f_A on P^3.")
    sub = p.add_subparsers(dest="command", required=True)
    sp = sub.add_parser("psi", parents=[common], help="Psi(A^n)")
    sp.add_argument("--n", type=int, default=1)
    sub.add_parser("degree", parents=[common], help="homogenized monomial map and degree of f_A")
    sub.add_parser("lambda1", parents=[common], help="lambda_1(f_A)")
    sub.add_parser("lambda2", parents=[common], help="lambda_2(f_A) = lambda_1(f_A^-1)")
    sub.add_parser("cone-check", parents=[common], help="cone condition for every A^n")
    sub.add_parser("transcendence", parents=[common], help="hypotheses of the transcendence criterion")
    sp = sub.add_parser("report", parents=[common], help="full certificate")
    sp.add_argument("--profile-d", type=_int_list, default=[], help="comma-separated dimensions d >= 3")
    sp = sub.add_parser("orbit", parents=[common], help="heights along an orbit of f_A")
    sp.add_argument("--point", type=_int_list, required=True, help="x0,x1,x2,x3")
    sp.add_argument("--steps", type=int, default=3)
    sv = sub.add_parser("verify", help="re-check a stored certificate")
    sv.add_argument("certificate")
    return p


def _config(args) -> RunConfig:
    return RunConfig(
        command=args.command,
        matrix=args.matrix,
        eps=args.eps,
        moduli=args.moduli,
        step_cap=args.step_cap,
        baker_target=args.baker_target,
        n_start=args.n_start,
        jobs=args.jobs if args.jobs is not None else default_jobs(),
        out=args.out,
        profile_dims=getattr(args, "profile_d", []),
        assume_cone=args.assume_cone,
    )


def _print_degree(label: str, r: DegreeResult) -> int:
    print(f"{label} = {fmt(r.interval)}  ({r.kind})")
    if r.algebraic is not None:
        a = r.algebraic
        print(f"  polynomial: {a.polynomial.format('lambda')}")
        print(f"  largest real root: {fmt(a.root, 15)}")
        print(f"  recurrence onset: {a.onset}")
    if r.enclosure is not None:
        print(f"  width: {float(r.interval.width):.3g}, terms: {r.enclosure.terms}")
    if r.reason:
        print(f"  note: {r.reason}")
    return EXIT_OK if r.kind in ("algebraic", "enclosure") else EXIT_UNKNOWN


def _print_cone(ev) -> int:
    d = ev.detail
    print(f"cone condition: {'PASS' if ev.passed else 'not certified'} ({ev.kind})")
    if "cert" in d:
        c = d["cert"]
        for x in c.vectors:
            print(f"  v = {x.v}: analytic from n = {x.onset}, bound {fmt(x.bound_at_onset)}")
        if c.witness is not None:
            v, n, img = c.witness
            print(f"  counterexample: A^{n} {v} = {img}")
            return EXIT_FAIL
        if c.reason:
            print(f"  {c.reason}")
    if "sequences" in d:
        for s in d["sequences"]:
            if s.method == "never_zero":
                print(f"  sequence {s.index}: never zero mod {s.modulus}")
            else:
                print(f"  sequence {s.index}: zero only at n = 0 up to lcm {s.lcm.lcm_periods} (Baker N0 = {s.baker_N0})")
        for f in d.get("failures", []):
            print(f"  {f}")
    if "reason" in d:
        print(f"  {d['reason']}")
    return EXIT_OK if ev.passed else EXIT_UNKNOWN


def _print_transcendence(t) -> int:
    print(f"transcendence hypotheses: {t.verdict}")
    print(f"  irreducible characteristic polynomial: {t.cond_irreducible}")
    print(f"  dominant complex pair, angle not a rational multiple of pi: {t.cond_pair_and_angle} {t.angle_routes}")
    if t.cond_sigma_units:
        n = sum(1 for x in t.cond_sigma_units if x[2])
        print(f"  sigma(v, w) non-units: {n}/{len(t.cond_sigma_units)}")
        n = sum(1 for x in t.cond_ratio_units if x[2])
        print(f"  ratio non-units: {n}/{len(t.cond_ratio_units)} ({t.ratio_pairs_exempt} exempt pairs)")
    for r in t.reasons:
        print(f"  {r}")
    if t.verdict == "PASS":
        print("  transcendence of lambda_1 follows from the criterion")
    return {"PASS": EXIT_OK, "FAIL": EXIT_FAIL}.get(t.verdict, EXIT_UNKNOWN)


def _print_report(c: Certificate) -> int:
    print(f"matrix {[list(r) for r in c.matrix.rows]}: {c.spectral_class.value}")
    if c.spectral_class.value == "Unsupported":
        for r in c.reasons:
            print(f"  {r}")
        print("verdict: unsupported")
        return EXIT_UNKNOWN
    for r in c.reasons:
        if r not in (c.l1.reason, c.l2.reason):
            print(f"  {r}")
    lo, hi = c.bounds
    print("lambda_0 = 1")
    _print_degree("lambda_1", c.l1)
    print(f"  elementary bracket: [{lo}, {hi}]")
    t = c.l1.transcendence
    if t is not None:
        print(f"  transcendental: {'certified' if t.verdict == 'PASS' else t.verdict.lower()}")
    _print_degree("lambda_2", c.l2)
    print("lambda_3 = 1")
    print(f"verdict: {c.hyperbolicity.describe()}")
    for d, prof in sorted(c.profiles.items()):
        print(f"profile d={d}: (" + ", ".join(fmt(x, 8) for x in prof) + ")")
    return EXIT_OK if c.status == "PASS" else EXIT_UNKNOWN


def run(cfg: RunConfig, args) -> int:
    A = read_matrix(cfg.matrix)
    if cfg.command == "psi":
        if args.n < 0:
            raise InputError("--n must be nonnegative")
        print(psi(A, args.n))
        return EXIT_OK
    if cfg.command == "degree":
        h = homogenize_monomial(A)
        f = build_fA(A)
        print(f"h_A = {h.format()}")
        print(f"deg h_A = {h.degree}")
        print(f"deg f_A <= {degree_bound(f.forward)}, deg f_A^-1 <= {degree_bound(f.inverse)}")
        return EXIT_OK
    if cfg.command == "lambda1":
        cone = CITED_CONE if cfg.assume_cone else None
        return _print_degree("lambda_1", degree_via(A, cfg.eps, cone, n_start=cfg.n_start, **cfg.cone_kw))
    if cfg.command == "lambda2":
        r = degree_via(A.inverse(), cfg.eps, None, with_transcendence=False, n_start=cfg.n_start, **cfg.cone_kw)
        return _print_degree("lambda_2", r)
    if cfg.command == "cone-check":
        sc = classify_spectrum(A)
        kw = cfg.cone_kw if sc.cls.value == "ComplexPairDominant" else {}
        return _print_cone(cone_condition(A, **kw))
    if cfg.command == "transcendence":
        sc = classify_spectrum(A)
        cone = cone_condition(A, **cfg.cone_kw) if sc.cls.value == "ComplexPairDominant" else None
        return _print_transcendence(transcendence_conditions(A, cone, cfg.jobs))
    if cfg.command == "report":
        c = full_report(A, cfg.profile_dims, cfg.eps, assume_cone=cfg.assume_cone, n_start=cfg.n_start, **cfg.cone_kw)
        code = _print_report(c)
        if cfg.out:
            Path(cfg.out).write_text(dumps(c))
            print(f"certificate written to {cfg.out}")
        return code
    if cfg.command == "orbit":
        if len(args.point) != 4:
            raise InputError("--point needs four integers")
        try:
            P = ProjPointQ(args.point)
        except ValueError as exc:
            raise InputError(str(exc)) from exc
        res = orbit_heights(build_fA(A).forward, P, args.steps)
        for k, (pt, h) in enumerate(zip(res.points, res.heights)):
            bits = max(abs(x).bit_length() for x in pt.coords)
            shown = repr(pt) if bits < 200 else f"<coordinates of about {int(bits * 0.30103)} digits>"
            print(f"f^{k}(P) = {shown}  h = {fmt(h)}")
        for k, g in enumerate(res.growth_ratios(), start=1):
            print(f"h+(f^{k} P)^(1/{k}) = {fmt(g)}")
        if not res.complete:
            print(f"stopped at step {res.failed_at}: {res.reason}")
            return EXIT_UNKNOWN
        return EXIT_OK
    raise InputError(f"unknown command {cfg.command}")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    logging.basicConfig(level=logging.INFO if getattr(args, "verbose", False) else logging.WARNING)
    if args.command == "verify":
        try:
            text = Path(args.certificate).read_text()
            results = verify_text(text)
        except (OSError, ValueError, KeyError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        for name, ok in results:
            print(f"{'ok  ' if ok else 'FAIL'} {name}")
        return EXIT_OK if all(ok for _, ok in results) else EXIT_FAIL
    try:
        cfg = _config(args)
        return run(cfg, args)
    except (InputError, MatrixInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
