"""Command-line driver.

Exit codes: 0 success, 1 internal failure, 2 bad input, 3 malformed
certificate, 4 certificate verification failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction

from . import certificate
from .errors import InputError
from .exactalg import QQ
from .linsys import chi_rr
from .nslattice import LatticeSetup, chi_rr_lattice, is_nef_against, load_lattice, scaling_check, seshadri_sup
from .numfield import NumberField
from .parsing import parse_rational
from .p2geom import make_point
from .seshadri import BracketParams, base_change_compare, multipoint_bound_mth_power, seshadri_p2, sqrt_bound_sq

log = logging.getLogger("sesh")


def _int_list(text: str) -> list[int]:
    try:
        return [int(s) for s in text.replace(" ", "").split(",") if s]
    except ValueError as exc:
        raise InputError(f"expected comma-separated integers, got {text!r}") from exc


def parse_field(minpoly: str | None):
    return QQ if not minpoly else NumberField(minpoly)


def parse_point(text: str, field):
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 3:
        raise InputError(f"a point needs three comma-separated coordinates, got {text!r}")
    if field is QQ:
        coords = [parse_rational(s) for s in parts]
    else:
        coords = [field.parse(s) for s in parts]
    return make_point(field, coords)


def _show_table(res) -> None:
    d0, alpha = res.params.L.d, res.alpha
    print(f"{'e':>4} {'m_max':>6} {'dim':>5} {'ratio':>8}")
    for t in res.table.entries:
        ratio = str(Fraction(d0 * t.e, alpha * t.m_max)) if t.m_max else "-"
        print(f"{t.e:>4} {t.m_max:>6} {t.kernel_dim:>5} {ratio:>8}")


def cmd_p2_compute(args) -> int:
    field = parse_field(args.minpoly)
    x = parse_point(args.point, field)
    p = BracketParams.make(parse_rational(args.gamma), args.degree)
    res = seshadri_p2(x, p, args.threads)
    print(f"point {x}, residue degree {x.residue_degree}, degree bound d = {res.bound.d} "
          f"(m = {res.bound.m}: {res.bound.h0} > {res.bound.conditions})")
    _show_table(res)
    print(f"witness (e={res.witness_e}, m={res.witness_m}): {res.witness}")
    print(res.describe())
    doc = certificate.build(x, res, args.point)
    certificate.write(doc, args.output)
    print(f"certificate written to {args.output}")
    return 0


def cmd_verify(args) -> int:
    try:
        doc = certificate.load(args.cert)
        passed = certificate.verify(doc, deep=args.deep)
    except certificate.CertificateMalformed as exc:
        print(f"malformed certificate: {exc}", file=sys.stderr)
        return 3
    except certificate.VerificationFailed as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 4
    for check in passed:
        print(f"ok  {check}")
    print("certificate verified")
    return 0


def cmd_bounds(args) -> int:
    if args.top is not None or args.degs is not None:
        if args.top is None or args.degs is None:
            raise InputError("--top and --degs must be given together")
        b = multipoint_bound_mth_power(parse_rational(args.top), _int_list(args.degs), args.m)
        print(f"epsilon^{args.m} <= {b}")
        return 0
    if args.alpha is None or args.selfint is None:
        raise InputError("give --alpha and --selfint, or --top and --degs")
    try:
        b = sqrt_bound_sq(parse_rational(args.selfint), args.alpha)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    print(f"epsilon^2 <= {b}")
    return 0


def cmd_lattice(args) -> int:
    lf = load_lattice(args.file)
    S, B, curves = lf.surface, lf.blowup, lf.curves
    if args.action == "chi":
        D = _int_list(args.D)
        print(chi_rr_lattice(D, S))
    elif args.action == "nef":
        cls = _int_list(args.cls)
        print("nef" if is_nef_against(cls, curves, B) else "not nef")
    elif args.action == "seshadri":
        res = seshadri_sup(_int_list(args.L), args.point or [0], curves, args.complete, B)
        print(res.value if res.status == "exact" and not res.capped else res.describe())
    elif args.action == "scaling":
        setup = LatticeSetup(B, tuple(args.point or [0]), curves, args.complete)
        ok = scaling_check(_int_list(args.L), args.n, setup)
        print("scaling holds" if ok else "scaling FAILS")
        return 0 if ok else 1
    return 0


def cmd_base_change(args) -> int:
    field = parse_field(args.minpoly)
    x = parse_point(args.point, field)
    if args.ext == "self":
        if field is QQ:
            raise InputError("--ext self needs a point with irrational coordinates")
        K = field
    elif args.ext in ("QQ", "Q"):
        K = None
    else:
        K = NumberField(args.ext)
    p = BracketParams.make(parse_rational(args.gamma), args.degree)
    p_ext = BracketParams.make(parse_rational(args.gamma_ext), args.degree) if args.gamma_ext else None
    rep = base_change_compare(x, K, p, p_ext, args.threads)
    print(rep.describe())
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sesh", description="Certified Seshadri constants on P^2 and lattice models.")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p2 = sub.add_parser("p2", help="computations on the projective plane")
    p2sub = p2.add_subparsers(dest="p2cmd", required=True)
    c = p2sub.add_parser("compute", help="value or bracket of epsilon(P^2, O(d0), x)")
    c.add_argument("--minpoly", help="minimal polynomial of th, e.g. 't^2-2' (omit for rational points)")
    c.add_argument("--point", required=True, help="homogeneous coordinates 'a,b,c'")
    c.add_argument("--gamma", required=True, help="threshold, e.g. 3/5")
    c.add_argument("--degree", type=int, default=1, help="bundle degree d0 of O(d0)")
    c.add_argument("--output", default="certificate.json", help="certificate path")
    c.add_argument("--threads", type=int, default=None)
    c.set_defaults(func=cmd_p2_compute)

    v = sub.add_parser("verify", help="re-check a certificate")
    v.add_argument("cert")
    v.add_argument("--deep", action="store_true", help="also recompute the whole table")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bounds", help="upper bounds from self-intersection")
    b.add_argument("--alpha", type=int)
    b.add_argument("--selfint")
    b.add_argument("--top", help="top self-intersection L^m")
    b.add_argument("--degs", help="residue degrees of the points, comma separated")
    b.add_argument("--m", type=int, default=2, help="dimension")
    b.set_defaults(func=cmd_bounds)

    lat = sub.add_parser("lattice", help="Neron-Severi lattice computations")
    lat.add_argument("--file", required=True)
    lsub = lat.add_subparsers(dest="action", required=True)
    s = lsub.add_parser("seshadri")
    s.add_argument("--point", type=int, action="append")
    s.add_argument("--L", required=True)
    s.add_argument("--complete", action="store_true")
    ch = lsub.add_parser("chi")
    ch.add_argument("--D", required=True)
    nf = lsub.add_parser("nef")
    nf.add_argument("--class", dest="cls", required=True)
    sc = lsub.add_parser("scaling")
    sc.add_argument("--point", type=int, action="append")
    sc.add_argument("--L", required=True)
    sc.add_argument("--n", type=int, required=True)
    sc.add_argument("--complete", action="store_true")
    lat.set_defaults(func=cmd_lattice)

    bc = sub.add_parser("base-change", help="compare epsilon over QQ and over an extension")
    bc.add_argument("--minpoly")
    bc.add_argument("--point", required=True)
    bc.add_argument("--ext", required=True, help="'self', 'QQ', or a minimal polynomial")
    bc.add_argument("--gamma", required=True)
    bc.add_argument("--gamma-ext", help="threshold over the extension (default 9/10 * d0)")
    bc.add_argument("--degree", type=int, default=1)
    bc.add_argument("--threads", type=int, default=None)
    bc.set_defaults(func=cmd_base_change)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.debug("internal failure", exc_info=True)
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
