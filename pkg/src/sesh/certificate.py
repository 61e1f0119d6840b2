"""JSON certificates for Seshadri computations on P^2 and their re-verification.

Rationals are written as "p/q" strings so nothing is lost in transit.  The
document is serialized with sorted keys, so identical inputs give identical
bytes.  Field layout is documented in docs/certificate.md.
"""

from __future__ import annotations

import json
import platform
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np

from .errors import InputError
from .exactalg import QQ
from .linsys import MultEntry, MultTable, h0, max_mult_detail
from .numfield import NumberField
from .p2geom import ClosedPoint, Form, intersection_number, make_point, mult_point, vanishing_order
from .seshadri import BracketParams, SeshadriResult, best_ratio, degree_bound, sqrt_bound_sq

SCHEMA_VERSION = 1


class CertificateMalformed(Exception):
    """The file is not a readable certificate (exit code 3)."""


class VerificationFailed(Exception):
    """A certificate check failed (exit code 4)."""


def qstr(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def qparse(s) -> Fraction:
    if not isinstance(s, str):
        raise CertificateMalformed(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise CertificateMalformed(f"bad rational {s!r}") from exc


def toolchain() -> dict:
    from . import __version__
    return {"sesh": __version__, "python": platform.python_version(), "numpy": np.__version__}


def _coord_list(c, field) -> list[str]:
    if field is QQ:
        return [qstr(c)]
    return [qstr(v) for v in c.coeffs]


def form_to_json(F: Form) -> dict:
    from .p2geom import monomials
    terms = [[*m, qstr(F.coeffs[m])] for m in monomials(F.degree) if m in F.coeffs]
    return {"degree": F.degree, "terms": terms, "text": str(F)}


def form_from_json(data: dict) -> Form:
    try:
        terms = {(int(t[0]), int(t[1]), int(t[2])): qparse(t[3]) for t in data["terms"]}
        return Form(terms, QQ, int(data["degree"]), normalize=False)
    except (KeyError, TypeError, IndexError, ValueError) as exc:
        raise CertificateMalformed(f"bad witness form: {exc}") from exc


def build(x: ClosedPoint, res: SeshadriResult, point_text: str | None = None) -> dict:
    p = res.params
    field = x.field
    doc: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "input": {
            "minpoly": None if field is QQ else [qstr(c) for c in field.min_poly],
            "point": [_coord_list(c, field) for c in x.coords],
            "point_text": point_text,
            "gamma": qstr(p.gamma),
            "L": p.L.d,
        },
        "alpha": res.alpha,
        "params": {"gamma": qstr(p.gamma), "d0": p.L.d, "r": p.r, "chi": p.chi},
        "degree_bound": {"d": res.bound.d, "m": res.bound.m, "h0": res.bound.h0,
                         "conditions": res.bound.conditions, "quadratic": qstr(res.bound.quadratic)},
        "table": [{"e": t.e, "m_max": t.m_max, "kernel_dim": t.kernel_dim} for t in res.table.entries],
        "result": {
            "kind": res.kind,
            "value": None if res.value is None else qstr(res.value),
            "lower": None if res.lower is None else qstr(res.lower),
            "upper_candidate": None if res.upper_candidate is None else qstr(res.upper_candidate),
            "upper_sq_bound": qstr(res.upper_sq_bound),
            "witness_e": res.witness_e,
            "witness_m": res.witness_m,
        },
        "witness": None if res.witness is None else form_to_json(res.witness),
        "toolchain": toolchain(),
    }
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def write(doc: dict, path: str | Path) -> None:
    Path(path).write_text(dumps(doc))


def load(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CertificateMalformed(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateMalformed(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CertificateMalformed("top level must be an object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise CertificateMalformed(f"unsupported schema_version {doc.get('schema_version')!r}")
    return doc


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise VerificationFailed(msg)


def rebuild_point(inp: dict) -> ClosedPoint:
    try:
        mp = inp["minpoly"]
        coords = inp["point"]
        if mp is None:
            field = QQ
            vals = [qparse(c[0]) for c in coords]
        else:
            field = NumberField([qparse(c) for c in mp])
            vals = [field([qparse(v) for v in c]) for c in coords]
        return make_point(field, vals)
    except (KeyError, TypeError, IndexError) as exc:
        raise CertificateMalformed(f"bad input section: {exc}") from exc


def verify(doc: dict, deep: bool = False) -> list[str]:
    """Re-check every claim in the certificate; return the list of checks passed.

    Raises VerificationFailed at the first failing check, CertificateMalformed
    if a section cannot be read.
    """
    passed = []
    try:
        inp, params, db, table, result = (doc["input"], doc["params"], doc["degree_bound"],
                                          doc["table"], doc["result"])
        alpha = int(doc["alpha"])
        gamma = qparse(params["gamma"])
        d0 = int(params["d0"])
        entries = [MultEntry(int(t["e"]), int(t["m_max"]), int(t["kernel_dim"])) for t in table]
        kind = result["kind"]
    except (KeyError, TypeError, ValueError) as exc:
        raise CertificateMalformed(f"missing or malformed section: {exc}") from exc

    try:
        x = rebuild_point(inp)
    except InputError as exc:
        raise VerificationFailed(f"input point does not rebuild: {exc}") from exc
    _need(x.residue_degree == alpha, f"residue degree is {x.residue_degree}, certificate says {alpha}")
    _need(qparse(inp["gamma"]) == gamma and int(inp["L"]) == d0, "input echo disagrees with params")
    passed.append("point and residue degree")

    try:
        p = BracketParams.make(gamma, d0)
        bound = degree_bound(p, alpha)
    except InputError as exc:
        raise VerificationFailed(f"parameters invalid: {exc}") from exc
    _need(p.r == params["r"] and p.chi == params["chi"], "r or chi differ from the recomputed values")
    _need((bound.d, bound.m, bound.h0, bound.conditions) == (db["d"], db["m"], db["h0"], db["conditions"]),
          f"degree bound does not recompute: expected d={bound.d}")
    _need(h0(bound.d * d0) > alpha * bound.m * (bound.m + 1) // 2, "dimension count fails")
    passed.append("degree bound minimal and dimension count holds")

    _need([t.e for t in entries] == list(range(1, bound.d * d0 + 1)), "table does not cover degrees 1..d*d0")
    try:
        mt = MultTable(tuple(entries))
    except ValueError as exc:
        raise VerificationFailed(f"table invariant: {exc}") from exc
    for a in entries:
        _need((a.m_max == 0) == (a.kernel_dim == 0), f"kernel dimension inconsistent at e={a.e}")
        for b in entries:
            if a.e + b.e <= len(entries):
                _need(mt.m_max(a.e + b.e) >= a.m_max + b.m_max, f"superadditivity fails at {a.e}+{b.e}")
    passed.append("table coverage, monotonicity, superadditivity")

    best = best_ratio(mt, d0, alpha)
    _need(best is not None, "table has no curve through the point")
    ratio, e, m = best
    _need((result["witness_e"], result["witness_m"]) == (e, m), "witness degree is not the smallest argmin")
    sq = sqrt_bound_sq(p.L_self, alpha)
    _need(qparse(result["upper_sq_bound"]) == sq, "square-root bound differs")
    if kind == "Exact":
        _need(ratio < gamma and qparse(result["value"]) == ratio, "Exact value does not recompute")
        _need(ratio * ratio <= sq, "Exact value exceeds the square-root bound")
    elif kind == "Interval":
        _need(ratio >= gamma, "Interval reported although a ratio below gamma exists")
        _need(qparse(result["lower"]) == gamma and qparse(result["upper_candidate"]) == ratio,
              "Interval endpoints do not recompute")
        _need(gamma * gamma <= sq, "lower end exceeds the square-root bound")
    else:
        raise CertificateMalformed(f"unknown result kind {kind!r}")
    passed.append("result recomputed from the table")

    if doc.get("witness") is None:
        raise VerificationFailed("witness missing")
    W = form_from_json(doc["witness"])
    _need(W.degree == e, "witness degree differs from the argmin degree")
    _need(Form(W.coeffs, QQ, W.degree) == W, "witness is not in canonical normalization")
    order = vanishing_order(W, x)
    _need(order == m, f"witness vanishes to order {order}, table claims {m}")
    _need(intersection_number(p.L, W) / mult_point(W, x) == ratio, "witness ratio differs")
    passed.append("witness order and ratio via derivative evaluation")

    if deep:
        for ent in entries:
            r = max_mult_detail(ent.e, x)
            _need(r.entry == ent, f"recomputed entry at e={ent.e} is {r.entry}")
        passed.append("table recomputed")
    return passed
