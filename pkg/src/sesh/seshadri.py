"""Seshadri constants of O(d0) on P^2 at closed points.

The bracket algorithm: pick gamma with alpha * gamma^2 < L^2 and the least
degree bound d (a multiple of gamma's denominator) for which the dimension
count forces a member D of |dL| with order >= m = d*gamma at x.  By Bezout
every irreducible curve whose ratio L.C / mult_x C is below gamma is a
component of D, so has degree <= d*d0.  Tabulating the largest possible
order m_max(e) for each degree e <= d*d0 then gives

  * eps_c = min_e d0*e / (alpha*m_max(e)), attained by some kernel form;
    a reducible form never beats its best component, so eps <= eps_c;
  * if eps_c < gamma, every curve with ratio < gamma has ratio >= eps_c,
    hence eps = eps_c exactly (Exact);
  * otherwise gamma <= eps <= eps_c and eps^2 <= L^2/alpha (Interval).

All comparisons with square roots are done on squares.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

from .errors import GammaOutOfRange, NoBoundInBudget, UnsupportedConfiguration
from .exactalg import QQ
from .linsys import MaxMultResult, MultTable, h0, mult_table
from .numfield import NumberField, subalgebra_degree
from .p2geom import ClosedPoint, Form, LineBundleDeg, intersection_number, make_point, mult_point

log = logging.getLogger(__name__)

DEGREE_BOUND_CAP = 100_000


def sqrt_bound_sq(L_self, alpha: int) -> Fraction:
    """Square of the bound eps <= sqrt(L^2 / alpha) at a point of residue degree alpha."""
    if alpha < 1:
        raise ValueError("residue degree must be >= 1")
    L_self = Fraction(L_self)
    if L_self <= 0:
        raise ValueError("self-intersection must be positive")
    return L_self / alpha


def multipoint_bound_mth_power(L_top, degs: Sequence[int], m: int) -> Fraction:
    """m-th power of the bound (L^m / sum of point degrees)^(1/m) on an m-fold."""
    if m < 2:
        raise ValueError("dimension m must be >= 2")
    degs = list(degs)
    if not degs or any(d < 1 for d in degs):
        raise ValueError("point degrees must be a nonempty list of positive integers")
    return Fraction(L_top) / sum(degs)


def _smallest_r(d0: int) -> int:
    # smallest r with r*d0 + 3 >= 1, i.e. rL - K ample on P^2
    return -(2 // d0)


@dataclass(frozen=True)
class BracketParams:
    gamma: Fraction
    L: LineBundleDeg
    r: int
    chi: int = 1

    @classmethod
    def make(cls, gamma, d0: int = 1) -> "BracketParams":
        if d0 < 1:
            raise GammaOutOfRange("the bundle O(d0) must be ample: d0 >= 1")
        return cls(Fraction(gamma), LineBundleDeg(d0), _smallest_r(d0), 1)

    @property
    def L_self(self) -> Fraction:
        return Fraction(self.L.d ** 2)

    def check(self, alpha: int) -> None:
        g = self.gamma
        if g <= 0:
            raise GammaOutOfRange(f"gamma must be positive, got {g}")
        if alpha * g * g >= self.L_self:
            raise GammaOutOfRange(
                f"gamma = {g} violates alpha*gamma^2 < L^2 ({alpha * g * g} >= {self.L_self}); "
                f"the bracket needs gamma below sqrt(L^2/alpha)")


@dataclass(frozen=True)
class DegreeBound:
    d: int
    m: int
    h0: int
    conditions: int
    quadratic: Fraction


def degree_bound(p: BracketParams, alpha: int) -> DegreeBound:
    """Least d > r, d*gamma integral, with h0(dL) > alpha*m(m+1)/2 for m = d*gamma."""
    p.check(alpha)
    d0 = p.L.d
    step = p.gamma.denominator
    d = step
    while d <= DEGREE_BOUND_CAP:
        if d > p.r:
            m = int(d * p.gamma)
            conditions = alpha * m * (m + 1) // 2
            dim = h0(d * d0)
            if dim > conditions:
                L2 = p.L_self
                quad = ((L2 - alpha * p.gamma ** 2) * d * d
                        - (alpha * p.gamma + p.r * L2) * d + 2 * p.chi)
                return DegreeBound(d, m, dim, conditions, quad)
        d += step
    raise NoBoundInBudget(f"no degree bound below {DEGREE_BOUND_CAP}")


@dataclass
class SeshadriResult:
    kind: str  # "Exact" or "Interval"
    alpha: int
    params: BracketParams
    bound: DegreeBound
    table: MultTable
    upper_sq_bound: Fraction
    value: Fraction | None = None
    lower: Fraction | None = None
    upper_candidate: Fraction | None = None
    witness: Form | None = None
    witness_e: int | None = None
    witness_m: int | None = None
    details: dict = dc_field(default_factory=dict, repr=False)

    @property
    def degree_bound_d(self) -> int:
        return self.bound.d

    @property
    def lower_bound(self) -> Fraction:
        return self.value if self.kind == "Exact" else self.lower

    @property
    def upper_bound(self) -> Fraction:
        return self.value if self.kind == "Exact" else self.upper_candidate

    def describe(self) -> str:
        if self.kind == "Exact":
            return f"epsilon = {self.value}"
        return f"epsilon in [{self.lower}, {self.upper_candidate}], epsilon^2 <= {self.upper_sq_bound}"


def best_ratio(table: MultTable, d0: int, alpha: int) -> tuple[Fraction, int, int] | None:
    """(ratio, e, m) minimizing d0*e/(alpha*m); ties go to the smallest degree."""
    best = None
    for ent in table.entries:
        if ent.m_max < 1:
            continue
        ratio = Fraction(d0 * ent.e, alpha * ent.m_max)
        if best is None or ratio < best[0]:
            best = (ratio, ent.e, ent.m_max)
    return best


def seshadri_p2(x: ClosedPoint, p: BracketParams, threads: int | None = None) -> SeshadriResult:
    """Certified value or bracket of eps(P^2, O(d0), x)."""
    alpha = x.residue_degree
    bound = degree_bound(p, alpha)
    d0 = p.L.d
    emax = bound.d * d0
    log.info("alpha=%d d=%d m=%d h0=%d > %d; tabulating degrees 1..%d",
             alpha, bound.d, bound.m, bound.h0, bound.conditions, emax)
    table, details = mult_table(x, emax, threads)
    best = best_ratio(table, d0, alpha)
    if best is None:
        raise AssertionError("the dimension count guarantees a curve through x of degree <= d*d0")
    ratio, e, m = best
    wit: MaxMultResult = details[e]
    sq = sqrt_bound_sq(p.L_self, alpha)
    common = dict(alpha=alpha, params=p, bound=bound, table=table, upper_sq_bound=sq,
                  witness=wit.witness, witness_e=e, witness_m=m,
                  details={e_: r.certified_by for e_, r in details.items()})
    if ratio < p.gamma:
        res = SeshadriResult(kind="Exact", value=ratio, **common)
    else:
        res = SeshadriResult(kind="Interval", lower=p.gamma, upper_candidate=ratio, **common)
    check_result(res)
    return res


def check_result(res: SeshadriResult) -> None:
    """Assert the exact invariants every result must satisfy."""
    d0, alpha = res.params.L.d, res.alpha
    for ent in res.table.entries:
        if ent.m_max and Fraction(d0 * ent.e, alpha * ent.m_max) < Fraction(d0, alpha):
            raise AssertionError("a tabulated ratio is below the floor d0/alpha")
    if res.upper_sq_bound != sqrt_bound_sq(res.params.L_self, alpha):
        raise AssertionError("wrong square-root bound")
    if res.kind == "Exact":
        v = res.value
        if not (v < res.params.gamma and v == Fraction(d0 * res.witness_e, alpha * res.witness_m)):
            raise AssertionError("Exact value inconsistent with gamma or its witness")
        if v * v > res.upper_sq_bound:
            raise AssertionError("Exact value exceeds the square-root bound")
    elif res.kind == "Interval":
        if not (res.lower == res.params.gamma <= res.upper_candidate):
            raise AssertionError("Interval endpoints out of order")
        if res.lower * res.lower > res.upper_sq_bound:
            raise AssertionError("Interval lower end exceeds the square-root bound")
    else:
        raise AssertionError(f"unknown result kind {res.kind!r}")


def replay_witness(res: SeshadriResult, x: ClosedPoint) -> Fraction:
    """Recompute the witness ratio through intersection numbers and k-multiplicities."""
    mult = mult_point(res.witness, x)
    if mult < x.residue_degree * res.witness_m:
        raise AssertionError("witness order below the tabulated m_max")
    return intersection_number(res.params.L, res.witness) / mult


# ---------------------------------------------------------------------------
# base change


@dataclass
class BaseChangeReport:
    case: str  # "rational", "residue-field" or "trivial"
    eps_base: SeshadriResult
    eps_ext: SeshadriResult
    tables_identical: bool | None = None
    results_identical: bool | None = None
    inequality: str = ""  # "equal", "holds (strict)", "holds", "undetermined"

    def describe(self) -> str:
        def show(r):
            return str(r.value) if r.kind == "Exact" else f"[{r.lower},{r.upper_candidate}]"
        if self.case == "residue-field":
            return (f"eps_Q {'=' if self.eps_base.kind == 'Exact' else 'in'} {show(self.eps_base)}, "
                    f"eps_K {'=' if self.eps_ext.kind == 'Exact' else 'in'} {show(self.eps_ext)}, "
                    f"inequality {self.inequality}")
        return (f"eps_Q: {show(self.eps_base)}, eps_K: {show(self.eps_ext)}, tables identical: "
                f"{self.tables_identical}, results identical: {self.results_identical}")


def _same_result(a: SeshadriResult, b: SeshadriResult) -> bool:
    return (a.kind, a.value, a.lower, a.upper_candidate, a.upper_sq_bound, a.bound.d) == \
           (b.kind, b.value, b.lower, b.upper_candidate, b.upper_sq_bound, b.bound.d)


def _as_rational(c) -> Fraction:
    if isinstance(c, Fraction) or isinstance(c, int):
        return Fraction(c)
    if not c.is_rational():
        raise UnsupportedConfiguration("coordinate is not rational")
    return c.coeffs[0]


def base_change_compare(x: ClosedPoint, K: NumberField | None, p: BracketParams,
                        p_ext: BracketParams | None = None, threads: int | None = None) -> BaseChangeReport:
    """Compare eps over QQ with eps after extending scalars to K.

    Rational x: the MultTable over K must equal the one over QQ.  x of residue
    degree alpha > 1 with K its coordinate field: y0 (same coordinates) is
    K-rational and eps_K >= eps_QQ is checked from the certified brackets.
    """
    if x.base is not QQ:
        raise UnsupportedConfiguration("the point must be given over QQ")
    base_res = seshadri_p2(x, p, threads)
    if K is None or K is QQ:
        return BaseChangeReport("trivial", base_res, base_res, True, True, "equal")
    if x.residue_degree == 1:
        coords = [K(_as_rational(c)) for c in x.coords]
        y = make_point(K, coords, base=K)
        ext_res = seshadri_p2(y, p, threads)
        tables = base_res.table == ext_res.table
        same = _same_result(base_res, ext_res)
        wit_same = base_res.witness.change_field(K) == ext_res.witness
        return BaseChangeReport("rational", base_res, ext_res, tables, same and wit_same,
                                "equal" if same else "undetermined")
    if K != x.field:
        raise UnsupportedConfiguration(
            "for a point of residue degree > 1 the extension must be its own coordinate field")
    if subalgebra_degree(x.affine, x.field) != K.degree:
        raise UnsupportedConfiguration("the coordinate field is larger than the residue field")
    if p_ext is None:
        d0 = p.L.d
        p_ext = BracketParams.make(Fraction(9, 10) * d0, d0)
    y = make_point(K, x.coords, base=K)
    ext_res = seshadri_p2(y, p_ext, threads)
    lo, hi = ext_res.lower_bound, base_res.upper_bound
    if lo > hi:
        verdict = "holds (strict)"
    elif lo >= hi:
        verdict = "holds"
    else:
        verdict = "undetermined"
    return BaseChangeReport("residue-field", base_res, ext_res, inequality=verdict)


# ---------------------------------------------------------------------------
# global Seshadri constant


def global_trend(dmax: int) -> list[tuple[int, Fraction]]:
    """Witness ratios of the line x2 at x_delta = [2^(1/delta), 1, 0], delta = 2..dmax."""
    if dmax < 2:
        raise ValueError("dmax must be >= 2")
    line = Form.coordinate(2)
    out = []
    for delta in range(2, dmax + 1):
        F = NumberField([-2] + [0] * (delta - 1) + [1])
        x = make_point(F, [F.gen, 1, 0])
        ratio = intersection_number(LineBundleDeg(1), line) / mult_point(line, x)
        if ratio * ratio > sqrt_bound_sq(1, x.residue_degree):
            raise AssertionError("witness ratio exceeds the square-root bound")
        out.append((x.residue_degree, ratio))
    return out
