"""Closed points, plane curves and k-intersection numbers on P^2.

A closed point of residue degree alpha is stored by one geometric
representative; its k-multiplicity on a curve F is alpha times the vanishing
order of F there.  Vanishing orders are read off homogeneous partial
derivatives (characteristic 0), so no local ring is ever built.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Sequence

from .errors import AllCoordsZero, CommonComponent, FieldMismatch, UnsupportedConfiguration
from .exactalg import QQ, normalize_monic, normalize_qq
from .numfield import NfElement, subalgebra_degree
from .parsing import parse_polynomial
from .polyarith import bgcd

Exponent = tuple[int, int, int]


@lru_cache(maxsize=None)
def monomials(e: int) -> tuple[Exponent, ...]:
    """Degree-e monomials in graded-lex order with x0 > x1 > x2."""
    return tuple((i, j, e - i - j) for i in range(e, -1, -1) for j in range(e - i, -1, -1))


@lru_cache(maxsize=None)
def monomial_index(e: int) -> dict[Exponent, int]:
    return {m: k for k, m in enumerate(monomials(e))}


def _falling(n: int, k: int) -> int:
    out = 1
    for t in range(k):
        out *= n - t
    return out


class Form:
    """A nonzero homogeneous polynomial in x0, x1, x2 over QQ or a number field.

    Stored in canonical normalization: over QQ integer coefficients with
    content 1 and positive leading coefficient (graded-lex); over a number
    field the leading coefficient is 1.
    """

    __slots__ = ("field", "degree", "coeffs")

    def __init__(self, coeffs: dict, field=QQ, degree: int | None = None, normalize: bool = True):
        coeffs = {tuple(k): field(v) for k, v in coeffs.items() if v != 0}
        if not coeffs:
            raise ValueError("a form must have at least one nonzero coefficient")
        degs = {sum(k) for k in coeffs}
        if len(degs) != 1:
            raise ValueError("polynomial is not homogeneous")
        d = degs.pop()
        if degree is not None and degree != d:
            raise ValueError(f"degree mismatch: {degree} != {d}")
        self.field = field
        self.degree = d
        if normalize:
            order = [m for m in monomials(d) if m in coeffs]
            vec = [coeffs[m] for m in order]
            vec = normalize_qq(vec) if field is QQ else normalize_monic(vec, field)
            coeffs = dict(zip(order, vec))
        self.coeffs = coeffs

    @classmethod
    def from_vector(cls, e: int, vec: Sequence, field=QQ) -> "Form":
        return cls({m: c for m, c in zip(monomials(e), vec) if c != 0}, field, e)

    @classmethod
    def parse(cls, text: str, field=QQ) -> "Form":
        """Parse ``"c*x0^i*x1^j*x2^l + ..."`` (rational coefficients only)."""
        poly = parse_polynomial(text, {"x0": 0, "x1": 1, "x2": 2}, 3)
        return cls(poly, field)

    @classmethod
    def coordinate(cls, i: int, field=QQ) -> "Form":
        e = [0, 0, 0]
        e[i] = 1
        return cls({tuple(e): 1}, field)

    def vector(self) -> list:
        return [self.coeffs.get(m, self.field.zero) for m in monomials(self.degree)]

    def change_field(self, field) -> "Form":
        if field is self.field:
            return self
        if self.field is not QQ:
            raise FieldMismatch("only QQ forms can be moved to another field")
        return Form(self.coeffs, field, self.degree)

    def __mul__(self, other: "Form") -> "Form":
        field = self.field if self.field is not QQ else other.field
        out: dict = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = (ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2])
                out[k] = out.get(k, 0) + va * vb
        return Form(out, field, self.degree + other.degree)

    def __pow__(self, n: int) -> "Form":
        out = self
        for _ in range(n - 1):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return (isinstance(other, Form) and self.degree == other.degree
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def evaluate(self, point: Sequence) -> Any:
        return _eval_partial(self.coeffs, (0, 0, 0), point)

    def x2_valuation(self) -> int:
        return min(k[2] for k in self.coeffs)

    def __str__(self) -> str:
        return format_form(self.coeffs, self.degree)

    def __repr__(self) -> str:
        return f"Form({self})"


def _coeff_str(c) -> str:
    if isinstance(c, NfElement):
        return "(" + repr(c) + ")"
    return str(c)


def format_form(coeffs: dict, degree: int) -> str:
    """Render as ``c*x0^i*x1^j*x2^l`` terms in graded-lex order."""
    parts = []
    for m in monomials(degree):
        c = coeffs.get(m)
        if c is None or c == 0:
            continue
        mono = "*".join(f"x{v}" if p == 1 else f"x{v}^{p}" for v, p in enumerate(m) if p)
        if isinstance(c, NfElement) and not c.is_rational():
            coef, sign = _coeff_str(c), "+"
        else:
            c = Fraction(c.coeffs[0]) if isinstance(c, NfElement) else Fraction(c)
            coef, sign = str(abs(c)), "-" if c < 0 else "+"
        if not mono:
            body = coef
        elif coef == "1":
            body = mono
        else:
            body = f"{coef}*{mono}"
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _eval_partial(coeffs: dict, alpha: Exponent, point: Sequence):
    """Value at ``point`` of the partial derivative d^alpha of the form."""
    a, b, c = alpha
    total = 0
    pw = [{}, {}, {}]

    def power(v, k):
        cache = pw[v]
        if k not in cache:
            cache[k] = point[v] ** k if k else 1
        return cache[k]

    for (i, j, l), coef in coeffs.items():
        if i < a or j < b or l < c:
            continue
        x = power(0, i - a)
        if x == 0:
            continue
        y = power(1, j - b)
        if y == 0:
            continue
        z = power(2, l - c)
        if z == 0:
            continue
        mult = _falling(i, a) * _falling(j, b) * _falling(l, c)
        total = total + coef * mult * (x * y * z)
    return total


@dataclass(frozen=True)
class LineBundleDeg:
    """The class O(d) in Pic P^2 = ZZ."""

    d: int


@dataclass(frozen=True, eq=False)
class ClosedPoint:
    field: Any
    coords: tuple
    chart: int
    residue_degree: int
    base: Any = QQ

    @property
    def affine(self) -> tuple:
        return tuple(c for i, c in enumerate(self.coords) if i != self.chart)

    @property
    def is_rational(self) -> bool:
        return self.residue_degree == 1

    def __eq__(self, other) -> bool:
        return (isinstance(other, ClosedPoint) and self.field == other.field
                and self.base == other.base and self.coords == other.coords)

    def __hash__(self):
        return hash((self.coords, self.chart))

    def __str__(self) -> str:
        return "[" + ", ".join(repr(c) if isinstance(c, NfElement) else str(c)
                               for c in self.coords) + "]"


def make_point(field, coords: Sequence, base=None) -> ClosedPoint:
    """A closed point of P^2 from homogeneous coordinates in ``field``.

    ``base`` is the ground field of P^2: QQ (default) or ``field`` itself,
    in which case the point is rational over it.
    """
    base = QQ if base is None else base
    if base is not QQ and base != field:
        raise UnsupportedConfiguration("relative extensions are not supported: base must be QQ or the coordinate field")
    if len(coords) != 3:
        raise ValueError("a point of P^2 needs three homogeneous coordinates")
    vals = [field(c) for c in coords]
    chart = next((i for i, c in enumerate(vals) if c != 0), None)
    if chart is None:
        raise AllCoordsZero("all homogeneous coordinates are zero")
    inv = field.one / vals[chart]
    vals = tuple(field.one if i == chart else c * inv for i, c in enumerate(vals))
    if base is QQ:
        alpha = subalgebra_degree([c for i, c in enumerate(vals) if i != chart], field)
    else:
        alpha = 1
    return ClosedPoint(field, vals, chart, alpha, base)


def _check_fields(F: Form, x: ClosedPoint):
    if F.field is not QQ and F.field != x.base:
        raise FieldMismatch("form coefficients must lie in QQ or in the point's base field")


def vanishing_order(F: Form, x: ClosedPoint) -> int:
    """Largest l such that every partial derivative of F of order < l vanishes at x."""
    _check_fields(F, x)
    for l in range(F.degree + 1):
        for a in range(l, -1, -1):
            for b in range(l - a, -1, -1):
                if _eval_partial(F.coeffs, (a, b, l - a - b), x.coords) != 0:
                    return l
    raise AssertionError("a nonzero form has a nonvanishing derivative of order <= degree")


def mult_point(F: Form, x: ClosedPoint) -> int:
    """k-multiplicity: residue degree times vanishing order."""
    return x.residue_degree * vanishing_order(F, x)


def intersection_number(L: LineBundleDeg, C: Form) -> Fraction:
    return Fraction(L.d * C.degree)


# ---------------------------------------------------------------------------
# gcd of forms


def _dehomogenize(F: Form) -> list:
    """F(x0, x1, 1) as a list over x0 of univariate polynomials in x1."""
    deg0 = max(k[0] for k in F.coeffs)
    out = [[] for _ in range(deg0 + 1)]
    for (i, j, _), c in F.coeffs.items():
        row = out[i]
        if len(row) <= j:
            row.extend([0] * (j + 1 - len(row)))
        row[j] = c
    return out


def form_gcd(D: Form, C: Form) -> Form:
    """Greatest common divisor of two forms, normalized (degree 0 means coprime)."""
    field = D.field if D.field is not QQ else C.field
    if D.field is not QQ and C.field is not QQ and D.field != C.field:
        raise FieldMismatch("forms over different fields")
    v = min(D.x2_valuation(), C.x2_valuation())
    g = bgcd(_dehomogenize(D), _dehomogenize(C))
    terms = {}
    for i, row in enumerate(g):
        for j, c in enumerate(row):
            if c != 0:
                terms[(i, j)] = c
    deg = max(i + j for i, j in terms)
    return Form({(i, j, deg - i - j + v): c for (i, j), c in terms.items()}, field)


def common_component(D: Form, C: Form) -> bool:
    return form_gcd(D, C).degree > 0


def bezout_verify(D: Form, C: Form, x: ClosedPoint) -> bool:
    """Check deg D * deg C >= (1/alpha) mult(D) mult(C) for coprime D, C."""
    if common_component(D, C):
        raise CommonComponent("the forms share a component; Bezout's bound does not apply")
    lhs = Fraction(D.degree * C.degree)
    rhs = Fraction(mult_point(D, x) * mult_point(C, x), x.residue_degree)
    return lhs >= rhs
