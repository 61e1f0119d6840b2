"""Fat-point linear systems on P^2.

Forms of degree d are coefficient vectors in the graded-lex monomial basis.
Vanishing to order >= m at a closed point x is a linear condition on that
vector: all Hasse derivatives of order < m of the affine dehomogenization
vanish at x.  Over QQ every such value lies in the residue field k(x) and is
expanded into alpha rational rows.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import DuplicatePoint
from .exactalg import QQ, Matrix, kernel_basis, nth_word_prime, rank, rref_mod_p
from .numfield import subalgebra_basis
from .p2geom import ClosedPoint, Form, monomials

log = logging.getLogger(__name__)


def h0(d: int) -> int:
    """Dimension of the space of degree-d forms."""
    if d < 0:
        raise ValueError("h0 is only defined here for d >= 0")
    return (d + 1) * (d + 2) // 2


def chi_rr(d: int) -> int:
    """Euler characteristic of O(d) on P^2: 1 + d(d+3)/2."""
    return 1 + d * (d + 3) // 2


@dataclass(frozen=True)
class FatPointSpec:
    point: ClosedPoint
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("vanishing order must be >= 1")


@dataclass(frozen=True)
class MultEntry:
    e: int
    m_max: int
    kernel_dim: int


@dataclass(frozen=True)
class MultTable:
    entries: tuple[MultEntry, ...]

    def __post_init__(self):
        prev = 0
        for ent in self.entries:
            if ent.m_max > ent.e:
                raise ValueError(f"m_max({ent.e}) = {ent.m_max} exceeds the degree")
            if ent.m_max < prev:
                raise ValueError("m_max must be nondecreasing in the degree")
            prev = ent.m_max

    def m_max(self, e: int) -> int:
        for ent in self.entries:
            if ent.e == e:
                return ent.m_max
        raise KeyError(e)


def derivative_orders(order: int) -> list[tuple[int, int]]:
    """Affine derivative multi-indices (s, t) of total order ``order``."""
    return [(s, order - s) for s in range(order, -1, -1)]


class _Conditions:
    """Cached condition rows of degree-d forms at one closed point, grouped by order."""

    def __init__(self, d: int, x: ClosedPoint):
        self.d = d
        self.x = x
        self.mons = monomials(d)
        others = [i for i in range(3) if i != x.chart]
        self.others = others
        a, b = (x.coords[i] for i in others)
        field = x.field
        self.expand = x.base is QQ and field is not QQ
        if self.expand:
            _, self.pivots = subalgebra_basis([a, b], field)
        pa = [field.one]
        pb = [field.one]
        for _ in range(d):
            pa.append(pa[-1] * a)
            pb.append(pb[-1] * b)
        self.pa, self.pb = pa, pb
        self._prod: dict = {}
        self._rows: dict[int, list] = {}
        self._modp: dict = {}

    def _power_product(self, i: int, j: int):
        key = (i, j)
        if key not in self._prod:
            v = self.pa[i] * self.pb[j]
            if self.expand:
                self._prod[key] = tuple(v.coeffs[p] for p in self.pivots)
            elif self.x.base is QQ:
                self._prod[key] = (Fraction(v),)
            else:
                self._prod[key] = (v,)
        return self._prod[key]

    def rows(self, order: int) -> list:
        """Condition rows for derivatives of exactly this total order."""
        if order in self._rows:
            return self._rows[order]
        p, q = self.others
        out = []
        for s, t in derivative_orders(order):
            vals = []
            for mon in self.mons:
                i, j = mon[p], mon[q]
                if i < s or j < t:
                    vals.append(None)
                    continue
                c = math.comb(i, s) * math.comb(j, t)
                vals.append((c, self._power_product(i - s, j - t)))
            width = len(self.pivots) if self.expand else 1
            for k in range(width):
                row = [0 if v is None else v[0] * v[1][k] for v in vals]
                if self.x.base is QQ:
                    den = math.lcm(*(Fraction(r).denominator for r in row))
                    row = [int(r * den) for r in row]
                out.append(row)
        self._rows[order] = out
        return out

    def rows_upto(self, m: int) -> list:
        out = []
        for o in range(m):
            out.extend(self.rows(o))
        return out

    def modp(self, m: int, p: int) -> np.ndarray:
        parts = []
        for o in range(m):
            key = (o, p)
            if key not in self._modp:
                rs = self.rows(o)
                self._modp[key] = np.array([[v % p for v in r] for r in rs],
                                           dtype=np.int64).reshape(len(rs), len(self.mons))
            parts.append(self._modp[key])
        return np.vstack(parts)


@lru_cache(maxsize=256)
def _conditions(d: int, x: ClosedPoint) -> _Conditions:
    return _Conditions(d, x)


def _same_closed_point(x: ClosedPoint, y: ClosedPoint) -> bool:
    """Equal closed points have equal ideals, generated in degree <= residue degree."""
    if x.field != y.field or x.base != y.base:
        return False
    if x.coords == y.coords:
        return True
    if x.residue_degree != y.residue_degree:
        return False
    e = x.residue_degree
    field = QQ if x.base is QQ else x.field
    mx = Matrix.from_rows(_conditions(e, x).rows(0), field, cols=len(monomials(e)))
    my = Matrix.from_rows(_conditions(e, y).rows(0), field, cols=len(monomials(e)))
    return rank(mx) == rank(mx.stack(my)) == rank(my)


def conditions_matrix(d: int, specs: Sequence[FatPointSpec]) -> Matrix:
    """Matrix whose kernel is the space of degree-d forms vanishing to order >= m_i at x_i."""
    specs = list(specs)
    for i in range(len(specs)):
        for j in range(i):
            if _same_closed_point(specs[i].point, specs[j].point):
                raise DuplicatePoint(f"points {i} and {j} are the same closed point")
    bases = {s.point.base for s in specs}
    if len(bases) > 1:
        raise ValueError("all points must share one base field")
    field = QQ if not specs or specs[0].point.base is QQ else specs[0].point.base
    rows = []
    for s in specs:
        rows.extend(_conditions(d, s.point).rows_upto(s.order))
    return Matrix.from_rows(rows, field, cols=len(monomials(d)))


@dataclass
class MaxMultResult:
    e: int
    m_max: int
    kernel_dim: int
    witness: Form | None
    certified_by: dict = dc_field(default_factory=dict)

    @property
    def entry(self) -> MultEntry:
        return MultEntry(self.e, self.m_max, self.kernel_dim)


def _full_rank_mod_p(cond: _Conditions, m: int, primes: Sequence[int]) -> int | None:
    ncols = len(cond.mons)
    rows = cond.x.residue_degree * m * (m + 1) // 2 if cond.expand or cond.x.base is QQ else m * (m + 1) // 2
    if rows < ncols:
        return None
    for p in primes:
        piv, _ = rref_mod_p(cond.modp(m, p), p, reduced=False)
        if len(piv) == ncols:
            return p
    return None


def max_mult_detail(d: int, x: ClosedPoint, primes: Sequence[int] | None = None) -> MaxMultResult:
    """Largest m in [1, d] with a nonzero degree-d form of order >= m at x.

    Emptiness of the kernel at m_max + 1 is certified (full rank mod p over QQ,
    exact rank over a number field); the witness is the canonical first
    kernel vector at m_max, computed exactly.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    cond = _conditions(d, x)
    ncols = len(cond.mons)
    base = x.base
    primes = list(primes) if primes else [nth_word_prime(0), nth_word_prime(1)]
    certified: dict = {}
    m_hi = d
    for m in range(1, d + 1):
        if base is QQ:
            p = _full_rank_mod_p(cond, m, primes)
            if p is not None:
                certified = {"m": m, "prime": p}
                m_hi = m - 1
                break
        else:
            M = Matrix.from_rows(cond.rows_upto(m), base, cols=ncols)
            if rank(M) == ncols:
                certified = {"m": m, "exact": True}
                m_hi = m - 1
                break
    field = QQ if base is QQ else base
    for m in range(m_hi, 0, -1):
        M = Matrix.from_rows(cond.rows_upto(m), field, cols=ncols)
        ker = kernel_basis(M)
        if ker:
            return MaxMultResult(d, m, len(ker), Form.from_vector(d, ker[0], field), certified)
        # a prime failed to see a rank drop that exists over QQ; step down
        certified = {"m": m, "exact": True}
    return MaxMultResult(d, 0, 0, None, certified)


def max_mult(d: int, x: ClosedPoint) -> tuple[int, Form | None]:
    r = max_mult_detail(d, x)
    return r.m_max, r.witness


def worker_count() -> int:
    env = os.environ.get("SESH_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring malformed SESH_THREADS=%r", env)
    return os.cpu_count() or 1


def mult_table(x: ClosedPoint, emax: int, threads: int | None = None) -> tuple[MultTable, dict[int, MaxMultResult]]:
    """Max-multiplicity table for degrees 1..emax (order-independent aggregation)."""
    threads = threads or worker_count()
    degrees = list(range(1, emax + 1))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda e: max_mult_detail(e, x), degrees))
    else:
        results = []
        for e in degrees:
            results.append(max_mult_detail(e, x))
            log.debug("e=%d m_max=%d kernel_dim=%d", e, results[-1].m_max, results[-1].kernel_dim)
    by_e = {r.e: r for r in results}
    return MultTable(tuple(by_e[e].entry for e in degrees)), by_e
