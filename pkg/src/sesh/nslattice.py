"""Numerical surface model: a Neron-Severi lattice with its intersection form.

Seshadri suprema here are computed from user-supplied curve classes, so the
answer is exact only when the caller vouches for the list being complete;
otherwise it is an upper bound.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import (DimensionMismatch, InconsistentCurveData, InputError, NoCurveThroughPoint,
                     NotNef, ShapeMismatch)


def _int_vector(v, name="vector") -> tuple[int, ...]:
    out = []
    for x in v:
        if isinstance(x, bool) or int(x) != x:
            raise InputError(f"{name} must have integer entries, got {x!r}")
        out.append(int(x))
    return tuple(out)


@dataclass(frozen=True)
class LatticeSurface:
    gram: tuple[tuple[int, ...], ...]
    canonical: tuple[int, ...]
    chi_O: int

    def __post_init__(self):
        gram = tuple(_int_vector(r, "gram row") for r in self.gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", _int_vector(self.canonical, "canonical class"))
        n = len(gram)
        if n == 0 or any(len(r) != n for r in gram):
            raise ShapeMismatch("gram matrix must be square and nonempty")
        if any(gram[i][j] != gram[j][i] for i in range(n) for j in range(n)):
            raise ShapeMismatch("gram matrix must be symmetric")
        if len(self.canonical) != n:
            raise DimensionMismatch("canonical class has the wrong length")
        pos, neg = self.signature()
        if pos != 1 or neg != n - 1:
            warnings.warn(f"intersection form has signature ({pos}, {neg}), "
                          f"not the Hodge-index signature (1, {n - 1})", stacklevel=2)

    @property
    def rank(self) -> int:
        return len(self.gram)

    def signature(self) -> tuple[int, int]:
        ev = np.linalg.eigvalsh(np.array(self.gram, dtype=float))
        tol = 1e-9 * max(1.0, float(np.abs(ev).max()))
        return int((ev > tol).sum()), int((ev < -tol).sum())


@dataclass(frozen=True)
class BlowupLattice:
    """Blow-up of ``base`` at closed points of residue degrees ``alphas``.

    Coordinates: the pulled-back base classes first, then E_1..E_t.
    """

    base: LatticeSurface
    alphas: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "alphas", _int_vector(self.alphas, "residue degrees"))
        if any(a < 1 for a in self.alphas):
            raise InputError("residue degrees must be >= 1")

    @property
    def rank(self) -> int:
        return self.base.rank + len(self.alphas)

    @property
    def gram(self) -> tuple[tuple[int, ...], ...]:
        r, t = self.base.rank, len(self.alphas)
        rows = [list(row) + [0] * t for row in self.base.gram]
        for i, a in enumerate(self.alphas):
            row = [0] * (r + t)
            row[r + i] = -a
            rows.append(row)
        return tuple(tuple(row) for row in rows)

    def pullback(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.base.rank:
            raise DimensionMismatch("class length differs from the base rank")
        return tuple(v) + (0,) * len(self.alphas)

    def exceptional(self, i: int) -> tuple[int, ...]:
        v = [0] * self.rank
        v[self.base.rank + i] = 1
        return tuple(v)

    def class_minus(self, L: Sequence[int], lam, points: Sequence[int]) -> tuple:
        """pi^*L - lam * sum_{i in points} E_i."""
        v = list(self.pullback(L))
        for i in points:
            v[self.base.rank + i] -= lam
        return tuple(v)


def pairing(u: Sequence, v: Sequence, lattice) -> Fraction | int:
    n = lattice.rank
    if len(u) != n or len(v) != n:
        raise DimensionMismatch(f"vectors of length {len(u)} and {len(v)} on a rank-{n} lattice")
    g = lattice.gram
    return sum(u[i] * g[i][j] * v[j] for i in range(n) for j in range(n) if g[i][j] and u[i] and v[j])


@dataclass(frozen=True)
class CurveClass:
    base_class: tuple[int, ...]
    mults: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "base_class", _int_vector(self.base_class, "curve class"))
        object.__setattr__(self, "mults", _int_vector(self.mults, "multiplicities"))
        if any(l < 0 for l in self.mults):
            raise InconsistentCurveData("vanishing orders must be nonnegative")

    def strict_transform(self, B: BlowupLattice) -> tuple[int, ...]:
        if len(self.mults) != len(B.alphas):
            raise DimensionMismatch("one multiplicity per blown-up point is required")
        v = list(B.pullback(self.base_class))
        for i, l in enumerate(self.mults):
            v[B.base.rank + i] = -l
        v = tuple(v)
        for i, (l, a) in enumerate(zip(self.mults, B.alphas)):
            if pairing(B.exceptional(i), v, B) != l * a:
                raise AssertionError("E_i . strict transform differs from l_i * alpha_i")
        return v

    def k_mult(self, B: BlowupLattice, points: Sequence[int]) -> int:
        return sum(self.mults[i] * B.alphas[i] for i in points)


def chi_rr_lattice(D: Sequence[int], S: LatticeSurface) -> Fraction:
    """chi(O_X) + D.(D - K)/2."""
    diff = [d - k for d, k in zip(D, S.canonical)]
    return S.chi_O + Fraction(pairing(D, diff, S), 2)


def is_nef_against(cls: Sequence, curves: Sequence[CurveClass], B: BlowupLattice) -> bool:
    """Nonnegative against every listed strict transform and every E_i."""
    if any(pairing(cls, c.strict_transform(B), B) < 0 for c in curves):
        return False
    return all(pairing(cls, B.exceptional(i), B) >= 0 for i in range(len(B.alphas)))


@dataclass(frozen=True)
class SupResult:
    value: Fraction
    status: str  # "exact" or "upper-bound"
    sq_cap: Fraction
    capped: bool
    argmin: int

    def describe(self) -> str:
        word = "=" if self.status == "exact" else "<="
        out = f"epsilon {word} {self.value}"
        if self.capped:
            out += f", epsilon^2 <= {self.sq_cap}"
        return out


def _points(points) -> list[int]:
    return [points] if isinstance(points, int) else list(points)


def seshadri_sup(L: Sequence[int], points, curves: Sequence[CurveClass], complete: bool,
                 B: BlowupLattice) -> SupResult:
    """Supremum of lam with pi^*L - lam*sum E_i nonnegative on the listed curves."""
    pts = _points(points)
    if not pts or any(not 0 <= i < len(B.alphas) for i in pts):
        raise InputError("point indices out of range")
    L = tuple(L)
    best = None
    for idx, c in enumerate(curves):
        LC = pairing(B.pullback(L), c.strict_transform(B), B)
        if LC < 0:
            raise NotNef(f"L . C = {LC} < 0 for listed curve {idx}")
        den = c.k_mult(B, pts)
        if den == 0:
            continue
        ratio = Fraction(LC, den)
        if best is None or ratio < best[0]:
            best = (ratio, idx)
    if best is None:
        raise NoCurveThroughPoint("no listed curve passes through the chosen point(s)")
    L2 = pairing(L, L, B.base)
    cap = Fraction(L2, sum(B.alphas[i] for i in pts))
    capped = best[0] * best[0] > cap
    if capped and complete:
        raise InconsistentCurveData(
            f"the list is declared complete but its minimum ratio {best[0]} has square above "
            f"L^2/alpha = {cap}; some curve is missing")
    return SupResult(best[0], "exact" if complete else "upper-bound", cap, capped, best[1])


@dataclass(frozen=True)
class LatticeSetup:
    B: BlowupLattice
    points: tuple[int, ...]
    curves: tuple[CurveClass, ...]
    complete: bool = False

    def sup(self, L) -> SupResult:
        return seshadri_sup(L, self.points, self.curves, self.complete, self.B)


def scaling_check(L: Sequence[int], n: int, setup: LatticeSetup) -> bool:
    """sup(n^2 L) = n^2 sup(L) and sup(n L) = n sup(L), exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    base = setup.sup(L).value
    quad = setup.sup([n * n * x for x in L]).value
    lin = setup.sup([n * x for x in L]).value
    return quad == n * n * base and lin == n * base


@dataclass(frozen=True)
class CoverReport:
    eps_y_multi: SupResult
    eps_z: SupResult
    eps_y_single: SupResult
    equality: bool
    single_point_inequality: bool

    @property
    def flag(self) -> str:
        return "consistent" if self.equality and self.single_point_inequality else "list incomplete"

    def describe(self) -> str:
        return (f"eps_Y(all fiber points) = {self.eps_y_multi.value}, eps_Z = {self.eps_z.value}, "
                f"eps_Y(y_1) = {self.eps_y_single.value}; equality {self.equality}, "
                f"single-point inequality {self.single_point_inequality}: {self.flag}")


def apply_matrix(phi: Sequence[Sequence[int]], v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in phi)


def cover_check(phi: Sequence[Sequence[int]], fiber_alphas: Sequence[int], L: Sequence[int],
                z_curves: Sequence[CurveClass], y_curves: Sequence[CurveClass],
                Z: LatticeSurface, Y: LatticeSurface, z_alpha: int = 1) -> CoverReport:
    """Compare eps on a cover Y at a whole fiber with eps on Z at its image z.

    ``phi`` maps Pic Z to Pic Y (rank_Y rows, rank_Z columns).  Curve lists
    are supplied by the caller; a mismatch means a list is incomplete.
    """
    if len(phi) != Y.rank or any(len(row) != Z.rank for row in phi):
        raise ShapeMismatch(f"pullback matrix must be {Y.rank} x {Z.rank}")
    if len(L) != Z.rank:
        raise ShapeMismatch("L must be a class on Z")
    BZ = BlowupLattice(Z, (z_alpha,))
    BY = BlowupLattice(Y, tuple(fiber_alphas))
    gL = apply_matrix(phi, L)
    eps_z = seshadri_sup(L, [0], z_curves, False, BZ)
    multi = seshadri_sup(gL, list(range(len(fiber_alphas))), y_curves, False, BY)
    single = seshadri_sup(gL, [0], y_curves, False, BY)
    return CoverReport(multi, eps_z, single, multi.value == eps_z.value, single.value >= eps_z.value)


# ---------------------------------------------------------------------------
# lattice files


@dataclass(frozen=True)
class LatticeFile:
    surface: LatticeSurface
    points: tuple[int, ...]
    curves: tuple[CurveClass, ...]

    @property
    def blowup(self) -> BlowupLattice:
        return BlowupLattice(self.surface, self.points)


def lattice_from_dict(data: dict) -> LatticeFile:
    try:
        S = LatticeSurface(tuple(tuple(r) for r in data["gram"]), tuple(data["canonical"]),
                           int(data["chi"]))
        points = tuple(data.get("points", []))
        curves = tuple(CurveClass(tuple(c["class"]), tuple(c["mults"])) for c in data.get("curves", []))
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed lattice description: {exc}") from exc
    for c in curves:
        if len(c.base_class) != S.rank or len(c.mults) != len(points):
            raise DimensionMismatch("curve entry does not match the lattice rank or point count")
    return LatticeFile(S, points, curves)


def load_lattice(path: str | Path) -> LatticeFile:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read lattice file {path}: {exc}") from exc
    return lattice_from_dict(data)


P2 = LatticeSurface(((1,),), (-3,), 1)
PRINCIPAL_ABELIAN = LatticeSurface(((2,),), (0,), 0)
