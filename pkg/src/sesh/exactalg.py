"""Exact fields and dense linear algebra (rank, right kernel).

Matrices over QQ are handled by fraction-free Gauss-Jordan elimination on
row-scaled integer copies.  Large QQ matrices go through a multi-prime
modular route whose output is only ever reported after an exact integer
check ``M v = 0``; the check also pins down the reduced echelon shape, so
both routes return bit-identical bases.  Matrices over a number field use
ordinary Gauss-Jordan with field division.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Iterator, Sequence

import numpy as np

Rational = Fraction


class RationalField:
    """The field QQ.  Elements are ``Fraction`` (plain ``int`` is accepted)."""

    degree = 1
    name = "QQ"
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x: Any) -> Fraction:
        return x if isinstance(x, Fraction) else Fraction(x)

    def coords(self, a) -> tuple[Fraction, ...]:
        return (Fraction(a),)

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def __repr__(self) -> str:
        return "QQ"

    def __reduce__(self):
        return "QQ"


QQ = RationalField()


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple
    field: Any = QQ

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"entries length {len(self.entries)} != {self.rows}x{self.cols}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], field=QQ, cols: int | None = None) -> "Matrix":
        rows = [tuple(r) for r in rows]
        if cols is None:
            if not rows:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(rows[0])
        if any(len(r) != cols for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), cols, tuple(x for r in rows for x in r), field)

    @classmethod
    def zeros(cls, rows: int, cols: int, field=QQ) -> "Matrix":
        return cls(rows, cols, (field.zero,) * (rows * cols), field)

    @classmethod
    def identity(cls, n: int, field=QQ) -> "Matrix":
        return cls.from_rows(
            [[field.one if i == j else field.zero for j in range(n)] for i in range(n)],
            field, cols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def as_rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.rows)]

    def apply(self, v: Sequence) -> list:
        """Return ``M v`` computed exactly."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        out = []
        for i in range(self.rows):
            acc = self.field.zero
            for a, b in zip(self.row(i), v):
                if a != 0 and b != 0:
                    acc = acc + a * b
            out.append(acc)
        return out

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols:
            raise ValueError("column counts differ")
        return Matrix(self.rows + other.rows, self.cols,
                      self.entries + other.entries, self.field)


# ---------------------------------------------------------------------------
# QQ helpers

def integer_rows(M: Matrix) -> list[list[int]]:
    """Scale each row of a QQ matrix by the lcm of its denominators."""
    out = []
    for r in M.as_rows():
        den = 1
        for x in r:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = den * x.denominator // math.gcd(den, x.denominator)
        if den == 1:
            out.append([int(x) for x in r])
        else:
            out.append([int(x * den) for x in r])
    return out


def normalize_qq(v: Sequence) -> tuple[Fraction, ...]:
    """Clear denominators, divide by content, make first nonzero entry positive."""
    den = 1
    for x in v:
        x = Fraction(x)
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for a in ints:
        g = math.gcd(g, a)
    if g == 0:
        return tuple(Fraction(0) for _ in ints)
    lead = next(a for a in ints if a)
    if lead < 0:
        g = -g
    return tuple(Fraction(a // g) for a in ints)


def normalize_monic(v: Sequence, field) -> tuple:
    lead = next((x for x in v if x != 0), None)
    if lead is None:
        return tuple(v)
    inv = field.one / lead
    return tuple(x * inv for x in v)


def _ff_gauss_jordan(rows: list[list[int]], ncols: int) -> tuple[list[int], list[list[int]], int]:
    """Fraction-free Gauss-Jordan elimination over ZZ.

    Returns (pivot columns, pivot rows, common pivot value).  Every division
    by the previous pivot is exact (Sylvester's identity); each pivot row has
    the common pivot value at its own pivot column and 0 at the others.
    """
    A = [list(r) for r in rows if any(r)]
    n = len(A)
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        pr = A[r]
        p = pr[c]
        for i in range(n):
            if i == r:
                continue
            row = A[i]
            a = row[c]
            if a:
                for j in range(ncols):
                    row[j] = (p * row[j] - a * pr[j]) // prev
            elif p != prev:
                for j in range(ncols):
                    if row[j]:
                        row[j] = p * row[j] // prev
        prev = p
        pivots.append(c)
        r += 1
    return pivots, A[:r], prev


def _gauss_jordan_field(rows: list[list], ncols: int, field) -> tuple[list[int], list[list]]:
    """Plain Gauss-Jordan to reduced row echelon form over an exact field."""
    A = [list(r) for r in rows]
    n = len(A)
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == n:
            break
        piv = next((i for i in range(r, n) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = field.one / A[r][c]
        pr = [x * inv if x != 0 else x for x in A[r]]
        A[r] = pr
        for i in range(n):
            if i != r and A[i][c] != 0:
                a = A[i][c]
                A[i] = [x - a * y if y != 0 else x for x, y in zip(A[i], pr)]
        pivots.append(c)
        r += 1
    return pivots, A[:r]


def _kernel_from_rref(pivots, R, ncols, diag, zero):
    """Kernel basis of a reduced echelon form whose pivots all equal ``diag``."""
    piv_set = set(pivots)
    basis = []
    for f in range(ncols):
        if f in piv_set:
            continue
        v = [zero] * ncols
        v[f] = diag
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            x = R[i][f]
            if x != 0:
                v[pc] = -x
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# modular machinery

def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def word_primes(start: int = 2**31 - 1) -> Iterator[int]:
    """Primes below 2**31 in descending order (products fit in int64)."""
    n = start
    while n > 2:
        if _is_prime(n):
            yield n
        n -= 2 if n % 2 else 1


_PRIMES = []


def nth_word_prime(i: int) -> int:
    if not _PRIMES:
        _PRIMES.extend(p for p, _ in zip(word_primes(), range(64)))
    while i >= len(_PRIMES):
        _PRIMES.extend(p for p, _ in zip(word_primes(_PRIMES[-1] - 2), range(64)))
    return _PRIMES[i]


def rref_mod_p(A: np.ndarray, p: int, reduced: bool = True) -> tuple[list[int], np.ndarray]:
    """Row echelon form over GF(p) of an int64 array with entries in [0, p)."""
    A = A.copy()
    n, ncols = A.shape
    r = 0
    pivots: list[int] = []
    for c in range(ncols):
        if r == n:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r, c:] = (A[r, c:] * inv) % p
        if reduced:
            col = A[:, c].copy()
            col[r] = 0
            idx = np.flatnonzero(col)
        else:
            idx = r + 1 + np.flatnonzero(A[r + 1:, c])
        if idx.size:
            A[idx, c:] = (A[idx, c:] - np.outer(A[idx, c], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return pivots, A[:r]


def _reduce_rows(rows: list[list[int]], p: int) -> np.ndarray:
    return np.array([[x % p for x in r] for r in rows], dtype=np.int64).reshape(len(rows), -1)


def rank_mod_p(M: Matrix, p: int | None = None) -> int:
    """Rank of a QQ matrix reduced modulo a prime; a lower bound on the true rank."""
    if M.rows == 0 or M.cols == 0:
        return 0
    p = p or nth_word_prime(0)
    rows = integer_rows(M)
    pivots, _ = rref_mod_p(_reduce_rows(rows, p), p, reduced=False)
    return len(pivots)


def rational_reconstruct(a: int, N: int) -> Fraction | None:
    """Find r/s = a mod N with |r|, s <= sqrt(N/2), or None."""
    a %= N
    bound = math.isqrt(N // 2)
    r0, r1 = N, a
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    if math.gcd(r1, s1) != 1:
        return None
    return Fraction(r1, s1)


def _prefix_dominates(a: list[int], b: list[int]) -> bool:
    """True if pivot list ``a`` has prefix ranks >= those of ``b`` everywhere."""
    ia = ib = 0
    last = max(a[-1] if a else -1, b[-1] if b else -1)
    for c in range(last + 1):
        while ia < len(a) and a[ia] <= c:
            ia += 1
        while ib < len(b) and b[ib] <= c:
            ib += 1
        if ia < ib:
            return False
    return True


def modular_kernel(rows: list[list[int]], ncols: int, max_primes: int = 600) -> list[tuple[Fraction, ...]] | None:
    """Normalized kernel basis of an integer matrix via CRT, or None if the budget ran out.

    Each reconstructed vector is checked by exact integer multiplication; a
    verified basis whose size equals ``ncols - rank mod p`` is the QQ kernel.
    """
    rows = [r for r in rows if any(r)]
    if not rows:
        return [tuple(Fraction(int(i == j)) for j in range(ncols)) for i in range(ncols)]
    pivots: list[int] | None = None
    frees: list[int] = []
    residues: list[list[int]] = []
    modulus = 1
    previous = None
    for k in range(max_primes):
        p = nth_word_prime(k)
        piv, R = rref_mod_p(_reduce_rows(rows, p), p)
        if pivots is None or (piv != pivots and _prefix_dominates(piv, pivots)):
            pivots = piv
            piv_set = set(piv)
            frees = [f for f in range(ncols) if f not in piv_set]
            residues = [[0] * len(piv) for _ in frees]
            modulus = 1
            previous = None
        elif piv != pivots:
            continue
        if not frees:
            return []
        # kernel vector for free column f: -R[i, f] at pivot i (only pivots < f matter)
        Rf = R[:, frees]
        inv_mod = pow(modulus, -1, p)
        for t in range(len(frees)):
            col = Rf[:, t]
            res = residues[t]
            for i in range(len(pivots)):
                x = (-int(col[i])) % p
                y = res[i]
                res[i] = y + modulus * (((x - y) * inv_mod) % p)
        modulus *= p
        candidate = _reconstruct(residues, modulus, pivots, frees, ncols)
        if candidate is None:
            previous = None
            continue
        if candidate != previous:
            previous = candidate
            continue
        if _verify_integer_kernel(rows, candidate):
            return candidate
        previous = None
    return None


def _reconstruct(residues, modulus, pivots, frees, ncols):
    out = []
    for t, f in enumerate(frees):
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            if pc > f:
                break
            q = rational_reconstruct(residues[t][i], modulus)
            if q is None:
                return None
            v[pc] = q
        out.append(normalize_qq(v))
    return out


def _verify_integer_kernel(rows: list[list[int]], basis: list[tuple[Fraction, ...]]) -> bool:
    for v in basis:
        iv = [int(x) for x in v]
        support = [j for j, x in enumerate(iv) if x]
        for r in rows:
            if sum(r[j] * iv[j] for j in support):
                return False
    return True


# ---------------------------------------------------------------------------
# public API

MODULAR_THRESHOLD = 2500  # rows * cols above which QQ kernels go modular first


def kernel_basis(M: Matrix) -> list[tuple]:
    """Basis of the right null space of ``M``.

    The basis is the reduced column-echelon one: one vector per non-pivot
    column, ordered by that column.  Over QQ vectors are content-normalized
    integers with positive leading entry; over a number field the leading
    entry is 1.
    """
    if M.field is QQ:
        if M.rows == 0:
            return [tuple(Fraction(int(i == j)) for j in range(M.cols)) for i in range(M.cols)]
        rows = integer_rows(M)
        if M.rows * M.cols > MODULAR_THRESHOLD:
            basis = modular_kernel(rows, M.cols)
            if basis is not None:
                return basis
        pivots, R, diag = _ff_gauss_jordan(rows, M.cols)
        return [normalize_qq(v) for v in _kernel_from_rref(pivots, R, M.cols, diag, 0)]
    field = M.field
    pivots, R = _gauss_jordan_field(M.as_rows(), M.cols, field)
    basis = _kernel_from_rref(pivots, R, M.cols, field.one, field.zero)
    return [normalize_monic(v, field) for v in basis]


def rank(M: Matrix) -> int:
    """Exact rank of ``M`` over its field."""
    if M.rows == 0 or M.cols == 0:
        return 0
    if M.field is QQ:
        if M.rows * M.cols > MODULAR_THRESHOLD:
            return M.cols - len(kernel_basis(M))
        pivots, _, _ = _ff_gauss_jordan(integer_rows(M), M.cols)
        return len(pivots)
    pivots, _ = _gauss_jordan_field(M.as_rows(), M.cols, M.field)
    return len(pivots)


def kernel_is_empty_certified(M: Matrix, primes: Iterable[int] = ()) -> bool:
    """True when some prime certifies full column rank (so the QQ kernel is empty).

    False means "not certified", not "nonempty".
    """
    if M.field is not QQ:
        return rank(M) == M.cols
    if M.rows < M.cols:
        return False
    for p in list(primes) or [nth_word_prime(0), nth_word_prime(1)]:
        if rank_mod_p(M, p) == M.cols:
            return True
    return False
