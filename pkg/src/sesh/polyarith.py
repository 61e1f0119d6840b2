"""Univariate and bivariate polynomial arithmetic over an exact field.

Univariate polynomials are lists (constant term first).  Bivariate ones are
lists in the main variable whose entries are univariate polynomials in the
second variable, i.e. elements of R[x] with R = F[y]; their gcd uses the
subresultant remainder sequence over R.
"""

from __future__ import annotations

from fractions import Fraction


def utrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def uadd(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)]
    return utrim(out)


def usub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return utrim(out)


def umul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x != 0:
            for j, y in enumerate(b):
                if y != 0:
                    out[i + j] = out[i + j] + x * y
    return utrim(out)


def udivmod(a, b):
    a = utrim(list(a))
    b = utrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [0] * max(len(a) - len(b) + 1, 0)
    inv = Fraction(1) / b[-1]
    while len(a) >= len(b):
        c = a[-1] * inv
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = a[s + i] - c * y
        a.pop()
        utrim(a)
    return utrim(q), a


def uexact_div(a, b):
    q, r = udivmod(a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def umonic(a):
    if not a:
        return a
    inv = Fraction(1) / a[-1]
    return [x * inv for x in a]


def ugcd(a, b):
    a, b = utrim(list(a)), utrim(list(b))
    while b:
        a, b = b, udivmod(a, b)[1]
    return umonic(a)


def upow(a, e: int):
    out = [1]
    for _ in range(e):
        out = umul(out, a)
    return out


# ---------------------------------------------------------------------------
# bivariate: list over x of univariate polys in y


def btrim(A: list) -> list:
    while A and not A[-1]:
        A.pop()
    return A


def bdeg(A) -> int:
    return len(A) - 1


def bcontent(A):
    g: list = []
    for c in A:
        g = ugcd(g, c)
        if len(g) == 1:
            break
    return g


def bscale_div(A, c):
    return [uexact_div(x, c) if x else [] for x in A]


def bprem(A, B):
    """Pseudo-remainder of A by B in R[x]."""
    A = [list(c) for c in A]
    lb = B[-1]
    db = bdeg(B)
    e = bdeg(A) - db + 1
    while A and bdeg(A) >= db:
        la = A[-1]
        s = bdeg(A) - db
        A = [umul(c, lb) for c in A]
        for i, y in enumerate(B):
            A[s + i] = usub(A[s + i], umul(la, y))
        A.pop()
        btrim(A)
        e -= 1
    if e > 0:
        f = upow(lb, e)
        A = [umul(c, f) for c in A]
    return btrim(A)


def bgcd(A, B):
    """Gcd in F[y][x] via the subresultant PRS (result defined up to a unit)."""
    A = btrim([utrim(list(c)) for c in A])
    B = btrim([utrim(list(c)) for c in B])
    if not A:
        return B
    if not B:
        return A
    if bdeg(A) < bdeg(B):
        A, B = B, A
    if bdeg(B) == 0:
        return [ugcd(bcontent(A), B[0])]
    d = ugcd(bcontent(A), bcontent(B))
    A = bscale_div(A, bcontent(A))
    B = bscale_div(B, bcontent(B))
    g: list = [1]
    h: list = [1]
    while True:
        delta = bdeg(A) - bdeg(B)
        R = bprem(A, B)
        if not R:
            break
        if bdeg(R) == 0:
            B = [[1]]
            break
        divisor = umul(g, upow(h, delta))
        A, B = B, bscale_div(R, divisor)
        g = A[-1]
        if delta == 1:
            h = g
        elif delta > 1:
            h = uexact_div(upow(g, delta), upow(h, delta - 1))
    B = bscale_div(B, bcontent(B))
    return [umul(d, c) for c in B]
