"""Number fields QQ[t]/(f) with certified irreducible minimal polynomial.

Irreducibility is certified by factor-degree patterns modulo primes of good
reduction: a degree-n polynomial whose possible factor degrees (subset sums
of the pattern mod p) intersect to {0, n} across primes cannot factor over QQ.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import FieldMismatch, IrreducibilityUnverified, NotSquarefree, Reducible
from .exactalg import QQ
from .parsing import parse_univariate

# ---------------------------------------------------------------------------
# univariate polynomials over QQ (lists, constant term first)


def _trim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def qpoly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b):
        c = a[-1] / lb
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        a.pop()
        _trim(a)
    return _trim(q), a


def qpoly_gcd(a: Sequence, b: Sequence) -> list:
    a = _trim([Fraction(x) for x in a])
    b = _trim([Fraction(x) for x in b])
    while b:
        a, b = b, qpoly_divmod(a, b)[1]
    if not a:
        return a
    return [x / a[-1] for x in a]


def qpoly_derivative(a: Sequence) -> list:
    return [i * Fraction(a[i]) for i in range(1, len(a))]


# ---------------------------------------------------------------------------
# polynomials over GF(p)


def _ptrim(a: list) -> list:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: list, b: list, p: int) -> list:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    while len(a) - 1 >= db and a:
        c = a[-1] * inv % p
        s = len(a) - 1 - db
        if c:
            for i in range(db + 1):
                a[s + i] = (a[s + i] - c * b[i]) % p
        a.pop()
        _ptrim(a)
    return a


def _pdiv(a: list, b: list, p: int) -> list:
    a = list(a)
    inv = pow(b[-1], -1, p)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    while len(a) - 1 >= db:
        c = a[-1] * inv % p
        s = len(a) - 1 - db
        q[s] = c
        for i in range(db + 1):
            a[s + i] = (a[s + i] - c * b[i]) % p
        a.pop()
    return _ptrim(q)


def _pgcd(a: list, b: list, p: int) -> list:
    a, b = _ptrim(list(a)), _ptrim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [x * inv % p for x in a]
    return a


def _pmulmod(a: list, b: list, f: list, p: int) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _pmod(_ptrim(out), f, p)


def _ppowmod(a: list, e: int, f: list, p: int) -> list:
    result = [1]
    base = _pmod(a, f, p)
    while e:
        if e & 1:
            result = _pmulmod(result, base, f, p)
        base = _pmulmod(base, base, f, p)
        e >>= 1
    return result


def degree_pattern_mod_p(f: Sequence[int], p: int) -> list[int]:
    """Degrees of the irreducible factors of a monic squarefree f over GF(p).

    Distinct-degree factorization; no equal-degree splitting is needed since
    only the multiset of degrees matters.
    """
    f = _ptrim([x % p for x in f])
    pattern: list[int] = []
    h = [0, 1]
    i = 0
    while len(f) - 1 >= 2 * (i + 1):
        i += 1
        h = _ppowmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _pgcd(f, _ptrim(diff), p)
        if len(g) > 1:
            pattern += [i] * ((len(g) - 1) // i)
            f = _pdiv(f, g, p)
            h = _pmod(h, f, p)
    if len(f) > 1:
        pattern.append(len(f) - 1)
    return sorted(pattern)


def subset_sums(parts: Iterable[int]) -> set[int]:
    sums = {0}
    for d in parts:
        sums |= {s + d for s in sums}
    return sums


def _small_primes(limit: int) -> list[int]:
    sieve = bytearray([1]) * limit
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(limit - 1) + 1):
        if sieve[i]:
            sieve[i * i::i] = bytearray(len(sieve[i * i::i]))
    return [i for i in range(limit) if sieve[i]]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for i in range(1, math.isqrt(n) + 1):
        if n % i == 0:
            out.update((i, n // i))
    return sorted(out)


def _rational_root(coeffs: Sequence[Fraction]) -> Fraction | None:
    den = math.lcm(*(Fraction(c).denominator for c in coeffs))
    ints = [int(Fraction(c) * den) for c in coeffs]
    while ints and ints[0] == 0:
        return Fraction(0)
    if abs(ints[0]) > 10**8 or abs(ints[-1]) > 10**8:
        return None
    for q in _divisors(ints[-1]):
        for p in _divisors(ints[0]):
            for s in (1, -1):
                r = Fraction(s * p, q)
                if sum(c * r**i for i, c in enumerate(ints)) == 0:
                    return r
    return None


DEFAULT_PRIME_BUDGET = 25
DEFAULT_PRIME_LIMIT = 1000


def certify_irreducible(coeffs: Sequence[Fraction], prime_budget: int = DEFAULT_PRIME_BUDGET,
                        prime_limit: int = DEFAULT_PRIME_LIMIT) -> list[tuple[int, list[int]]]:
    """Return the (prime, pattern) evidence certifying irreducibility, or raise."""
    n = len(coeffs) - 1
    if n == 1:
        return []
    possible = set(range(n + 1))
    evidence = []
    den = math.lcm(*(c.denominator for c in coeffs))
    for p in _small_primes(prime_limit):
        if len(evidence) >= prime_budget:
            break
        if den % p == 0:
            continue
        fp = [c.numerator * pow(c.denominator, -1, p) % p for c in coeffs]
        dfp = _ptrim([i * fp[i] % p for i in range(1, n + 1)])
        if len(_pgcd(fp, dfp, p)) != 1:
            continue
        pattern = degree_pattern_mod_p(fp, p)
        evidence.append((p, pattern))
        possible &= subset_sums(pattern)
        if possible == {0, n}:
            return evidence
    root = _rational_root(coeffs)
    if root is not None:
        raise Reducible(f"minimal polynomial is reducible over QQ: it has the rational root {root}")
    shown = ", ".join(f"mod {p}: {pat}" for p, pat in evidence[:4])
    raise IrreducibilityUnverified(
        f"irreducibility not certified with {len(evidence)} primes; factor degrees "
        f"{sorted(possible - {0, n})} remain possible ({shown})")


class NumberField:
    """QQ[t]/(f) for a monic, squarefree, certified-irreducible f."""

    def __init__(self, min_poly: Sequence | str, *, prime_budget: int = DEFAULT_PRIME_BUDGET,
                 prime_limit: int = DEFAULT_PRIME_LIMIT, name: str = "th"):
        if isinstance(min_poly, str):
            min_poly = parse_univariate(min_poly)
        coeffs = _trim([Fraction(c) for c in min_poly])
        if len(coeffs) < 2:
            raise ValueError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise ValueError("minimal polynomial must be monic")
        if len(qpoly_gcd(coeffs, qpoly_derivative(coeffs))) != 1:
            raise NotSquarefree(f"minimal polynomial {format_upoly(coeffs, 't')} is not squarefree")
        self.evidence = certify_irreducible(coeffs, prime_budget, prime_limit)
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self.name = name
        n = self.degree
        # reduction table: t^(n+k) as a coefficient vector, k = 0 .. n-2
        red = []
        cur = [-c for c in coeffs[:-1]]
        for _ in range(max(n - 1, 1)):
            red.append(tuple(cur))
            top = cur[-1]
            cur = [Fraction(0)] + cur[:-1]
            if top:
                cur = [x - top * c for x, c in zip(cur, coeffs[:-1])]
        self._reduction = red
        self.zero = NfElement(self, (Fraction(0),) * n)
        self.one = NfElement(self, (Fraction(1),) + (Fraction(0),) * (n - 1))

    # field interface shared with QQ
    def __call__(self, x) -> "NfElement":
        if isinstance(x, NfElement):
            if x.field != self:
                raise FieldMismatch("element belongs to a different field")
            return x
        if isinstance(x, (int, Fraction)):
            return NfElement(self, (Fraction(x),) + (Fraction(0),) * (self.degree - 1))
        if isinstance(x, str):
            return self.parse(x)
        coeffs = [Fraction(c) for c in x]
        if len(coeffs) > self.degree:
            return self.from_poly(coeffs)
        return NfElement(self, tuple(coeffs) + (Fraction(0),) * (self.degree - len(coeffs)))

    @property
    def gen(self) -> "NfElement":
        if self.degree == 1:
            return self(-self.min_poly[0])
        return self([0, 1])

    def coords(self, a: "NfElement") -> tuple[Fraction, ...]:
        return self(a).coeffs

    @staticmethod
    def is_zero(a) -> bool:
        return a == 0

    def from_poly(self, coeffs: Sequence) -> "NfElement":
        """Reduce an arbitrary polynomial in t modulo the minimal polynomial."""
        n = self.degree
        out = [Fraction(0)] * n
        for i, c in enumerate(coeffs):
            c = Fraction(c)
            if not c:
                continue
            if i < n:
                out[i] += c
            else:
                vec = self._power(i)
                for j in range(n):
                    out[j] += c * vec[j]
        return NfElement(self, tuple(out))

    def _power(self, k: int) -> tuple:
        n = self.degree
        if k < n:
            return tuple(Fraction(int(i == k)) for i in range(n))
        if k - n < len(self._reduction):
            return self._reduction[k - n]
        return (self.gen ** k).coeffs

    def parse(self, text: str) -> "NfElement":
        return self.from_poly(parse_univariate(text))

    def __eq__(self, other) -> bool:
        return isinstance(other, NumberField) and other.min_poly == self.min_poly

    def __hash__(self) -> int:
        return hash(("NumberField", self.min_poly))

    def __repr__(self) -> str:
        return f"NumberField({format_upoly(self.min_poly, 't')})"

    def poly_string(self) -> str:
        return format_upoly(self.min_poly, "t")


def nf_new(min_poly, **kw) -> NumberField:
    return NumberField(min_poly, **kw)


class NfElement:
    __slots__ = ("field", "coeffs")

    def __init__(self, field: NumberField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def _coerce(self, other):
        if isinstance(other, NfElement):
            if other.field is not self.field and other.field != self.field:
                raise FieldMismatch("arithmetic between different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NfElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return NfElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return NfElement(self.field, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return NfElement(self.field, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = self.field.degree
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        out = prod[:n]
        red = self.field._reduction
        for k in range(n, 2 * n - 1):
            c = prod[k]
            if c:
                vec = red[k - n]
                for j in range(n):
                    out[j] += c * vec[j]
        return NfElement(self.field, tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "NfElement":
        return nf_inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in a number field")
            return NfElement(self.field, tuple(a / other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * nf_inv(other)

    def __rtruediv__(self, other):
        return self._coerce(other) * nf_inv(self)

    def __pow__(self, e: int):
        if e < 0:
            return nf_inv(self) ** (-e)
        result = self.field.one
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, NfElement):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.min_poly, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return format_upoly(self.coeffs, self.field.name)


def nf_inv(a: NfElement) -> NfElement:
    """Inverse via the extended Euclidean algorithm on (rep(a), min_poly)."""
    if not a:
        raise ZeroDivisionError("inverse of zero in a number field")
    f = list(a.field.min_poly)
    r0, r1 = f, _trim(list(a.coeffs))
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
    # r1 is a nonzero constant since f is irreducible
    c = r1[0]
    return a.field.from_poly([x / c for x in s1])


def _pmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def format_upoly(coeffs: Sequence, var: str) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[i])
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s


# ---------------------------------------------------------------------------
# subalgebras


def _insert_rref(basis: list[list[Fraction]], pivots: list[int], v: Sequence[Fraction]) -> bool:
    """Reduce ``v`` against a reduced echelon basis; append it if new.  Keeps RREF."""
    w = list(v)
    for row, pc in zip(basis, pivots):
        c = w[pc]
        if c:
            w = [x - c * y for x, y in zip(w, row)]
    pc = next((i for i, x in enumerate(w) if x), None)
    if pc is None:
        return False
    inv = 1 / w[pc]
    w = [x * inv for x in w]
    for k, row in enumerate(basis):
        c = row[pc]
        if c:
            basis[k] = [x - c * y for x, y in zip(row, w)]
    pos = next((k for k, q in enumerate(pivots) if q > pc), len(pivots))
    basis.insert(pos, w)
    pivots.insert(pos, pc)
    return True


def subalgebra_basis(gens: Sequence, field=None) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced echelon QQ-basis (rows, pivot columns) of the QQ-algebra generated by ``gens``.

    Saturates the span of 1 under multiplication by each generator.
    """
    gens = list(gens)
    if field is None:
        field = gens[0].field if gens and isinstance(gens[0], NfElement) else QQ
    if field is QQ:
        return [[Fraction(1)]], [0]
    gens = [field(g) for g in gens]
    basis: list[list[Fraction]] = []
    pivots: list[int] = []
    _insert_rref(basis, pivots, field.one.coeffs)
    queue = [field.one]
    while queue:
        v = queue.pop()
        for g in gens:
            w = v * g
            if _insert_rref(basis, pivots, w.coeffs):
                queue.append(w)
    return basis, pivots


def subalgebra_degree(gens: Sequence, field=None) -> int:
    """Dimension over QQ of the QQ-subalgebra generated by ``gens`` (1 for no generators)."""
    return len(subalgebra_basis(gens, field)[0])
