from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sesh.exactalg import (QQ, Matrix, _ff_gauss_jordan, _gauss_jordan_field, _kernel_from_rref,
                           integer_rows, kernel_basis, kernel_is_empty_certified, modular_kernel,
                           nth_word_prime, normalize_qq, rank, rank_mod_p, rational_reconstruct)
from sesh.numfield import NumberField


def test_rank_examples():
    assert rank(Matrix.identity(3)) == 3
    assert rank(Matrix.zeros(2, 3)) == 0
    assert rank(Matrix.from_rows([[1, 2, 3], [2, 4, 6]])) == 1


def test_kernel_examples():
    assert kernel_basis(Matrix.identity(3)) == []
    ker = kernel_basis(Matrix.zeros(2, 3))
    assert ker == [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    M = Matrix.from_rows([[1, 2, 3], [2, 4, 6]])
    ker = kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert M.apply(v) == [0, 0]
    # reduced column-echelon: free columns 1 and 2
    assert ker == [(2, -1, 0), (3, 0, -1)]


def test_matrix_shape_invariant():
    with pytest.raises(ValueError):
        Matrix(2, 2, (1, 2, 3))


def test_rational_arithmetic_is_exact():
    a, b, c, d = 3, 4, 5, 6
    assert Fraction(a, b) + Fraction(c, d) == Fraction(a * d + b * c, b * d)


def test_normalize_qq():
    assert normalize_qq([Fraction(-1, 2), Fraction(1, 3)]) == (3, -2)
    assert normalize_qq([0, 0]) == (0, 0)


def test_rational_reconstruct():
    N = nth_word_prime(0) * nth_word_prime(1)
    x = Fraction(-17, 91)
    a = x.numerator * pow(x.denominator, -1, N) % N
    assert rational_reconstruct(a, N) == x


small_matrices = st.integers(1, 5).flatmap(lambda r: st.integers(1, 6).flatmap(
    lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c), min_size=r, max_size=r)))


def _low_rank(rows):
    # duplicate combinations make rank drops common
    if len(rows) >= 2:
        rows = rows + [[a + 2 * b for a, b in zip(rows[0], rows[1])]]
    return rows


@settings(max_examples=200, deadline=None)
@given(small_matrices)
def test_rank_nullity_and_exact_kernel(rows):
    rows = _low_rank(rows)
    M = Matrix.from_rows(rows)
    ker = kernel_basis(M)
    assert rank(M) + len(ker) == M.cols
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
        assert normalize_qq(v) == tuple(v)
    assert kernel_basis(M) == ker


@settings(max_examples=150, deadline=None)
@given(small_matrices)
def test_modular_route_matches_fraction_free(rows):
    rows = _low_rank(rows)
    M = Matrix.from_rows(rows)
    ints = integer_rows(M)
    mod = modular_kernel(ints, M.cols)
    assert mod == kernel_basis(M)


@settings(max_examples=150, deadline=None)
@given(small_matrices, st.sampled_from([3, 5, 7, 101]))
def test_rank_does_not_increase_mod_p(rows, p):
    M = Matrix.from_rows(_low_rank(rows))
    r = rank(M)
    assert rank_mod_p(M, p) <= r
    if rank_mod_p(M, p) == M.cols:
        assert kernel_basis(M) == []
        assert kernel_is_empty_certified(M, [p])


@settings(max_examples=60, deadline=None)
@given(small_matrices)
def test_number_field_route_agrees_on_rational_matrices(rows):
    K = NumberField("t^2-2")
    rows = _low_rank(rows)
    MQ = Matrix.from_rows(rows)
    MK = Matrix.from_rows([[K(x) for x in r] for r in rows], K)
    assert rank(MQ) == rank(MK)
    kq = kernel_basis(MQ)
    kk = kernel_basis(MK)
    assert len(kq) == len(kk)
    for a, b in zip(kq, kk):
        lead = next(x for x in a if x)
        assert tuple(K(x / lead) for x in a) == b


def test_field_elimination_over_number_field():
    K = NumberField("t^2-2")
    th = K.gen
    M = Matrix.from_rows([[th, K(1), K(0)], [K(2), th, K(0)]], K)
    # second row is th times the first
    assert rank(M) == 1
    ker = kernel_basis(M)
    assert len(ker) == 2
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
        assert next(x for x in v if x != 0) == 1


def test_large_matrix_goes_through_modular_kernel():
    # 60 x 66 system with a known 6-dimensional kernel
    import random
    rng = random.Random(3)
    base = [[rng.randint(-9, 9) for _ in range(66)] for _ in range(40)]
    rows = base + [[a - b for a, b in zip(base[i], base[i + 1])] for i in range(20)]
    M = Matrix.from_rows(rows)
    ker = kernel_basis(M)
    assert len(ker) == 26
    for v in ker:
        assert all(x == 0 for x in M.apply(v))
    pivots, R, diag = _ff_gauss_jordan(integer_rows(M), M.cols)
    assert ker == [normalize_qq(v) for v in _kernel_from_rref(pivots, R, M.cols, diag, 0)]


def test_field_gauss_jordan_matches_over_qq():
    rows = [[Fraction(1), Fraction(2)], [Fraction(2), Fraction(4)]]
    pivots, _ = _gauss_jordan_field(rows, 2, QQ)
    assert pivots == [0]
