import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import random_point
from sesh.errors import DuplicatePoint
from sesh.exactalg import QQ, Matrix, kernel_basis, rank
from sesh.linsys import (FatPointSpec, MultEntry, MultTable, chi_rr, conditions_matrix, h0, max_mult,
                         max_mult_detail, mult_table)
from sesh.p2geom import Form, make_point, vanishing_order

X2 = Form.coordinate(2)


def test_h0_and_chi():
    assert [h0(0), h0(1), h0(10)] == [1, 3, 66]
    assert chi_rr(0) == 1 and chi_rr(3) == 10 == h0(3) and chi_rr(-3) == 1
    with pytest.raises(ValueError):
        h0(-1)


def test_conditions_matrix_examples(q2):
    p = make_point(QQ, [0, 0, 1])
    M = conditions_matrix(1, [FatPointSpec(p, 1)])
    assert (M.rows, M.cols) == (1, 3) and len(kernel_basis(M)) == 2
    x = make_point(q2, [q2.gen, 1, 0])
    M = conditions_matrix(1, [FatPointSpec(x, 1)])
    assert (M.rows, M.cols) == (2, 3)
    assert kernel_basis(M) == [(0, 0, 1)]
    M = conditions_matrix(2, [FatPointSpec(x, 2)])
    assert (M.rows, M.cols) == (6, 6)
    assert X2 ** 2 in [Form.from_vector(2, v) for v in kernel_basis(M)]


def test_conditions_row_count_for_two_points(q2, cubic):
    x = make_point(q2, [q2.gen, 1, 0])
    y = make_point(QQ, [1, 2, 3])
    M = conditions_matrix(4, [FatPointSpec(x, 2), FatPointSpec(y, 3)])
    assert M.rows == 2 * 3 + 1 * 6
    assert M.cols == h0(4)


def test_duplicate_points_detected(q2):
    x = make_point(q2, [q2.gen, 1, 0])
    conj = make_point(q2, [-q2.gen, 1, 0])
    with pytest.raises(DuplicatePoint):
        conditions_matrix(2, [FatPointSpec(x, 1), FatPointSpec(conj, 1)])
    other = make_point(q2, [q2.gen, 2, 0])
    conditions_matrix(2, [FatPointSpec(x, 1), FatPointSpec(other, 1)])
    with pytest.raises(DuplicatePoint):
        conditions_matrix(1, [FatPointSpec(make_point(QQ, [1, 1, 1]), 1),
                              FatPointSpec(make_point(QQ, [2, 2, 2]), 1)])


def test_fat_point_order_must_be_positive():
    with pytest.raises(ValueError):
        FatPointSpec(make_point(QQ, [0, 0, 1]), 0)


def test_max_mult_examples(q2, cubic):
    m, w = max_mult(1, make_point(QQ, [0, 0, 1]))
    assert m == 1 and w.degree == 1
    assert max_mult(1, make_point(q2, [q2.gen, 1, 0])) == (1, X2)
    th = cubic.gen
    assert max_mult(1, make_point(cubic, [th, th**2, 1])) == (0, None)


def test_cubic_point_double_point_cubic(cubic):
    th = cubic.gen
    x = make_point(cubic, [th, th**2, 1])
    r = max_mult_detail(3, x)
    assert r.m_max == 2 and r.kernel_dim == 1
    assert vanishing_order(r.witness, x) == 2


def test_mult_table_invariants_rejected():
    with pytest.raises(ValueError):
        MultTable((MultEntry(1, 2, 1),))
    with pytest.raises(ValueError):
        MultTable((MultEntry(1, 1, 2), MultEntry(2, 0, 0)))


def test_threads_do_not_change_table(q2):
    x = make_point(q2, [q2.gen, 3, 1])
    a, _ = mult_table(x, 6, threads=1)
    b, _ = mult_table(x, 6, threads=3)
    assert a == b


def test_modular_certificate_agrees_with_exact_rank(cubic):
    th = cubic.gen
    x = make_point(cubic, [th, th**2, 1])
    for e in range(1, 8):
        r = max_mult_detail(e, x)
        M = conditions_matrix(e, [FatPointSpec(x, r.m_max + 1)])
        assert rank(M) == M.cols
        if r.m_max:
            assert len(kernel_basis(conditions_matrix(e, [FatPointSpec(x, r.m_max)]))) == r.kernel_dim


def test_number_field_base_point(q2):
    # the same point seen as rational over QQ(sqrt 2)
    x = make_point(q2, [q2.gen, 1, 0], base=q2)
    assert x.residue_degree == 1
    m, w = max_mult(2, x)
    assert m == 2
    assert vanishing_order(w, x) == 2


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10**6))
def test_dimension_count_forces_kernel(seed, fields):
    rng = random.Random(seed)
    x = random_point(rng, fields)
    a = x.residue_degree
    for d in range(1, 6):
        r = max_mult_detail(d, x)
        for m in range(1, d + 1):
            if h0(d) > a * m * (m + 1) // 2:
                assert r.m_max >= m
        if r.m_max:
            M = conditions_matrix(d, [FatPointSpec(x, r.m_max)])
            assert all(v == 0 for v in M.apply(r.witness.vector()))
            assert vanishing_order(r.witness, x) >= r.m_max
