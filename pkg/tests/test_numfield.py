from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sesh.errors import FieldMismatch, IrreducibilityUnverified, NotSquarefree, Reducible
from sesh.exactalg import QQ
from sesh.numfield import (NumberField, certify_irreducible, degree_pattern_mod_p, nf_inv, nf_new,
                           subalgebra_degree, subset_sums)


def test_nf_new_examples():
    assert nf_new([-2, 0, 1]).degree == 2
    assert NumberField("t^3-t-1").degree == 3
    with pytest.raises(Reducible):
        NumberField("t^2-1")
    with pytest.raises(IrreducibilityUnverified):
        NumberField("t^2-1")


def test_reducible_without_rational_root_is_rejected():
    # (t^2+1)(t^2+2) splits into quadratics; patterns never rule out degree 2
    with pytest.raises(IrreducibilityUnverified) as info:
        NumberField("t^4+3*t^2+2")
    assert not isinstance(info.value, Reducible)


def test_not_squarefree():
    with pytest.raises(NotSquarefree):
        NumberField("t^2")
    with pytest.raises(NotSquarefree):
        NumberField("(t^2-2)^2")


def test_non_monic_rejected():
    with pytest.raises(ValueError):
        NumberField("2*t^2-1")


def test_degree_pattern_cubic_mod_2_is_irreducible():
    # exhaustive oracle: t^3+t+1 has no root in GF(2), and a reducible cubic would have one
    f = [-1, -1, 0, 1]
    assert all((x**3 - x - 1) % 2 for x in range(2))
    assert degree_pattern_mod_p(f, 2) == [3]


def test_degree_pattern_splits():
    # t^2 - 2 mod 7: 3^2 = 2, so it splits
    assert degree_pattern_mod_p([-2, 0, 1], 7) == [1, 1]
    assert degree_pattern_mod_p([-2, 0, 1], 5) == [2]


def test_subset_sums():
    assert subset_sums([1, 2]) == {0, 1, 2, 3}


def test_pure_powers_certify():
    for delta in range(2, 13):
        ev = certify_irreducible([Fraction(-2)] + [Fraction(0)] * (delta - 1) + [Fraction(1)])
        assert 1 <= len(ev) <= 25


def test_inverse_examples(q2):
    th = q2.gen
    assert nf_inv(q2.one) == 1
    assert nf_inv(1 + th) == th - 1
    with pytest.raises(ZeroDivisionError):
        nf_inv(q2.zero)


def test_subalgebra_degree_examples(q2, fields):
    assert subalgebra_degree([], q2) == 1
    assert subalgebra_degree([q2.gen], q2) == 2
    K = fields["t^3-2"]
    assert subalgebra_degree([K.gen ** 2], K) == 3
    L = fields["t^4-2"]
    assert subalgebra_degree([L.gen ** 2], L) == 2
    assert subalgebra_degree([Fraction(3)], QQ) == 1


def test_minimal_polynomial_vanishes_at_generator(fields):
    for K in fields.values():
        th = K.gen
        val = sum((c * th**i for i, c in enumerate(K.min_poly)), K.zero)
        assert val == 0


def test_field_mismatch(q2, cubic):
    with pytest.raises(FieldMismatch):
        q2.gen + cubic.gen


def test_parse_and_repr(cubic):
    a = cubic.parse("th^3 - th")
    assert a == 1
    assert repr(cubic.parse("2*th^2 - 1/2")) == "2*th^2 - 1/2"


def _elements(degree):
    return st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=9),
                    min_size=degree, max_size=degree)


@settings(max_examples=1000, deadline=None)
@given(st.sampled_from(["t^2-2", "t^3-t-1", "t^4-2", "t^5-3*t+1"]), st.data())
def test_inverse_property(poly, data):
    K = NumberField(poly)
    a = K(data.draw(_elements(K.degree)))
    if a == 0:
        with pytest.raises(ZeroDivisionError):
            nf_inv(a)
        return
    assert a * nf_inv(a) == 1
    assert (a / a) == 1


@settings(max_examples=150, deadline=None)
@given(st.sampled_from(["t^2-2", "t^3-2", "t^4-2", "t^6-2", "t^4+1"]), st.data())
def test_subalgebra_degree_divides_field_degree(poly, data):
    try:
        K = NumberField(poly)
    except IrreducibilityUnverified:
        # t^4+1 is irreducible but splits into quadratics modulo every prime
        return
    gens = [K(data.draw(_elements(K.degree))) for _ in range(data.draw(st.integers(0, 2)))]
    assert K.degree % subalgebra_degree(gens, K) == 0


@settings(max_examples=200, deadline=None)
@given(_elements(3), _elements(3), _elements(3))
def test_field_axioms(a, b, c):
    K = NumberField("t^3-t-1")
    a, b, c = K(a), K(b), K(c)
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0
    assert hash(K(Fraction(1, 3))) == hash(Fraction(1, 3))
