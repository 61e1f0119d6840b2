from fractions import Fraction

import pytest

from sesh.parsing import PolynomialSyntaxError, parse_polynomial, parse_rational, parse_univariate


def test_univariate():
    assert parse_univariate("t^3 - t - 1") == [-1, -1, 0, 1]
    assert parse_univariate("th**2/2 + 3") == [3, 0, Fraction(1, 2)]
    assert parse_univariate("(t+1)^2") == [1, 2, 1]
    assert parse_univariate("2 t") == [0, 2]


def test_multivariate():
    p = parse_polynomial("x0^2 - 2*x1^2", {"x0": 0, "x1": 1, "x2": 2}, 3)
    assert p == {(2, 0, 0): 1, (0, 2, 0): -2}


@pytest.mark.parametrize("bad", ["t^", "t +* 2", "(t", "1/t", "y^2", "t^-1", ""])
def test_syntax_errors(bad):
    with pytest.raises(PolynomialSyntaxError):
        parse_univariate(bad)


def test_rational():
    assert parse_rational(" 9/10 ") == Fraction(9, 10)
    with pytest.raises(ValueError):
        parse_rational("nine")
