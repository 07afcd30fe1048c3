import pytest

from pqbernstein.qreference import (
    jackson_integral,
    q_binomial_row,
    q_integer,
    q_kantorovich_schurer,
)


def test_q_integer_values():
    assert q_integer(0, 0.7) == 0.0
    assert q_integer(3, 0.5) == pytest.approx(1.75)
    assert q_integer(4, 1.0) == 4.0


def test_gaussian_binomial_four_choose_two():
    q = 0.63
    expected = 1 + q + 2 * q**2 + q**3 + q**4
    assert q_binomial_row(4, q)[2] == pytest.approx(expected, rel=1e-14)


def test_binomial_row_symmetry():
    row = q_binomial_row(6, 0.8)
    assert row == pytest.approx(row[::-1], rel=1e-13)


@pytest.mark.parametrize("m", range(5))
def test_jackson_monomial(m):
    q = 0.85
    value = jackson_integral(lambda t: t**m, q, tol=1e-13)
    assert value == pytest.approx(1.0 / q_integer(m + 1, q), abs=1e-11)


def test_operator_reproduces_constants():
    assert q_kantorovich_schurer(6, 2, 0.8, lambda t: 1.0, 0.4, tol=1e-13) == pytest.approx(
        1.0, abs=1e-11
    )


def test_operator_at_zero_collapses_to_first_term():
    # at x = 0 only k = 0 survives: integral of f(t/[n+1]) d_q t
    n, q = 5, 0.75
    value = q_kantorovich_schurer(n, 0, q, lambda t: t, 0.0, tol=1e-13)
    expected = 1.0 / (q_integer(2, q) * q_integer(n + 1, q))
    assert value == pytest.approx(expected, abs=1e-12)
