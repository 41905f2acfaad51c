import cmath
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hopf12.exactmath import (LAMBDA, ONE, XI, ZERO, CycQ6, DivisionByZero, Mat, det, format_cyc,
                              inverse, kron, mat_rank, parse_cyc, rank_kernel, solve, xi_pow)

XI_C = cmath.exp(1j * cmath.pi / 3)

rats = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cycs = st.builds(CycQ6, rats, rats)


def as_complex(x: CycQ6) -> complex:
    return float(x.r0) + float(x.r1) * XI_C


def close(a, b):
    return abs(a - b) <= 1e-9 * max(1.0, abs(a), abs(b))


def test_minimal_polynomial():
    assert XI * XI == XI - 1
    assert XI ** 6 == ONE
    assert XI ** 3 == -ONE
    assert xi_pow(-1) * XI == ONE


def test_lambda_from_a_rational_system():
    # (xi + 1) w = 1 with w = p + q xi: (p - q) + (p + 2q) xi = 1
    p, q = Fraction(2, 3), Fraction(-1, 3)
    assert (p - q, p + 2 * q) == (1, 0)
    w = CycQ6(p, q)
    assert LAMBDA == (XI - 1) * w
    assert LAMBDA == CycQ6(Fraction(-1, 3), Fraction(2, 3))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / ZERO
    with pytest.raises(ZeroDivisionError):
        ZERO.inv()


@given(cycs, cycs)
def test_arithmetic_against_complex_numbers(x, y):
    assert close(as_complex(x + y), as_complex(x) + as_complex(y))
    assert close(as_complex(x * y), as_complex(x) * as_complex(y))
    if y:
        assert close(as_complex(x / y), as_complex(x) / as_complex(y))


@given(cycs, cycs, cycs)
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if x:
        assert x * x.inv() == ONE


@given(cycs)
def test_text_form_round_trip(x):
    assert parse_cyc(format_cyc(x)) == x


@given(cycs, st.integers(min_value=-6, max_value=6))
def test_powers(x, k):
    if not x and k < 0:
        return
    assert close(as_complex(x ** k), as_complex(x) ** k if x else (1 if k == 0 else 0))


def test_parse_cyc_forms():
    assert parse_cyc("xi^-2") == xi_pow(4)
    assert parse_cyc("(xi - 1)/(xi + 1)") == LAMBDA
    assert parse_cyc("-1/2 + 3*xi") == CycQ6(Fraction(-1, 2), 3)


def test_identity_and_zero_matrices():
    for n in (1, 3, 5):
        r, ker = rank_kernel(Mat.identity(n))
        assert (r, ker) == (n, [])
    r, ker = rank_kernel(Mat.zeros(3, 3))
    assert r == 0 and len(ker) == 3


def test_kron_examples():
    assert kron(Mat.identity(2), Mat.identity(3)) == Mat.identity(6)
    A = Mat.diag([XI, XI ** 2])
    B = Mat.diag([ONE, -ONE])
    assert kron(A, B) == Mat.diag([XI, -XI, XI ** 2, -XI ** 2])


small = st.integers(min_value=-3, max_value=3)


@st.composite
def matrices(draw, rows=3, cols=4):
    return Mat([[CycQ6(draw(small), draw(small)) for _ in range(cols)] for _ in range(rows)])


@given(matrices())
def test_rank_nullity(M):
    r, ker = rank_kernel(M)
    assert r + len(ker) == M.cols
    for v in ker:
        assert all(not x for x in M.apply(v))
    assert mat_rank(M.transpose()) == r


@given(matrices(3, 3))
def test_inverse_and_solve(M):
    if not det(M):
        assert mat_rank(M) < 3
        return
    assert M @ inverse(M) == Mat.identity(3)
    b = [ONE, XI, ZERO]
    x = solve(M, b)
    assert M.apply(x) == b


@given(matrices(2, 2), matrices(2, 2), matrices(2, 2), matrices(2, 2))
def test_kron_mixed_product(A, B, C, D):
    assert kron(A, B) @ kron(C, D) == kron(A @ C, B @ D)
