import pytest
from hypothesis import given, settings, strategies as st

from hopf12.exactmath import ONE, XI, Mat, mat_rank, theta_value, xi_pow
from hopf12.repmod import LAMBDA_PAIRS, Ext, OneDim, Proj, TwoDim, catalog, is_isomorphic
from hopf12.ydbraid import (FINITE_PAIRS, INFINITE_PAIRS, base_algebra, braid_equation, braiding,
                            braiding_between, closed_form_braiding, diagonal_finite,
                            diagonal_reduction, dmod_from_yd, dual_yd, hexagon_check, in_lambda_star,
                            is_invertible, tensor_yd, verify_yd, yd_from_dmod)

pairs = st.sampled_from(LAMBDA_PAIRS)
thetas = st.sampled_from([XI, -XI])


def yd(label, theta=XI):
    return yd_from_dmod(catalog(label, theta))


def coaction(Y, k):
    C = base_algebra()
    return {(C.labels[c], r): x for c, r, x in Y.coaction(k)}


@pytest.mark.parametrize("i", range(6))
def test_one_dimensional(i):
    Y = yd(OneDim(i))
    assert coaction(Y, 0) == {(f"a^{3 * i % 6}" if 3 * i % 6 else "1", 0): ONE}
    assert braiding(Y).c == Mat([[ONE if i % 2 == 0 else -ONE]])


@pytest.mark.parametrize("i,j", LAMBDA_PAIRS)
def test_two_dimensional_coaction(i, j):
    Y = yd(TwoDim(i, j))
    k = -j % 6
    m = (-1 - j) % 6
    head = f"a^{k}" if k > 1 else ("a" if k == 1 else "1")
    tail = f"b*a^{m}" if m > 1 else ("b*a" if m == 1 else "b")
    expected = {(head, 0): ONE, (tail, 1): xi_pow(4) * (xi_pow(4 * i) - xi_pow(i + j))}
    assert coaction(Y, 0) == {key: v for key, v in expected.items() if v}


@pytest.mark.parametrize("j", range(6))
def test_projective_cover(j):
    Y = yd(Proj(j))
    k = 3 * j % 6
    assert coaction(Y, 3) == {(f"a^{k}" if k else "1", 3): ONE}
    c = braiding(Y).c
    p44 = 3 * 4 + 3
    assert c[p44, p44] == (ONE if j % 2 == 0 else -ONE)
    assert all(not c[r, p44] for r in range(16) if r != p44)


@settings(max_examples=30, deadline=None)
@given(pairs, thetas)
def test_closed_form_braiding(p, theta):
    B = braiding(yd(TwoDim(*p), theta))
    assert B.c == closed_form_braiding(*p)
    assert B.c[0, 0] == xi_pow(-p[0] * p[1])


def test_yd_conditions_on_the_catalog():
    labels = [OneDim(0), OneDim(3), TwoDim(1, 1), TwoDim(4, 5), Proj(2), Ext(1, 0), Ext(3, 2)]
    for L in labels:
        Y = yd(L)
        assert verify_yd(Y).ok, L
        B = braiding(Y)
        assert braid_equation(B) and is_invertible(B)


def test_broken_coaction_is_caught():
    Y = yd(TwoDim(1, 1))
    Y.gamma = list(Y.gamma)
    C = base_algebra()
    Y.gamma[C.index("a")], Y.gamma[C.index("a^5")] = Y.gamma[C.index("a^5")], Y.gamma[C.index("a")]
    assert not verify_yd(Y).ok


@settings(max_examples=15, deadline=None)
@given(pairs, thetas)
def test_dual_of_two_dimensional(p, theta):
    i, j = p
    dual = dmod_from_yd(dual_yd(yd(TwoDim(i, j), theta)), theta)
    assert is_isomorphic(dual, catalog(TwoDim(-i - 1, -j - 3), theta)) is not None


@pytest.mark.parametrize("i", range(6))
def test_dual_of_one_dimensional(i):
    dual = dmod_from_yd(dual_yd(yd(OneDim(i))))
    assert is_isomorphic(dual, catalog(OneDim(-i))) is not None


def test_double_dual_and_round_trip():
    M = catalog(TwoDim(1, 1))
    Y = yd_from_dmod(M)
    assert is_isomorphic(dmod_from_yd(dual_yd(dual_yd(Y))), M) is not None
    back = dmod_from_yd(Y)
    assert all(back.mat(h) == M.mat(h) for h in "abgx")


def test_hexagons():
    U, V, W = yd(TwoDim(1, 1)), yd(Proj(0)), yd(TwoDim(3, 1))
    assert hexagon_check(U, V, W).ok
    assert hexagon_check(U, U, U).ok
    assert verify_yd(tensor_yd(U, W)).ok


def test_double_braiding_is_invertible():
    K, V = yd(OneDim(1)), yd(TwoDim(2, 2))
    M = braiding_between(V, K) @ braiding_between(K, V)
    assert mat_rank(M) == M.rows


def test_diagonal_reduction_examples():
    assert diagonal_reduction(1, 1) == (-ONE, -xi_pow(-1), xi_pow(-1))
    assert diagonal_reduction(1, 0)[2] == ONE
    assert diagonal_reduction(0, 1)[2] == ONE
    assert diagonal_finite(1, 1)
    assert not diagonal_finite(1, 0)
    with pytest.raises(ValueError):
        diagonal_reduction(1, 3)


def test_lambda_star_split():
    assert len(INFINITE_PAIRS) == 18 and len(FINITE_PAIRS) == 12
    assert in_lambda_star(2, 3)
    assert set(FINITE_PAIRS) == {(3, 1), (3, 5), (2, 2), (2, 4), (4, 1), (4, 5), (1, 2), (1, 4),
                                 (1, 1), (1, 5), (4, 2), (4, 4)}


def test_theta_flip_keeps_braidings():
    for p in [(1, 1), (3, 5), (0, 1)]:
        assert braiding(yd(TwoDim(*p), theta_value(True))).c == braiding(yd(TwoDim(*p))).c
