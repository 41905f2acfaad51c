from hypothesis import given, settings, strategies as st

import pytest

from hopf12.exactmath import ONE, XI, Mat, theta_value, xi_pow
from hopf12.repmod import (LAMBDA_PAIRS, SIMPLE_LABELS, DMod, Ext, Label, OneDim, Proj, TwoDim,
                           catalog, class_ring_check, class_ring_image, decompose, direct_sum,
                           extension_matrices, extension_space, fusion, hom_space, is_isomorphic,
                           is_simple, predicted_tensor, tensor, verify_module)

pairs = st.sampled_from(LAMBDA_PAIRS)
sixes = st.integers(0, 5)


def test_one_dimensional_matrices():
    M = catalog(OneDim(1))
    assert M.a == Mat([[XI]]) and M.g == Mat([[-ONE]])
    assert M.b.is_zero() and M.x.is_zero()


@pytest.mark.parametrize("theta", [XI, -XI])
def test_two_dimensional_x_entry(theta):
    M = catalog(TwoDim(0, 1), theta)
    assert M.x[1, 0] == theta * xi_pow(-2) * (1 - XI)


def test_every_catalog_entry_is_a_module():
    labels = SIMPLE_LABELS + [Proj(j) for j in range(6)] + [Ext(l, k) for l in range(6) for k in (0, 2)]
    for L in labels:
        assert verify_module(catalog(L)).ok, L


def test_zeroed_x_breaks_the_cross_relation():
    M = catalog(TwoDim(0, 1))
    broken = DMod(2, M.a, M.b, M.g, Mat.zeros(2, 2))
    fails = [k for k, (ok, _) in verify_module(broken).checks.items() if not ok]
    assert any("b*x" in k or "x*b" in k for k in fails)


def test_projective_cover_socle_and_top():
    P = catalog(Proj(0))
    assert P.dim == 4
    for i in range(6):
        K = catalog(OneDim(i))
        expected = 1 if i == 0 else 0
        assert len(hom_space(K, P)) == expected
        assert len(hom_space(P, K)) == expected


def test_simples_and_counting():
    assert len(SIMPLE_LABELS) == 36
    assert all(is_simple(catalog(L)) for L in SIMPLE_LABELS)
    assert sum(L.dim * catalog(Proj(0) if L.kind == "K" else L).dim for L in SIMPLE_LABELS) == 144


def test_isomorphism_examples():
    V = catalog(TwoDim(1, 2))
    assert is_isomorphic(V, V) is not None
    assert is_isomorphic(V, catalog(TwoDim(2, 1))) is None


def test_extension_is_not_split():
    M = catalog(Ext(0, 0))
    assert verify_module(M).ok
    assert is_isomorphic(M, direct_sum(catalog(OneDim(0)), catalog(OneDim(1)))) is None
    assert len(hom_space(catalog(OneDim(0)), M)) == 1


@pytest.mark.parametrize("l", range(6))
def test_middle_extension_does_not_exist(l):
    assert extension_space(l, l + 3) == 0
    assert not verify_module(extension_matrices(l, 1)).ok
    with pytest.raises(ValueError):
        catalog(Ext(l, 1))


@given(pairs, sixes)
def test_twisting_by_characters(p, k):
    i, j = p
    M = tensor(catalog(TwoDim(i, j)), catalog(OneDim(k)))
    assert is_isomorphic(M, catalog(TwoDim(i + k, j + 3 * k))) is not None


@given(sixes, sixes)
def test_characters_multiply(l, k):
    M = tensor(catalog(OneDim(l)), catalog(OneDim(k)))
    assert is_isomorphic(M, catalog(OneDim(k + l))) is not None


def test_decomposition_examples():
    assert fusion(TwoDim(0, 1), TwoDim(0, 5)) == [Proj(1)]
    assert fusion(TwoDim(0, 1), TwoDim(0, 1)) == sorted([TwoDim(0, 2), TwoDim(1, 5)])
    assert fusion(Proj(0), Proj(0)) == sorted([Proj(0), Proj(0), Proj(1), Proj(5)])
    assert decompose(catalog(OneDim(0))).labels == [OneDim(0)]
    assert fusion(TwoDim(0, 1), TwoDim(0, 2)) == sorted([TwoDim(0, 3), TwoDim(1, 0)])


@settings(max_examples=25, deadline=None)
@given(pairs, pairs, st.sampled_from([XI, -XI]))
def test_two_dimensional_fusion_rule(p, q, theta):
    L1, L2 = TwoDim(*p), TwoDim(*q)
    assert fusion(L1, L2, theta) == predicted_tensor(L1, L2)


def test_decomposition_intertwiner_is_certified():
    M = tensor(catalog(TwoDim(0, 1)), catalog(Proj(2)))
    dec = decompose(M)
    S = direct_sum(*dec.summands)
    for h in "abgx":
        assert M.mat(h) @ dec.intertwiner == dec.intertwiner @ S.mat(h)


@settings(max_examples=6, deadline=None)
@given(pairs, pairs, sixes)
def test_tensor_is_associative_up_to_isomorphism(p, q, k):
    A, B, K = catalog(TwoDim(*p)), catalog(TwoDim(*q)), catalog(OneDim(k))
    left = decompose(tensor(tensor(A, B), K)).labels
    right = decompose(tensor(A, tensor(B, K))).labels
    assert left == right


@pytest.mark.parametrize("flip", [False, True])
def test_class_ring_relations(flip):
    assert class_ring_check(theta_value(flip)).ok


def test_class_ring_images():
    assert class_ring_image(OneDim(2)) == "y0^2"
    assert class_ring_image(TwoDim(0, 4)) == "y4*y0^0"
    with pytest.raises(ValueError):
        class_ring_image(Ext(0, 0))


def test_label_parsing():
    assert Label.parse("V1,4") == TwoDim(1, 4)
    assert Label.parse("P_3") == Proj(3)
    assert Label.parse("M2^0") == Ext(2, 0)
    with pytest.raises(ValueError):
        TwoDim(1, 3)
