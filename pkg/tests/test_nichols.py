import pytest
from hypothesis import given, settings, strategies as st

from hopf12.exactmath import ONE, XI, Mat, mat_rank, theta_value
from hopf12.nichols import (PRESETS, UNDETERMINED, derivation, derivation_kernel, derivation_values,
                            fixed_vector, hilbert, in_symmetrizer_kernel, infinite_certificate,
                            parse_relations, preset_label, quotient_dims, same_span,
                            shuffle_coproduct, symmetrizer, symmetrizer_by_permutations,
                            symmetrizer_kernel, verify_presentation, verify_relation)
from hopf12.repmod import LAMBDA_PAIRS, OneDim, Proj, TwoDim, catalog
from hopf12.ydbraid import INFINITE_PAIRS, braiding, dual_yd, yd_from_dmod


def braid_of(label, theta=XI):
    return braiding(yd_from_dmod(catalog(label, theta)))


def dual_braid_of(label, theta=XI):
    return braiding(dual_yd(yd_from_dmod(catalog(label, theta))))


def add(out, key, val):
    out[key] = out.get(key, 0) + val
    if not out[key]:
        del out[key]


def apply_c(B, vec, p):
    """c at positions p, p+1, read straight off the braiding matrix."""
    d = B.dim
    out = {}
    for w, x in vec.items():
        col = w[p] * d + w[p + 1]
        for r in range(d * d):
            if B.c[r, col]:
                add(out, w[:p] + divmod(r, d) + w[p + 2:], x * B.c[r, col])
    return out


def braided_coproduct(B, word):
    """Delta of v_{l_1} ... v_{l_m} by multiplying out prod (v (x) 1 + 1 (x) v) in the
    braided tensor product: (a (x) b)(v (x) 1) = a c(b (x) v)' (x) c(b (x) v)''."""
    result = {((), ()): ONE}
    for l in word:
        new = {}
        for (a, b), x in result.items():
            t = {b + (l,): x}
            for p in range(len(b) - 1, -1, -1):
                t = apply_c(B, t, p)
            for w, y in t.items():
                add(new, (a + w[:1], w[1:]), y)
            add(new, (a, b + (l,)), x)
        result = new
    return result


labels = st.sampled_from([OneDim(1), TwoDim(1, 1), TwoDim(2, 2), TwoDim(0, 1), TwoDim(4, 5), TwoDim(3, 1)])


def test_hand_computation_in_degree_two():
    B = braid_of(TwoDim(1, 1))
    got = shuffle_coproduct(B, {(0, 1): ONE})
    # Delta^{1,1}(v1 v2) = v1 (x) v2 + c(v1 (x) v2)
    expected = {(0, 1): ONE}
    for w, x in apply_c(B, {(0, 1): ONE}, 0).items():
        add(expected, w, x)
    flat = {(l,) + w: x for l, t in got.items() for w, x in t.items()}
    assert flat == expected
    assert shuffle_coproduct(B, {(1,): ONE}) == {1: {(): ONE}}


@settings(max_examples=25, deadline=None)
@given(labels, st.lists(st.integers(0, 1), min_size=1, max_size=4))
def test_shuffle_coproduct_against_braided_expansion(label, word):
    B = braid_of(label)
    word = tuple(w % B.dim for w in word)
    full = braided_coproduct(B, word)
    expected = {}
    for (a, b), x in full.items():
        if len(a) == 1:
            add(expected, (a[0], b), x)
    got = {(l, w): x for l, t in shuffle_coproduct(B, {word: ONE}).items() for w, x in t.items()}
    assert got == expected


def test_symmetrizer_small_degrees():
    B = braid_of(TwoDim(1, 1))
    assert symmetrizer(B, 1) == Mat.identity(2)
    assert mat_rank(symmetrizer(B, 2)) == 4
    assert mat_rank(symmetrizer(braid_of(OneDim(1)), 2)) == 0


@settings(max_examples=12, deadline=None)
@given(labels, st.integers(2, 4))
def test_recursion_matches_permutation_sum(label, n):
    B = braid_of(label)
    assert symmetrizer(B, n) == symmetrizer_by_permutations(B, n)


def test_recursion_matches_permutation_sum_projective():
    B = braid_of(Proj(1))
    assert symmetrizer(B, 3) == symmetrizer_by_permutations(B, 3)


@pytest.mark.parametrize("label,ranks", [
    (TwoDim(3, 1), [1, 2, 2, 1]),
    (TwoDim(1, 1), [1, 2, 4, 5, 6, 6, 5, 4, 2, 1]),
    (TwoDim(4, 1), [1, 2, 4, 4, 4, 2, 1]),
    (OneDim(3), [1, 1]),
])
def test_hilbert_series(label, ranks):
    h = hilbert(braid_of(label))
    assert h.finite and h.ranks == ranks
    assert h.top_degree == len(ranks) - 1


def test_hilbert_cap_is_reported():
    h = hilbert(braid_of(TwoDim(1, 1)), 5)
    assert not h.finite and h.status == UNDETERMINED
    assert h.ranks == [1, 2, 4, 5, 6, 6]


def test_derivation_examples():
    B = braid_of(TwoDim(2, 2))
    assert derivation(B, 0, {(0, 0): ONE}) == {(0,): XI}
    assert derivation(B, 1, {(0, 0): ONE}) == {}
    assert shuffle_coproduct(B, {(0,): ONE}) == {0: {(): ONE}}


def test_relation_examples():
    B22, B31, B11 = braid_of(TwoDim(2, 2)), braid_of(TwoDim(3, 1)), braid_of(TwoDim(1, 1))
    r22, = parse_relations(["v2^2 + xi*v1^2"])
    r31, = parse_relations(["v1*v2 + xi^-1*v2*v1"])
    r11, = parse_relations(["v1*v2 - v2*v1"])
    assert verify_relation(B22, r22) and in_symmetrizer_kernel(B22, r22)
    assert verify_relation(B31, r31) and in_symmetrizer_kernel(B31, r31)
    assert not verify_relation(B11, r11) and not in_symmetrizer_kernel(B11, r11)
    inhomogeneous, = parse_relations(["v1^2 + v2"])
    with pytest.raises(ValueError):
        verify_relation(B11, inhomogeneous)


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets(name):
    P = PRESETS[name]
    B = braid_of(P.label)
    h = hilbert(B)
    assert h.total == P.total
    rels = parse_relations(P.relations, B.dim)
    assert verify_presentation(B, rels, h).ok


def test_wrong_presentation_is_located():
    B = braid_of(TwoDim(3, 1))
    rels = parse_relations(["v1^2", "v2^3"])
    rep = verify_presentation(B, rels, hilbert(B))
    assert not rep["dimensions"]
    assert rep.checks["dimensions"][1].startswith("degree 2")
    assert quotient_dims(rels, 2, 3)[:3] == [1, 2, 3]


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(LAMBDA_PAIRS + [None]), st.integers(2, 4))
def test_kernels_agree(pair, m):
    B = braid_of(TwoDim(*pair) if pair else OneDim(1))
    assert same_span(derivation_kernel(B, m), symmetrizer_kernel(B, m))


def test_derivation_values_fully_reduce():
    B = braid_of(TwoDim(2, 2))
    vals = derivation_values(B, {(0, 0): ONE})
    assert vals == {(0, 0): XI}


@pytest.mark.parametrize("pair", [(1, 0), (0, 1)])
def test_direct_witness(pair):
    w = infinite_certificate(braid_of(TwoDim(*pair)))
    assert w.side == "direct" and w.vector == {0: ONE}


def test_dual_side_witness():
    # (2,3): (i+1)(3+j) = 18; the dual V_{3,0} has a fixed vector
    label = TwoDim(2, 3)
    w = infinite_certificate(braid_of(label), candidates=[], dual=dual_braid_of(label))
    assert w is not None and w.side == "dual"
    assert fixed_vector(dual_braid_of(label), w.vector)


@pytest.mark.parametrize("pair", INFINITE_PAIRS)
def test_every_infinite_label_has_a_witness(pair):
    label = TwoDim(*pair)
    assert infinite_certificate(braid_of(label), dual=dual_braid_of(label)) is not None


def test_finite_labels_have_no_witness():
    for name, P in PRESETS.items():
        if P.label.kind == "V":
            assert infinite_certificate(braid_of(P.label), dual=dual_braid_of(P.label)) is None


def test_theta_flip_totals():
    flip = theta_value(True)
    for name in ("V_1_1", "V_4_1", "K_5"):
        assert hilbert(braid_of(PRESETS[name].label, flip)).total == PRESETS[name].total


def test_preset_names():
    assert preset_label("V_3_1") == TwoDim(3, 1)
    assert preset_label("K_1") == OneDim(1)
    with pytest.raises(ValueError):
        preset_label("V_3")
