import copy

import pytest

from hopf12.exactmath import ONE, XI, ZERO, Mat
from hopf12.hopfcore import (FORMULA_CONVENTIONS, FDHopf, compare_doubles, double_from_formula,
                             dual_hopf, grouplikes, integrals, is_grouplike, phi_A1_to_Cdual,
                             skew_primitives, verify_hopf, verify_morphism, zn_group_algebra)
from hopf12.liftings import build_lifting


def el(H, text):
    """Element from a 'coeff label + ...' description given as {label: coeff}."""
    return {H.index(k): v for k, v in text.items()}


def test_C_structure(C):
    assert C.dim == 12
    b = el(C, {"b": ONE})
    expected = {(C.index("b"), C.index("a^4")): ONE, (C.index("a"), C.index("b")): ONE}
    assert C.comul(b) == expected
    assert C.eps(el(C, {"a": ONE})) == ONE
    assert C.eps(b) == ZERO
    assert C.S(el(C, {"a": ONE})) == el(C, {"a^5": ONE})


def test_A1_structure(A1):
    x, g = el(A1, {"x": ONE}), el(A1, {"g": ONE})
    assert A1.comul(x) == {(A1.index("x"), A1.index("1")): ONE, (A1.index("g"), A1.index("x")): ONE}
    assert A1.mul(x, x) == el(A1, {"1": ONE, "g^2": -ONE})
    assert A1.power(g, 6) == A1.unit


def test_double_structure(D):
    assert D.dim == 144
    b, g = el(D, {"b": ONE}), el(D, {"g": ONE})
    total = D.mul(b, g)
    for k, c in D.mul(g, b).items():
        total[k] = total.get(k, ZERO) + c
    assert not any(total.values())


@pytest.mark.parametrize("name", ["C", "A1"])
def test_small_algebras_pass_exhaustively(name, C, A1):
    rep = verify_hopf({"C": C, "A1": A1}[name], exhaustive=True)
    assert rep.ok and rep.mode == "exhaustive"


def test_double_generator_mode(D):
    rep = verify_hopf(D)
    assert rep.ok and rep.mode == "generators"


def test_corrupted_coproduct_is_caught(C):
    bad = copy.deepcopy(C)
    a = C.index("a")
    bad.comult[a] = {(a, a): ONE}
    rep = verify_hopf(bad, exhaustive=True)
    assert not rep["bialgebra_compat"]


def test_lifting_without_antipode_skips_the_check():
    L = build_lifting(5, ONE, antipode=False)
    rep = verify_hopf(L.hopf)
    assert rep.ok
    assert rep.checks["antipode"][1].startswith("skipped")


def test_skew_primitives_of_C(C):
    one, a3 = el(C, {"1": ONE}), el(C, {"a^3": ONE})
    space = skew_primitives(C, one, a3)
    assert len(space) == 2
    # span{b a^2, 1 - a^3}
    from hopf12.exactmath import Echelon
    ech = Echelon()
    for v in space:
        ech.add(dict(v))
    assert ech.contains(el(C, {"b*a^2": ONE}))
    assert ech.contains(el(C, {"1": ONE, "a^3": -ONE}))
    assert skew_primitives(C, one, one) == []


def test_group_algebra_fixture():
    Z = zn_group_algebra(6)
    assert verify_hopf(Z, exhaustive=True).ok
    assert skew_primitives(Z, Z.unit, Z.unit) == []
    left, right, unimodular = integrals(Z)
    assert unimodular and len(left) == 1
    assert set(left[0]) == set(range(6)) and len(set(left[0].values())) == 1
    # the dual is the function algebra: six orthogonal idempotents
    F = dual_hopf(Z)
    for i in range(6):
        e = {i: ONE}
        assert F.mul(e, e) == e
        assert all(F.mul(e, {j: ONE}) == {} for j in range(6) if j != i)


def test_integrals(C, D):
    left, right, same = integrals(C)
    assert len(left) == len(right) == 1
    assert not same
    assert integrals(D)[2]


def test_grouplikes_of_C(C):
    gs, certified = grouplikes(C, certify=True)
    assert certified
    assert sorted(map(str, gs)) == sorted(map(str, [el(C, {"1": ONE}), el(C, {"a^3": ONE})]))
    assert all(is_grouplike(C, g) for g in gs)


def test_A1_is_the_dual_of_C(C, A1):
    phi = phi_A1_to_Cdual(A1, C, XI)
    assert verify_morphism(phi, A1, dual_hopf(C)).ok
    bad = phi.copy()
    g = A1.index("g")
    r = next(r for r in range(phi.rows) if phi[r, g])
    bad.data[r][g] = -bad.data[r][g]
    rep = verify_morphism(bad, A1, dual_hopf(C))
    assert not rep["algebra_map"]
    assert "fails at" in rep.checks["algebra_map"][1]


def test_identity_and_double_dual(C):
    I = Mat.identity(C.dim)
    assert verify_morphism(I, C, C).ok
    assert verify_morphism(I, C, dual_hopf(dual_hopf(C))).ok


def test_double_formula_agrees(C, A1, D):
    F = double_from_formula(C, FORMULA_CONVENTIONS[0])
    assert compare_doubles(D, F, C, A1).ok


def test_json_export_is_deterministic(C):
    assert C.dumps() == copy.deepcopy(C).dumps()
    doc = C.to_json()
    assert doc["basis"] == C.labels and doc["dim"] == 12
    rebuilt = FDHopf(C.labels, C.mult, C.unit, C.comult, C.counit, C.antipode)
    assert rebuilt.dumps().replace('"name": ""', '"name": "%s"' % C.name) == C.dumps()
