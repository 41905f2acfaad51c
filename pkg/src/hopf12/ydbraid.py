"""Yetter-Drinfeld modules over C built from modules over the double, with
braidings, duals and the diagonal labels of the associated rank-two braiding.

A YD module stores the action of each C basis element as a matrix and the
coaction as matrices ``gamma[c]`` with delta(v) = sum_c e_c (x) gamma[c] v.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .exactmath import ONE, XI, ZERO, CycQ6, Mat, kron, mat_rank, xi_pow
from .hopfcore import Report, antipode_inverse, build_C
from .repmod import LAMBDA_PAIRS, DMod, _letters


@lru_cache(maxsize=None)
def base_algebra():
    return build_C()


@lru_cache(maxsize=None)
def _s_inverse():
    return antipode_inverse(base_algebra())


def _lincomb(mats, coeffs: dict, n: int) -> Mat:
    out = Mat.zeros(n, n)
    for k, c in coeffs.items():
        out = out + mats[k].scale(c)
    return out


@dataclass
class YDMod:
    dim: int
    action: list        # action[c]: matrix of the C basis element c
    gamma: list         # delta(v) = sum_c e_c (x) gamma[c] v
    name: str = ""

    def act(self, u: dict) -> Mat:
        return _lincomb(self.action, u, self.dim)

    def coaction(self, k: int) -> list:
        """delta(e_k) as triples (C basis index, module index, coefficient)."""
        out = []
        for c, G in enumerate(self.gamma):
            for r in range(self.dim):
                if G[r, k]:
                    out.append((c, r, G[r, k]))
        return out

    def __repr__(self):
        return f"YDMod(dim={self.dim}, name={self.name!r})"


@dataclass
class BraidedVS:
    dim: int
    c: Mat

    def to_json(self) -> dict:
        d = self.dim
        triples = [[r, k, str(v)] for r, row in enumerate(self.c.data) for k, v in enumerate(row) if v]
        return {"dim": d, "size": d * d, "entries": triples}


# ---------------------------------------------------------------- construction

def yd_from_dmod(M: DMod, name: str = "") -> YDMod:
    """delta(v) = sum_c e_c (x) e_c^* . v, with the dual basis of C written in g, x:
    (a^j)^* = 1/6 sum_i xi^{ij} g^i and (b a^j)^* = 1/(6 theta) sum_i xi^{i(j+1)} x g^i."""
    C = base_algebra()
    n = M.dim
    action = [M.word(_letters(lab)) for lab in C.labels]
    gpow = [M.g ** i for i in range(6)]
    xg = [M.x @ G for G in gpow]
    sixth = CycQ6(1) / 6
    gamma = []
    for lab in C.labels:
        letters = _letters(lab)
        j = letters.count("a")
        if letters[:1] == ("b",):
            coeffs = {i: xi_pow(i * (j + 1)) * sixth / M.theta for i in range(6)}
            gamma.append(_lincomb(xg, coeffs, n))
        else:
            coeffs = {i: xi_pow(i * j) * sixth for i in range(6)}
            gamma.append(_lincomb(gpow, coeffs, n))
    return YDMod(n, action, gamma, name or (str(M.label) if M.label else ""))


def dmod_from_yd(Y: YDMod, theta: CycQ6 = XI) -> DMod:
    """Inverse of yd_from_dmod: g and x are recovered from the coaction."""
    C = base_algebra()
    n = Y.dim
    g = Mat.zeros(n, n)
    x = Mat.zeros(n, n)
    for k, lab in enumerate(C.labels):
        letters = _letters(lab)
        j = letters.count("a")
        if letters[:1] == ("b",):
            x = x + Y.gamma[k].scale(theta)
        else:
            g = g + Y.gamma[k].scale(xi_pow(-j))
    a = Y.action[C.index("a")]
    b = Y.action[C.index("b")]
    return DMod(n, a, b, g, x, None, theta)


# ---------------------------------------------------------------- verification

def _triple_coproduct(C, h: int) -> dict:
    out = {}
    for (p, q), c in C.comult[h].items():
        for (q1, q2), d in C.comult[q].items():
            key = (p, q1, q2)
            out[key] = out.get(key, ZERO) + c * d
    return {k: v for k, v in out.items() if v}


def verify_yd(Y: YDMod) -> Report:
    C = base_algebra()
    n, N = Y.dim, C.dim
    rep = Report(mode="yd")
    I = Mat.identity(n)

    ok = Y.action[C.index("1")] == I
    for i in range(N):
        for j in range(N):
            if not ok:
                break
            ok = Y.action[i] @ Y.action[j] == _lincomb(Y.action, C.mult[i][j], n)
    rep.record("module", ok)

    counit = _lincomb(Y.gamma, {c: e for c, e in enumerate(C.counit) if e}, n)
    ok = counit == I
    for p in range(N):
        for q in range(N):
            if not ok:
                break
            coeffs = {c: C.comult[c][(p, q)] for c in range(N) if (p, q) in C.comult[c]}
            ok = _lincomb(Y.gamma, coeffs, n) == Y.gamma[q] @ Y.gamma[p]
    rep.record("comodule", ok)

    # gamma[c'] rho(h) = sum over h1 (x) h2 (x) h3 and c of [h1 e_c S(h3)]_{c'} rho(h2) gamma[c]
    bad = []
    for h in range(N):
        lhs = [G @ Y.action[h] for G in Y.gamma]
        rhs = [Mat.zeros(n, n) for _ in range(N)]
        for (h1, h2, h3), coef in _triple_coproduct(C, h).items():
            for c in range(N):
                if Y.gamma[c].is_zero():
                    continue
                w = C.mul_many({h1: coef}, {c: ONE}, C.antipode[h3])
                if not w:
                    continue
                term = Y.action[h2] @ Y.gamma[c]
                for cp, k in w.items():
                    rhs[cp] = rhs[cp] + term.scale(k)
        if any(l != r for l, r in zip(lhs, rhs)):
            bad.append(C.labels[h])
    rep.record("yd_compatibility", not bad, ", ".join(bad))
    return rep


# ---------------------------------------------------------------- braidings

def _flip(m: int, n: int) -> Mat:
    """The swap V (x) W -> W (x) V, dim V = m, dim W = n."""
    P = Mat.zeros(m * n, m * n)
    for i in range(m):
        for j in range(n):
            P.data[j * m + i][i * n + j] = ONE
    return P


def braiding_between(V: YDMod, W: YDMod) -> Mat:
    """c(v (x) w) = v_(-1) . w (x) v_(0), as a map V (x) W -> W (x) V."""
    total = Mat.zeros(V.dim * W.dim, V.dim * W.dim)
    for c, G in enumerate(V.gamma):
        if not G.is_zero():
            total = total + kron(G, W.action[c])
    return _flip(V.dim, W.dim) @ total


def braiding(Y: YDMod) -> BraidedVS:
    return BraidedVS(Y.dim, braiding_between(Y, Y))


def braid_equation(B: BraidedVS) -> bool:
    I = Mat.identity(B.dim)
    c1 = kron(B.c, I)
    c2 = kron(I, B.c)
    return c1 @ c2 @ c1 == c2 @ c1 @ c2


def is_invertible(B: BraidedVS) -> bool:
    return mat_rank(B.c) == B.dim * B.dim


def dual_yd(Y: YDMod) -> YDMod:
    """Left dual: <h.f, v> = <f, S(h) v> and f_(-1)<f_(0), v> = S^-1(v_(-1))<f, v_(0)>."""
    C = base_algebra()
    Sinv = _s_inverse()
    n = Y.dim
    action = [Y.act(C.antipode[h]).transpose() for h in range(C.dim)]
    gamma = [Mat.zeros(n, n) for _ in range(C.dim)]
    for d, G in enumerate(Y.gamma):
        if G.is_zero():
            continue
        Gt = G.transpose()
        for c, k in Sinv[d].items():
            gamma[c] = gamma[c] + Gt.scale(k)
    return YDMod(n, action, gamma, Y.name + "*" if Y.name else "")


def tensor_yd(V: YDMod, W: YDMod) -> YDMod:
    C = base_algebra()
    action = []
    for h in range(C.dim):
        out = Mat.zeros(V.dim * W.dim, V.dim * W.dim)
        for (p, q), c in C.comult[h].items():
            out = out + kron(V.action[p], W.action[q]).scale(c)
        action.append(out)
    gamma = [Mat.zeros(V.dim * W.dim, V.dim * W.dim) for _ in range(C.dim)]
    for p, Gp in enumerate(V.gamma):
        if Gp.is_zero():
            continue
        for q, Gq in enumerate(W.gamma):
            if Gq.is_zero():
                continue
            K = kron(Gp, Gq)
            for c, k in C.mult[p][q].items():
                gamma[c] = gamma[c] + K.scale(k)
    return YDMod(V.dim * W.dim, action, gamma, f"{V.name}(x){W.name}")


def hexagon_check(U: YDMod, V: YDMod, W: YDMod) -> Report:
    """Both hexagon identities for the braiding of tensor products."""
    rep = Report(mode="hexagon")
    Iu, Iv, Iw = (Mat.identity(M.dim) for M in (U, V, W))
    # c_{U, V(x)W} = (id_V (x) c_{U,W}) (c_{U,V} (x) id_W)
    lhs = braiding_between(U, tensor_yd(V, W))
    rhs = kron(Iv, braiding_between(U, W)) @ kron(braiding_between(U, V), Iw)
    rep.record("left", lhs == rhs)
    # c_{U(x)V, W} = (c_{U,W} (x) id_V) (id_U (x) c_{V,W})
    lhs = braiding_between(tensor_yd(U, V), W)
    rhs = kron(braiding_between(U, W), Iv) @ kron(Iu, braiding_between(V, W))
    rep.record("right", lhs == rhs)
    return rep


# ---------------------------------------------------------------- diagonal labels

def in_lambda_star(i: int, j: int) -> bool:
    return (i * j) % 6 == 0 or ((i + 1) * (3 + j)) % 6 == 0


FINITE_PAIRS = [p for p in LAMBDA_PAIRS if not in_lambda_star(*p)]
INFINITE_PAIRS = [p for p in LAMBDA_PAIRS if in_lambda_star(*p)]


def diagonal_reduction(i: int, j: int):
    """Labels (q11, q12 q21, q22) of the rank-two diagonal braiding attached to V_{i,j}."""
    i, j = i % 6, j % 6
    if (i, j) not in LAMBDA_PAIRS:
        raise ValueError(f"({i},{j}) is not a simple two-dimensional label")
    return (-ONE, xi_pow(-j) * (-1) ** i, xi_pow(-i * j))


def diagonal_finite(i: int, j: int) -> bool:
    diagonal_reduction(i, j)
    return not in_lambda_star(i % 6, j % 6)


def closed_form_braiding(i: int, j: int) -> Mat:
    """The braiding of V_{i,j} in the basis v1 (x) v1, v1 (x) v2, v2 (x) v1, v2 (x) v2."""
    q = xi_pow
    c = Mat.zeros(4, 4)
    c.data[0][0] = q(-i * j)
    c.data[2][1] = q(-j * (i + 1))
    c.data[1][1] = q(-i * j) + q((3 - j) * (i + 1))
    c.data[1][2] = q(i * (3 - j))
    c.data[3][3] = q((3 - j) * (i + 1))
    c.data[0][3] = q(4 * i - i * j + 2 - j) + q(i - i * j + 2)
    return c
