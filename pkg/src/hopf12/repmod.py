"""Modules over the double: the catalog of simple and projective modules,
tensor products, isomorphism tests and decomposition against the catalog."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .exactmath import (LAMBDA, ONE, XI, ZERO, CycQ6, Echelon, Mat, block_diag, det,
                        inverse, kron, mat_rank, nullspace_sparse, rank_kernel, xi_pow)
from .freealg import NCPoly, format_poly
from .hopfcore import Report, build_double, double_presentation

GENS = ("a", "b", "g", "x")


# ---------------------------------------------------------------- labels

@dataclass(frozen=True, order=True)
class Label:
    """Catalog entry: K (one-dimensional), V (two-dimensional simple),
    P (projective cover of K_i) or M (non-split extension M_l^k)."""

    kind: str
    i: int
    j: int = 0

    def __post_init__(self):
        if self.kind not in "KVPM" or len(self.kind) != 1:
            raise ValueError(f"unknown label kind {self.kind!r}")
        object.__setattr__(self, "i", self.i % 6)
        if self.kind == "V":
            object.__setattr__(self, "j", self.j % 6)
            if (3 * self.i - self.j) % 6 == 0:
                raise ValueError(f"({self.i},{self.j}) violates 3i != j mod 6")
        elif self.kind == "M":
            if self.j not in (0, 1, 2):
                raise ValueError("extension index k must lie in 0..2")
        elif self.j:
            raise ValueError(f"{self.kind} labels take one index")

    @property
    def dim(self) -> int:
        return {"K": 1, "V": 2, "P": 4, "M": 2}[self.kind]

    def __str__(self):
        if self.kind == "V":
            return f"V{self.i},{self.j}"
        if self.kind == "M":
            return f"M{self.i}^{self.j}"
        return f"{self.kind}{self.i}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        text = text.strip().replace("_", "").replace("(", "").replace(")", "")
        kind, rest = text[0].upper(), text[1:]
        if kind == "M":
            l, _, k = rest.partition("^")
            return cls("M", int(l), int(k))
        parts = [int(p) for p in rest.replace(",", " ").split()] if "," in rest else [int(rest)]
        return cls(kind, *parts)


def OneDim(i):
    return Label("K", i)


def TwoDim(i, j):
    return Label("V", i, j)


def Proj(j):
    return Label("P", j)


def Ext(l, k):
    return Label("M", l, k)


LAMBDA_PAIRS = [(i, j) for i in range(6) for j in range(6) if (3 * i - j) % 6]
SIMPLE_LABELS = [OneDim(i) for i in range(6)] + [TwoDim(i, j) for i, j in LAMBDA_PAIRS]
PROJECTIVE_LABELS = [Proj(j) for j in range(6)] + [TwoDim(i, j) for i, j in LAMBDA_PAIRS]
DECOMPOSITION_LABELS = [Proj(j) for j in range(6)] + [TwoDim(i, j) for i, j in LAMBDA_PAIRS] + \
    [OneDim(i) for i in range(6)]


# ---------------------------------------------------------------- modules

@dataclass
class DMod:
    dim: int
    a: Mat
    b: Mat
    g: Mat
    x: Mat
    label: Label | None = None
    theta: CycQ6 = XI

    def mat(self, name: str) -> Mat:
        return getattr(self, name)

    def mats(self):
        return {h: self.mat(h) for h in GENS}

    def word(self, letters) -> Mat:
        """Matrix of a product of generators (leftmost acts last)."""
        out = Mat.identity(self.dim)
        for h in letters:
            out = out @ self.mat(h)
        return out

    def evaluate(self, p: NCPoly) -> Mat:
        out = Mat.zeros(self.dim, self.dim)
        alphabet = p.alphabet
        for w, c in p.terms.items():
            out = out + self.word(alphabet[k] for k in w).scale(c)
        return out

    def __repr__(self):
        return f"DMod(dim={self.dim}, label={self.label})"


def _diag(values):
    return Mat.diag([c if isinstance(c, CycQ6) else CycQ6(c) for c in values])


def _mat(rows):
    return Mat([[c if isinstance(c, CycQ6) else CycQ6(c) for c in r] for r in rows])


def catalog(label: Label, theta: CycQ6 = XI) -> DMod:
    if isinstance(label, str):
        label = Label.parse(label)
    i, j = label.i, label.j
    if label.kind == "K":
        z = Mat.zeros(1, 1)
        return DMod(1, _diag([xi_pow(i)]), z, _diag([(-1) ** i]), z.copy(), label, theta)
    if label.kind == "V":
        a = _diag([xi_pow(i), xi_pow(i + 1)])
        b = _mat([[0, 1], [0, 0]])
        g = _diag([xi_pow(j), -xi_pow(j)])
        x = _mat([[0, theta.inv() * xi_pow(2 - i) * (xi_pow(3 * i) + xi_pow(j))],
                  [theta * xi_pow(i - 2) * (xi_pow(3 * i) - xi_pow(j)), 0]])
        return DMod(2, a, b, g, x, label, theta)
    if label.kind == "P":
        a = _diag([1, XI, xi_pow(5), 1])
        b = _mat([[0, 0, 0, 0], [0, 0, 0, 0], [theta, 0, 0, 0], [0, 1, 0, 0]])
        g = _diag([1, -1, -1, 1])
        x = _mat([[0, 0, 0, 0], [theta, 0, 0, 0], [2, 0, 0, 0], [0, 2 * theta, xi_pow(5), 0]])
        s, t = xi_pow(i), CycQ6((-1) ** i)
        return DMod(4, a.scale(s), b.scale(s), g.scale(t), x.scale(t), label, theta)
    if k_is_split(label.j):
        raise ValueError(f"M{i}^{j}: a and b force the b- and x-entries to vanish, "
                         "so the displayed matrices do not define a module")
    return extension_matrices(i, j, theta)


def k_is_split(k: int) -> bool:
    """For k = 1 the characters differ by xi^3 and ba = xi*ab kills the b-entry."""
    return k % 3 == 1


def extension_matrices(l: int, k: int, theta: CycQ6 = XI) -> DMod:
    """The displayed 2-dimensional extension matrices, without validation."""
    a = _diag([xi_pow(l), xi_pow(l + 2 * k + 1)])
    b = _mat([[0, (1 - xi_pow(2 * (k + 1))) * LAMBDA], [0, 0]])
    g = _diag([CycQ6((-1) ** l), CycQ6((-1) ** (l + 2 * k + 1))])
    x = _mat([[0, 2 * theta * XI * xi_pow(2 * l)], [0, 0]])
    return DMod(2, a, b, g, x, Label("M", l, k), theta)


def extension_space(l: int, m: int, theta: CycQ6 = XI) -> int:
    """Dimension of the space of (b, x) entries making K_m an extension of K_l
    (strictly upper triangular b, x on top of the two characters)."""
    rels = _relations(theta)
    cols = []
    for unknown in ("b", "x"):
        M = DMod(2, _diag([xi_pow(l), xi_pow(m)]), Mat.zeros(2, 2),
                 _diag([CycQ6((-1) ** l), CycQ6((-1) ** m)]), Mat.zeros(2, 2), None, theta)
        getattr(M, unknown).data[0][1] = ONE
        base = DMod(2, M.a, Mat.zeros(2, 2), M.g, Mat.zeros(2, 2), None, theta)
        cols.append([M.evaluate(r).data[0][1] - base.evaluate(r).data[0][1] for r in rels])
    _, ker = rank_kernel(Mat([[c[r] for c in cols] for r in range(len(rels))]))
    return len(ker)


@lru_cache(maxsize=None)
def _relations(theta: CycQ6):
    return tuple(double_presentation(theta).relations)


def verify_module(M: DMod) -> Report:
    rep = Report()
    for r in _relations(M.theta):
        rep.record(format_poly(r), M.evaluate(r).is_zero())
    return rep


def direct_sum(*mods) -> DMod:
    theta = mods[0].theta
    return DMod(sum(m.dim for m in mods),
                *(block_diag([m.mat(h) for m in mods]) for h in GENS), None, theta)


def tensor(M: DMod, N: DMod) -> DMod:
    """Tensor product through the coproduct of the double on generators."""
    c = xi_pow(4) + xi_pow(5)
    a = kron(M.a, N.a) + kron(M.word("baaa"), N.b).scale(c)
    b = kron(M.b, N.a) + kron(M.word("aaaa"), N.b)
    g = kron(M.g, N.g)
    x = kron(Mat.identity(M.dim), N.x) + kron(M.x, N.g)
    return DMod(M.dim * N.dim, a, b, g, x, None, M.theta)


def tensor_many(*mods) -> DMod:
    out = mods[0]
    for m in mods[1:]:
        out = tensor(out, m)
    return out


def conjugate(M: DMod, T: Mat) -> DMod:
    """The module transported along the invertible matrix T (h -> T h T^-1)."""
    Ti = inverse(T)
    return DMod(M.dim, *(T @ M.mat(h) @ Ti for h in GENS), M.label, M.theta)


@lru_cache(maxsize=None)
def _double(theta: CycQ6):
    return build_double(theta)


def act_element(M: DMod, u: dict) -> Mat:
    """Matrix of an element of the double (coordinates in its word basis)."""
    D = _double(M.theta)
    out = Mat.zeros(M.dim, M.dim)
    for i, c in u.items():
        out = out + M.word(_letters(D.labels[i])).scale(c)
    return out


def _letters(label: str):
    if label == "1":
        return ()
    out = []
    for part in label.split("*"):
        name, _, k = part.partition("^")
        out.extend([name] * (int(k) if k else 1))
    return tuple(out)


def dual_module(M: DMod) -> DMod:
    """Left dual: h acts on M* by the transpose of S(h)."""
    D = _double(M.theta)
    mats = [act_element(M, D.antipode[D.index(h)]).transpose() for h in GENS]
    return DMod(M.dim, *mats, None, M.theta)


# ---------------------------------------------------------------- homs and isomorphisms

def hom_space(M: DMod, N: DMod) -> list:
    """Basis of Hom(M, N): matrices T (N.dim x M.dim) with T [h]_M = [h]_N T."""
    m, n = M.dim, N.dim
    rows = []
    for h in GENS:
        A, B = M.mat(h), N.mat(h)
        # (T A - B T)[r][c] = sum_k T[r][k] A[k][c] - sum_k B[r][k] T[k][c]
        for r in range(n):
            for col in range(m):
                row = {}
                for k in range(m):
                    v = A.data[k][col]
                    if v:
                        key = r * m + k
                        row[key] = row.get(key, ZERO) + v
                for k in range(n):
                    v = B.data[r][k]
                    if v:
                        key = k * m + col
                        row[key] = row.get(key, ZERO) - v
                row = {k: v for k, v in row.items() if v}
                if row:
                    rows.append(row)
    out = []
    for v in nullspace_sparse(rows, m * n):
        out.append(Mat([[v.get(r * m + c, ZERO) for c in range(m)] for r in range(n)]))
    return out


def weights(M: DMod) -> dict:
    """Multiplicities of the joint eigenvalues of a and g (both act semisimply)."""
    out = {}
    for s in range(6):
        Ka = M.a - Mat.identity(M.dim).scale(xi_pow(s))
        for t in range(6):
            Kg = M.g - Mat.identity(M.dim).scale(xi_pow(t))
            stacked = Mat(Ka.data + Kg.data)
            k = M.dim - mat_rank(stacked)
            if k:
                out[(s, t)] = k
    return out


class Undetermined(Exception):
    """The search space was too large for an exhaustive non-existence proof."""


def find_isomorphism(M: DMod, N: DMod, grid_limit: int = 20000):
    """Return (T, certified).  T is an invertible intertwiner or None.

    When T is None and certified is true, no isomorphism exists: the
    determinant of a generic element of Hom(M, N) is a polynomial of degree
    <= dim in the coordinates, so it vanishes identically iff it vanishes on
    the grid {0..dim}^s.
    """
    if M.dim != N.dim or weights(M) != weights(N):
        return None, True
    H = hom_space(M, N)
    if not H:
        return None, True
    for T in H:
        if det(T):
            return T, True
    n, s = M.dim, len(H)
    pts = range(n + 1)
    if (n + 1) ** s <= grid_limit:
        for coeffs in product(pts, repeat=s):
            T = _combo(H, coeffs)
            if T is not None and det(T):
                return T, True
        return None, True
    rng = random.Random(0)
    for _ in range(200):
        T = _combo(H, [rng.randint(-9, 9) for _ in range(s)])
        if T is not None and det(T):
            return T, True
    return None, False


def _combo(H, coeffs):
    T = None
    for c, B in zip(coeffs, H):
        if c:
            T = B.scale(CycQ6(c)) if T is None else T + B.scale(CycQ6(c))
    return T


def is_isomorphic(M: DMod, N: DMod):
    """An invertible intertwiner T (T [h]_M = [h]_N T) or None."""
    T, certified = find_isomorphism(M, N)
    if T is None and not certified:
        raise Undetermined("no invertible intertwiner found by sampling")
    return T


def is_simple(M: DMod) -> bool:
    """No proper nonzero submodule: End is one-dimensional and no simple of
    smaller dimension maps in."""
    for L in SIMPLE_LABELS:
        if L.dim < M.dim and hom_space(catalog(L, M.theta), M):
            return False
    if M.dim > 2:
        return False
    return len(hom_space(M, M)) == 1


# ---------------------------------------------------------------- decomposition

class DecompositionError(ValueError):
    pass


@dataclass
class Decomposition:
    labels: list
    intertwiner: Mat               # columns: images of the summand bases
    summands: list = field(default_factory=list)

    def multiset(self) -> dict:
        out = {}
        for L in self.labels:
            out[L] = out.get(L, 0) + 1
        return out


@lru_cache(maxsize=None)
def _catalog_cached(label: Label, theta: CycQ6) -> DMod:
    return catalog(label, theta)


@lru_cache(maxsize=None)
def _label_weights(label: Label, theta: CycQ6):
    return tuple(sorted(weights(catalog(label, theta)).items()))


def decompose(M: DMod, labels=None, check: bool = True) -> Decomposition:
    """Write M as a direct sum of catalog modules with an explicit intertwiner.

    Candidates are tried projectives first; embeddings are chosen greedily
    among Hom basis vectors and small combinations, and the result is
    certified by checking that the block intertwiner is invertible and
    intertwines the actions.
    """
    theta = M.theta
    labels = DECOMPOSITION_LABELS if labels is None else labels
    remaining = dict(weights(M))
    chosen, columns = [], []
    ech = Echelon()
    for L in labels:
        wl = dict(_label_weights(L, theta))
        if any(remaining.get(k, 0) < v for k, v in wl.items()):
            continue
        C = _catalog_cached(L, theta)
        H = hom_space(C, M)
        if not H:
            continue
        trials = list(H) + _small_combinations(H)
        for T in trials:
            if any(remaining.get(k, 0) < v for k, v in wl.items()):
                break
            cols = [{r: T.data[r][c] for r in range(M.dim) if T.data[r][c]} for c in range(C.dim)]
            test = Echelon()
            test.pivots = {k: dict(v) for k, v in ech.pivots.items()}
            if all(test.add(c) for c in cols):
                ech = test
                chosen.append(L)
                columns.extend(cols)
                for k, v in wl.items():
                    remaining[k] -= v
        if len(columns) == M.dim:
            break
    if len(columns) != M.dim:
        raise DecompositionError(
            f"unknown summand: catalog covers {len(columns)} of {M.dim} dimensions "
            f"(found {', '.join(map(str, chosen)) or 'nothing'})")
    T = Mat([[col.get(r, ZERO) for col in columns] for r in range(M.dim)])
    summands = [_catalog_cached(L, theta) for L in chosen]
    if check:
        S = direct_sum(*summands)
        if not det(T) or any(not (M.mat(h) @ T == T @ S.mat(h)) for h in GENS):
            raise DecompositionError("block intertwiner failed certification")
    order = sorted(range(len(chosen)), key=lambda k: chosen[k])
    return Decomposition([chosen[k] for k in order], T, summands)


def _small_combinations(H):
    if len(H) < 2:
        return []
    out = []
    for coeffs in product(range(-1, 3), repeat=min(len(H), 4)):
        if sum(1 for c in coeffs if c) >= 2:
            out.append(_combo(H, coeffs))
    return [T for T in out if T is not None]


def multiset_of(labels) -> dict:
    out = {}
    for L in labels:
        out[L] = out.get(L, 0) + 1
    return out


# ---------------------------------------------------------------- fusion rules

def predicted_tensor(L1: Label, L2: Label) -> list:
    """Tensor product rules among simples and projective covers."""
    k1, k2 = L1.kind, L2.kind
    if k1 == "K" and k2 == "K":
        return [OneDim(L1.i + L2.i)]
    if k1 == "V" and k2 == "K":
        return [TwoDim(L1.i + L2.i, L1.j + 3 * L2.i)]
    if k1 == "K" and k2 == "V":
        return [TwoDim(L2.i + L1.i, L2.j + 3 * L1.i)]
    if k1 == "K" and k2 == "P":
        return [Proj(L1.i + L2.i)]
    if k1 == "P" and k2 == "K":
        return [Proj(L1.i + L2.i)]
    if k1 == "V" and k2 == "V":
        i, j, k, l = L1.i, L1.j, L2.i, L2.j
        if (3 * (i + k) - j - l) % 6 == 0:
            return [Proj(i + k + 1)]
        return sorted([TwoDim(i + k, j + l), TwoDim(i + k + 1, j + l + 3)])
    if k1 == "P" and k2 == "P":
        s = L1.i + L2.i
        return sorted([Proj(s), Proj(s), Proj(s + 1), Proj(s + 5)])
    if {k1, k2} == {"V", "P"}:
        V, P = (L1, L2) if k1 == "V" else (L2, L1)
        i, j, k = V.i, V.j, P.i
        return sorted([TwoDim(i + k, j + 3 * k), TwoDim(i + k, j + 3 * k),
                       TwoDim(i + 1 + k, j + 3 + 3 * k), TwoDim(i + 5 + k, j + 3 + 3 * k)])
    raise ValueError(f"no rule for {L1} (x) {L2}")


def fusion(L1: Label, L2: Label, theta: CycQ6 = XI) -> list:
    """Computed decomposition of the tensor product of two catalog modules."""
    M = tensor(_catalog_cached(L1, theta), _catalog_cached(L2, theta))
    return decompose(M).labels


# ---------------------------------------------------------------- class ring

def _y(k: int) -> Label:
    return OneDim(1) if k == 0 else TwoDim(0, k)


def _monomial_labels(factors, theta):
    """Decomposition of a tensor product of generator modules y_k."""
    if not factors:
        return [OneDim(0)]
    M = tensor_many(*[_catalog_cached(_y(k), theta) for k in factors])
    return decompose(M).labels


def class_ring_check(theta: CycQ6 = XI) -> Report:
    """Check the relations of the projective class ring as decomposition identities.

    Generators: y0 = [K1] and yj = [V0,j] for j = 1..5.
    """
    rep = Report(mode="tensor + decompose")

    def same(lhs_terms, rhs_terms):
        lhs, rhs = [], []
        for coeff, fs in lhs_terms:
            lhs.extend(_monomial_labels(fs, theta) * coeff)
        for coeff, fs in rhs_terms:
            rhs.extend(_monomial_labels(fs, theta) * coeff)
        return multiset_of(lhs) == multiset_of(rhs)

    rep.record("y0^6 = 1", same([(1, [0] * 6)], [(1, [])]))
    for j in range(1, 6):
        rep.record(f"y{j}*y{6 - j} = y3^2", same([(1, [j, 6 - j])], [(1, [3, 3])]))
    for k in range(1, 6):
        for l in range(1, 6):
            if 1 <= k + l <= 5:
                rep.record(f"y{k}*y{l} = y{k + l} + y{k + l}*y0",
                           same([(1, [k, l])], [(1, [k + l]), (1, [k + l, 0])]))
    for i in range(1, 6):
        rep.record(f"y{i}*y3^2 = 2*y{i}*y0 + y{i}*y0^2 + y{i}",
                   same([(1, [i, 3, 3])], [(2, [i, 0]), (1, [i, 0, 0]), (1, [i])]))
    return rep


def class_ring_image(label: Label) -> str:
    """The basis monomial a catalog module corresponds to in the class ring."""
    if label.kind == "K":
        return f"y0^{label.i}"
    if label.kind == "P":
        return f"y3^2*y0^{(label.i - 1) % 6}"
    if label.kind == "V":
        return f"y{(label.j - 3 * label.i) % 6}*y0^{label.i}"
    raise ValueError("extensions are outside the projective class ring")


# ---------------------------------------------------------------- M_l^k shape

def regular_module(theta: CycQ6 = XI) -> DMod:
    """The left regular module of the double."""
    D = _double(theta)
    mats = []
    for h in GENS:
        hi = D.index(h)
        mats.append(Mat([[D.mult[hi][c].get(r, ZERO) for c in range(D.dim)] for r in range(D.dim)]))
    return DMod(D.dim, *mats, None, theta)
