"""Nichols algebras of braided vector spaces.

Tensors of degree m are sparse dicts keyed by words (tuples of basis indices of
V).  A braiding acts at adjacent positions p, p+1 (0-based here).  Graded
dimensions come from quantum symmetrizer ranks; relations are checked with
skew derivations and presentations are certified by comparing the graded
dimensions of the Diamond-lemma quotient with those ranks.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import permutations, product

from .exactmath import ONE, Echelon, Mat, nullspace_sparse
from .freealg import MonomialOrder, NCPoly, complete, graded_dims, parse_poly, quotient_basis
from .hopfcore import Report
from .repmod import Label, OneDim, TwoDim
from .ydbraid import BraidedVS

UNDETERMINED = "undetermined at cap"


def _add(out: dict, key, val):
    y = out.get(key)
    y = val if y is None else y + val
    if y:
        out[key] = y
    else:
        out.pop(key, None)


class _Braid:
    """Sparse view of a braiding: columns for c, rows for right multiplication."""

    def __init__(self, B: BraidedVS):
        d = B.dim
        self.d = d
        self.cols = {}
        self.rows = {}
        for r in range(d * d):
            for k in range(d * d):
                v = B.c[r, k]
                if v:
                    self.cols.setdefault(divmod(k, d), []).append((divmod(r, d), v))
                    self.rows.setdefault(divmod(r, d), []).append((divmod(k, d), v))

    def apply(self, vec: dict, p: int) -> dict:
        """c acting on positions p, p+1 of each word."""
        out = {}
        for w, x in vec.items():
            for (s, t), v in self.cols.get((w[p], w[p + 1]), ()):
                _add(out, w[:p] + (s, t) + w[p + 2:], x * v)
        return out

    def apply_right(self, row: dict, p: int) -> dict:
        """Row vector times c at positions p, p+1."""
        out = {}
        for w, x in row.items():
            for (s, t), v in self.rows.get((w[p], w[p + 1]), ()):
                _add(out, w[:p] + (s, t) + w[p + 2:], x * v)
        return out


def _axpy(out: dict, vec: dict, c=ONE):
    for k, v in vec.items():
        _add(out, k, c * v)


def words(d: int, n: int):
    return list(product(range(d), repeat=n))


# ---------------------------------------------------------------- symmetrizers

def _shift_sum(cb: _Braid, vec: dict, n: int) -> dict:
    """sum_{k=0}^{n-1} c_{n-1} ... c_{n-k} vec, evaluated as id + c_{n-1}(id + c_{n-2}(...))."""
    out = dict(vec)
    for q in range(1, n):
        out = cb.apply(out, q - 1)
        _axpy(out, vec)
    return out


def symmetrizer_columns(B: BraidedVS, n: int) -> dict:
    """Columns of the quantum symmetrizer of degree n, keyed by word."""
    cb = _Braid(B)
    d = B.dim
    cols = {(i,): {(i,): ONE} for i in range(d)}
    for m in range(2, n + 1):
        new = {}
        for w in words(d, m):
            mid = _shift_sum(cb, {w: ONE}, m)
            out = {}
            for u, x in mid.items():
                for u2, y in cols[u[:-1]].items():
                    _add(out, u2 + u[-1:], x * y)
            new[w] = out
        cols = new
    return cols


def _to_mat(cols: dict, d: int, n: int) -> Mat:
    ws = words(d, n)
    index = {w: k for k, w in enumerate(ws)}
    M = Mat.zeros(len(ws), len(ws))
    for w, col in cols.items():
        for u, x in col.items():
            M.data[index[u]][index[w]] = x
    return M


def symmetrizer(B: BraidedVS, n: int) -> Mat:
    """S_n = (S_{n-1} (x) id) (sum_k c_{n-1} ... c_{n-k})."""
    if n == 0:
        return Mat.identity(1)
    return _to_mat(symmetrizer_columns(B, n), B.dim, n)


def _reduced_word(perm):
    """Adjacent transpositions (0-based positions) whose product is perm."""
    p = list(perm)
    out = []
    changed = True
    while changed:
        changed = False
        for i in range(len(p) - 1):
            if p[i] > p[i + 1]:
                p[i], p[i + 1] = p[i + 1], p[i]
                out.append(i)
                changed = True
    return out[::-1]


def symmetrizer_by_permutations(B: BraidedVS, n: int) -> Mat:
    """Sum over all n! permutations of the braid lifts along reduced words."""
    cb = _Braid(B)
    cols = {}
    reduced = [_reduced_word(s) for s in permutations(range(n))]
    for w in words(B.dim, n):
        out = {}
        for word in reduced:
            vec = {w: ONE}
            for p in reversed(word):
                vec = cb.apply(vec, p)
            _axpy(out, vec)
        cols[w] = out
    return _to_mat(cols, B.dim, n)


@dataclass
class HilbertProfile:
    ranks: list
    finite: bool
    top_degree: int | None = None
    cap: int | None = None

    @property
    def total(self) -> int:
        return sum(self.ranks)

    @property
    def status(self) -> str:
        return "finite" if self.finite else UNDETERMINED

    def to_json(self) -> dict:
        return {"ranks": self.ranks, "total": self.total,
                "finite": self.finite if self.finite else UNDETERMINED,
                "top_degree": self.top_degree}


def quotient_rows(B: BraidedVS, max_degree: int):
    """Row bases of S_n for n = 1..max_degree, stopping after the first zero rank.

    rank S_n = rank((P (x) id) X_n) when the rows of P span the row space of S_{n-1}.
    """
    cb = _Braid(B)
    d = B.dim
    rows = [{(i,): ONE} for i in range(d)]
    out = [rows]
    for n in range(2, max_degree + 1):
        ech = Echelon()
        for r in rows:
            for l in range(d):
                row = {w + (l,): x for w, x in r.items()}
                total = dict(row)
                for p in range(n - 2, -1, -1):
                    row = cb.apply_right(row, p)
                    _axpy(total, row)
                ech.add(total)
        rows = [dict(r) for r in ech.basis()]
        out.append(rows)
        if not rows:
            break
    return out


def hilbert(B: BraidedVS, max_degree: int = 12) -> HilbertProfile:
    ranks = [1] + [len(r) for r in quotient_rows(B, max_degree)]
    if ranks[-1] == 0:
        while ranks and ranks[-1] == 0:
            ranks.pop()
        return HilbertProfile(ranks, True, len(ranks) - 1, max_degree)
    return HilbertProfile(ranks, False, None, max_degree)


# ---------------------------------------------------------------- skew derivations

def shuffle_coproduct(B: BraidedVS, p: dict, cb: _Braid | None = None) -> dict:
    """Component of bidegree (1, m-1) of the coproduct, as {letter: tensor of degree m-1}.

    Sum over k of c_1 c_2 ... c_{k-1} applied to p (the k-th factor moves to the
    front), evaluated as id + c_1(id + c_2(...)).
    """
    cb = cb or _Braid(B)
    by_len = {}
    for w, x in p.items():
        by_len.setdefault(len(w), {})[w] = x
    out = {}
    for m, part in by_len.items():
        if m == 0:
            continue
        acc = dict(part)
        for q in range(m - 1, 0, -1):
            acc = cb.apply(acc, q - 1)
            _axpy(acc, part)
        for u, y in acc.items():
            _add(out.setdefault(u[0], {}), u[1:], y)
    return {l: t for l, t in out.items() if t}


def derivation(B: BraidedVS, letter: int, p: dict, cb: _Braid | None = None) -> dict:
    """The skew derivation (f (x) id) of the (1, m-1) coproduct, f the dual basis vector."""
    return shuffle_coproduct(B, p, cb).get(letter, {})


def derivation_values(B: BraidedVS, p: dict, cb: _Braid | None = None) -> dict:
    """All iterated derivations down to degree 0: {(l_1, ..., l_m): scalar}.

    The key lists the letters in the order d_{l_1} d_{l_2} ... d_{l_m} p.
    """
    cb = cb or _Braid(B)
    layer = {(): p}
    out = {}
    while layer:
        nxt = {}
        for key, t in layer.items():
            if () in t:
                _add(out, key, t[()])
            rest = {w: x for w, x in t.items() if w}
            if not rest:
                continue
            for l, q in shuffle_coproduct(B, rest, cb).items():
                nxt[(l,) + key] = q
        layer = nxt
    return out


def poly_to_tensor(r: NCPoly) -> dict:
    return dict(r.terms)


def verify_relation(B: BraidedVS, r: NCPoly) -> bool:
    """True iff every word of skew derivations annihilates the homogeneous r."""
    if not r.is_homogeneous():
        raise ValueError("relation must be homogeneous")
    return not derivation_values(B, poly_to_tensor(r))


def in_symmetrizer_kernel(B: BraidedVS, r: NCPoly) -> bool:
    """Membership of r in the kernel of the symmetrizer of its degree."""
    t = poly_to_tensor(r)
    if not t:
        return True
    m = len(next(iter(t)))
    cols = symmetrizer_columns(B, m)
    out = {}
    for w, x in t.items():
        _axpy(out, cols[w], x)
    return not out


def derivation_kernel(B: BraidedVS, m: int) -> list:
    """Basis of the joint kernel of all m-fold skew derivations on T^m(V)."""
    cb = _Braid(B)
    ws = words(B.dim, m)
    keys = {}
    rows = {}
    for k, w in enumerate(ws):
        for key, x in derivation_values(B, {w: ONE}, cb).items():
            rows.setdefault(keys.setdefault(key, len(keys)), {})[k] = x
    return nullspace_sparse(rows.values(), len(ws))


def symmetrizer_kernel(B: BraidedVS, m: int) -> list:
    cols = symmetrizer_columns(B, m)
    ws = words(B.dim, m)
    index = {w: k for k, w in enumerate(ws)}
    rows = {}
    for w, col in cols.items():
        for u, x in col.items():
            rows.setdefault(index[u], {})[index[w]] = x
    return nullspace_sparse(rows.values(), len(ws))


def same_span(U: list, W: list) -> bool:
    ech = Echelon()
    for u in U:
        ech.add(dict(u))
    if ech.rank != len(U):
        return False
    return len(U) == len(W) and all(ech.contains(dict(w)) for w in W)


# ---------------------------------------------------------------- presentations

def _relation_order(d: int):
    names = tuple(f"v{k + 1}" for k in range(d))
    return names, MonomialOrder(names, names)


def quotient_dims(relations: list, d: int, cap: int) -> list:
    """Graded dimensions of T(V)/(relations) through degree cap (Diamond lemma)."""
    _, order = _relation_order(d)
    rs = complete(relations, order, degree_cap=cap)
    ws, _ = quotient_basis(rs, cap)
    return graded_dims(ws, cap)


def verify_presentation(B: BraidedVS, relations: list, expected: HilbertProfile) -> Report:
    rep = Report(mode="presentation")
    for r in relations:
        rep.record(f"relation {r!r}", verify_relation(B, r))
    if not expected.finite:
        rep.record("dimensions", False, "expected profile is not finite")
        return rep
    cap = expected.top_degree + 1
    dims = quotient_dims(relations, B.dim, cap)
    want = expected.ranks + [0] * (cap + 1 - len(expected.ranks))
    diverge = next((n for n in range(cap + 1) if dims[n] != want[n]), None)
    detail = "" if diverge is None else f"degree {diverge}: quotient {dims[diverge]}, expected {want[diverge]}"
    rep.record("dimensions", diverge is None, detail)
    return rep


def parse_relations(texts, d: int = 2, constants: dict | None = None) -> list:
    names, _ = _relation_order(d)
    return [parse_poly(t, names, constants) for t in texts]


# ---------------------------------------------------------------- infinite dimension

@dataclass
class Witness:
    side: str          # "direct" or "dual"
    vector: dict       # sparse coordinates in the basis of that side

    def to_json(self) -> dict:
        return {"side": self.side, "vector": {str(k): str(v) for k, v in self.vector.items()}}


def fixed_vector(B: BraidedVS, v: dict) -> bool:
    """c(v (x) v) = v (x) v."""
    d = B.dim
    vv = {}
    for i, x in v.items():
        for j, y in v.items():
            _add(vv, i * d + j, x * y)
    cvv = {}
    for k, x in vv.items():
        for r in range(d * d):
            if B.c[r, k]:
                _add(cvv, r, B.c[r, k] * x)
    return cvv == vv


def infinite_certificate(B: BraidedVS, candidates=None, dual: BraidedVS | None = None,
                         dual_candidates=None):
    """A vector with c(v (x) v) = v (x) v in V or in V*; either makes B(V) infinite."""
    cands = candidates if candidates is not None else [{k: ONE} for k in range(B.dim)]
    for v in cands:
        if fixed_vector(B, v):
            return Witness("direct", v)
    if dual is not None:
        cands = dual_candidates if dual_candidates is not None else [{k: ONE} for k in range(dual.dim)]
        for v in cands:
            if fixed_vector(dual, v):
                return Witness("dual", v)
    return None


# ---------------------------------------------------------------- presets

def _family_relations(i: int, j: int):
    """Defining relations of the finite-dimensional Nichols algebras, as text."""
    if (i, j) in ((2, 2), (2, 4)):
        return ["v2^2 + xi*v1^2", "v1*v2 - v2*v1", "v1^3"]
    if (i, j) in ((3, 1), (3, 5)):
        return ["v1^2", f"v1*v2 + xi^{-j % 6}*v2*v1", "v2^3"]
    if (i, j) in ((1, 1), (1, 5)):
        return ["v1^6", f"v1^2*v2 + xi^{j}*v2*v1^2 + (1 + xi^{j})*v1*v2*v1",
                "v1^3 + v2^2*v1 + v1*v2^2 + v2*v1*v2", "v1^2*v2 + v2*v1^2 + v1*v2*v1 + v2^3"]
    if (i, j) in ((4, 4), (4, 2)):
        k = (j - 3) % 6
        return ["v1^3", f"xi^{2 * k % 6}*v1^2*v2 + xi^{4 * k % 6}*v1*v2*v1 + v2*v1^2",
                "v2^6", f"v2^2*v1 + (xi^{5 * k % 6} + xi^{4 * k % 6})*v2*v1*v2 - v1*v2^2"]
    if (i, j) in ((4, 1), (4, 5)):
        return ["v1^3", "v2^3 - v1^2*v2 - v2*v1^2 + v1*v2*v1",
                "v2^2*v1 + v1*v2^2 - v2*v1*v2", f"xi^{j}*v1^2*v2 + xi^{5 * j % 6}*v2*v1^2 + v1*v2*v1"]
    if (i, j) in ((1, 4), (1, 2)):
        k = (j - 3) % 6
        return ["v1^3", "v2^3 + v1^2*v2 + v2*v1^2 + v1*v2*v1",
                "v2^2*v1 + v1*v2^2 + v2*v1*v2", f"xi^{2 * k % 6}*v1^2*v2 + xi^{4 * k % 6}*v1*v2*v1 + v2*v1^2"]
    raise KeyError((i, j))


@dataclass
class Preset:
    name: str
    label: object            # repmod.Label
    relations: list          # relation texts in v1, v2, ...
    total: int


def _presets():
    out = {}
    for k in (1, 3, 5):
        out[f"K_{k}"] = Preset(f"K_{k}", OneDim(k), ["v1^2"], 2)
    totals = {6: [(3, 1), (3, 5), (2, 2), (2, 4)], 18: [(4, 1), (4, 5), (1, 2), (1, 4)],
              36: [(1, 1), (1, 5), (4, 2), (4, 4)]}
    for total, pairs in totals.items():
        for i, j in pairs:
            out[f"V_{i}_{j}"] = Preset(f"V_{i}_{j}", TwoDim(i, j), _family_relations(i, j), total)
    return out


PRESETS = _presets()


def preset_label(name: str) -> Label:
    """Label for a preset name such as V_3_1, V3,1 or K_1."""
    m = re.fullmatch(r"([KVP])_?\{?(\d+)(?:[_,](\d+))?\}?", name.strip())
    if not m:
        raise ValueError(f"unrecognised module name {name!r}")
    kind, i, j = m.group(1), int(m.group(2)), m.group(3)
    if (kind == "V") != (j is not None):
        raise ValueError(f"{name!r}: V takes two indices, K and P take one")
    return Label(kind, i, int(j)) if j is not None else Label(kind, i)
