"""Finite-dimensional Hopf algebras given by structure constants.

Elements are sparse dicts ``{basis index: CycQ6}``; elements of H (x) H are dicts
``{(i, j): CycQ6}``.  Builders produce the 12-dimensional algebra C (generated by
a, b), the pointed algebra A1 (generated by g, x) and the 144-dimensional double.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .exactmath import (ONE, ZERO, XI, CycQ6, Echelon, Mat, format_cyc, inverse,
                        nullspace_sparse, rank_kernel, xi_pow)
from .freealg import (Presentation, RewriteSystem, format_word, load_fixture,
                      quotient_basis, structure_constants)


# ---------------------------------------------------------------- sparse helpers

def vadd(u: dict, v: dict, c: CycQ6 = ONE) -> dict:
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, ZERO) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vscale(u: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in u.items()}


def _acc(out: dict, key, val):
    y = out.get(key)
    y = val if y is None else y + val
    if y:
        out[key] = y
    else:
        out.pop(key, None)


@dataclass
class FDHopf:
    """Structure constants of a finite-dimensional bialgebra or Hopf algebra."""

    labels: list
    mult: list                      # mult[i][j] -> sparse dict
    unit: dict
    comult: list                    # comult[i] -> {(j, k): c}
    counit: list                    # counit[i] -> CycQ6
    antipode: list | None = None    # antipode[i] -> sparse dict
    generators: list = field(default_factory=list)
    name: str = ""

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def basis(self, label) -> dict:
        return {self.index(label) if isinstance(label, str) else label: ONE}

    # products
    def mul(self, u: dict, v: dict) -> dict:
        out = {}
        m = self.mult
        for i, x in u.items():
            row = m[i]
            for j, y in v.items():
                xy = x * y
                for k, z in row[j].items():
                    _acc(out, k, xy * z)
        return out

    def mul_many(self, *elems) -> dict:
        out = self.unit
        for e in elems:
            out = self.mul(out, e)
        return out

    def power(self, u: dict, k: int) -> dict:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, u)
        return out

    def comul(self, u: dict) -> dict:
        out = {}
        for i, x in u.items():
            for jk, y in self.comult[i].items():
                _acc(out, jk, x * y)
        return out

    def eps(self, u: dict) -> CycQ6:
        acc = ZERO
        for i, x in u.items():
            c = self.counit[i]
            if c:
                acc = acc + x * c
        return acc

    def S(self, u: dict) -> dict:
        out = {}
        for i, x in u.items():
            for k, y in self.antipode[i].items():
                _acc(out, k, x * y)
        return out

    def tmul(self, T1: dict, T2: dict) -> dict:
        """Product in H (x) H."""
        out = {}
        m = self.mult
        for (i, j), x in T1.items():
            mi, mj = m[i], m[j]
            for (k, l), y in T2.items():
                xy = x * y
                left, right = mi[k], mj[l]
                for p, u in left.items():
                    xyu = xy * u
                    for q, v in right.items():
                        _acc(out, (p, q), xyu * v)
        return out

    def tensor(self, u: dict, v: dict) -> dict:
        return {(i, j): x * y for i, x in u.items() for j, y in v.items()}

    def element_str(self, u: dict) -> str:
        if not u:
            return "0"
        return " + ".join(f"({format_cyc(c)})*{self.labels[i]}" for i, c in sorted(u.items()))

    # JSON
    def to_json(self) -> dict:
        def vec(u):
            return [[i, format_cyc(c)] for i, c in sorted(u.items())]
        return {
            "name": self.name,
            "dim": self.dim,
            "basis": list(self.labels),
            "unit": vec(self.unit),
            "mult": [[i, j, k, format_cyc(c)] for i in range(self.dim) for j in range(self.dim)
                     for k, c in sorted(self.mult[i][j].items())],
            "comult": [[i, j, k, format_cyc(c)] for i in range(self.dim)
                       for (j, k), c in sorted(self.comult[i].items())],
            "counit": vec({i: c for i, c in enumerate(self.counit) if c}),
            "antipode": None if self.antipode is None else
            [[i, k, format_cyc(c)] for i in range(self.dim) for k, c in sorted(self.antipode[i].items())],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


# ---------------------------------------------------------------- from presentations

def generator_chain(H: FDHopf, generators=None):
    """Express every basis element as ``c * e_prev * e_gen`` (breadth first).

    Returns ``{t: (prev, gen, c)}`` with the unit mapped to ``(None, None, 1)``,
    or ``None`` when the generators do not reach every basis element this way.
    """
    gens = H.generators if generators is None else generators
    if len(H.unit) != 1 or next(iter(H.unit.values())) != ONE:
        return None
    u = next(iter(H.unit))
    chain = {u: (None, None, ONE)}
    frontier = [u]
    while frontier:
        nxt = []
        for t in frontier:
            for s in gens:
                p = H.mult[t][s]
                if len(p) == 1:
                    (k, c), = p.items()
                    if k not in chain:
                        chain[k] = (t, s, c.inv())
                        nxt.append(k)
        frontier = nxt
    return chain if len(chain) == H.dim else None


def from_rewrite_system(rs: RewriteSystem, coproduct: dict, counit: dict,
                        antipode: dict | None = None, name: str = "",
                        basis=None) -> FDHopf:
    """Hopf structure on the quotient basis; the maps are given on letters
    (as polynomials in letter names) and extended (anti)multiplicatively."""
    if basis is None:
        basis, finite = quotient_basis(rs)
        if not finite:
            raise ValueError("quotient is not certified finite at the cap")
    alphabet = rs.alphabet
    labels = [format_word(w, alphabet) for w in basis]
    index = {w: i for i, w in enumerate(basis)}
    table = structure_constants(rs, basis)
    unit = {index[()]: ONE}
    H = FDHopf(labels, table, unit, [None] * len(basis), [ZERO] * len(basis), name=name)
    H.generators = [index[(a,)] for a in range(len(alphabet)) if (a,) in index]

    def elem(poly_terms):
        out = {}
        for w, c in poly_terms.items():
            for k, x in rs.reduce_terms({w: ONE}).items():
                _acc(out, index[k], c * x)
        return out

    letter_delta = {}
    letter_eps = {}
    letter_S = {}
    for a, name_ in enumerate(alphabet):
        terms = coproduct[name_]
        letter_delta[a] = {}
        for (lw, rw), c in terms.items():
            left, right = elem({lw: ONE}), elem({rw: ONE})
            for i, x in left.items():
                for j, y in right.items():
                    _acc(letter_delta[a], (i, j), c * x * y)
        letter_eps[a] = counit[name_]
        if antipode is not None:
            letter_S[a] = elem(antipode[name_])
    # extend along words: e_w = e_{w[:-1]} * letter
    for w in sorted(basis, key=len):
        i = index[w]
        if not w:
            H.comult[i] = {(i, i): ONE}
            H.counit[i] = ONE
            continue
        prev = index[w[:-1]]
        H.comult[i] = H.tmul(H.comult[prev], letter_delta[w[-1]])
        H.counit[i] = H.counit[prev] * letter_eps[w[-1]]
    if antipode is not None:
        S = [None] * len(basis)
        for w in sorted(basis, key=len):
            i = index[w]
            if not w:
                S[i] = dict(unit)
            else:
                S[i] = H.mul(letter_S[w[-1]], S[index[w[:-1]]])
        H.antipode = S
    return H


def _w(alphabet, text: str):
    """Word tuple from letters separated by spaces, e.g. 'b a a a'."""
    return tuple(alphabet.index(ch) for ch in text.split()) if text else ()


def build_C() -> FDHopf:
    pres = load_fixture("C.pres")
    rs = pres.complete()
    al = pres.alphabet
    w = lambda t: _w(al, t)
    c = xi_pow(4) + xi_pow(5)
    coproduct = {
        "a": {(w("a"), w("a")): ONE, (w("b"), w("b a a a")): c},
        "b": {(w("b"), w("a a a a")): ONE, (w("a"), w("b")): ONE},
    }
    counit = {"a": ONE, "b": ZERO}
    antipode = {"a": {w("a a a a a"): ONE}, "b": {w("b a"): xi_pow(-2)}}
    return from_rewrite_system(rs, coproduct, counit, antipode, name="C")


def build_A1() -> FDHopf:
    pres = load_fixture("A1.pres")
    rs = pres.complete()
    al = pres.alphabet
    w = lambda t: _w(al, t)
    coproduct = {
        "g": {(w("g"), w("g")): ONE},
        "x": {(w("x"), ()): ONE, (w("g"), w("x")): ONE},
    }
    counit = {"g": ONE, "x": ZERO}
    antipode = {"g": {w("g g g g g"): ONE}, "x": {w("g g g g g x"): -ONE}}
    return from_rewrite_system(rs, coproduct, counit, antipode, name="A1")


def double_presentation(theta: CycQ6 = XI) -> Presentation:
    return load_fixture("D.pres", {"theta": theta})


def build_double(theta: CycQ6 = XI) -> FDHopf:
    """The double generated by a, b, g, x with its coproduct on generators.

    The antipode on a, b is the inverse of C's antipode (the algebra a, b
    generate is a copy of C with the opposite coproduct); on g and x it solves
    the convolution identity directly from the coproduct.
    """
    pres = double_presentation(theta)
    rs = pres.complete()
    al = pres.alphabet
    w = lambda t: _w(al, t)
    c = xi_pow(4) + xi_pow(5)
    coproduct = {
        "a": {(w("a"), w("a")): ONE, (w("b a a a"), w("b")): c},
        "b": {(w("b"), w("a")): ONE, (w("a a a a"), w("b")): ONE},
        "g": {(w("g"), w("g")): ONE},
        "x": {((), w("x")): ONE, (w("x"), w("g")): ONE},
    }
    counit = {"a": ONE, "b": ZERO, "g": ONE, "x": ZERO}
    C = build_C()
    Sinv = antipode_inverse(C)
    antipode = {
        "a": _relabel_C(C, Sinv[C.index("a")], al),
        "b": _relabel_C(C, Sinv[C.index("b")], al),
        "g": {w("g g g g g"): ONE},
        "x": {w("x g g g g g"): -ONE},
    }
    return from_rewrite_system(rs, coproduct, counit, antipode, name="D")


def _relabel_C(C: FDHopf, u: dict, alphabet) -> dict:
    """An element of C written as a polynomial in the letters a, b of another alphabet."""
    out = {}
    for i, c in u.items():
        label = C.labels[i]
        word = ()
        if label != "1":
            for part in label.split("*"):
                name, _, k = part.partition("^")
                word += (alphabet.index(name),) * (int(k) if k else 1)
        out[word] = c
    return out


def antipode_inverse(H: FDHopf) -> list:
    n = H.dim
    S = Mat.zeros(n, n)
    for i in range(n):
        for k, c in H.antipode[i].items():
            S.data[k][i] = c
    Si = inverse(S)
    return [{k: Si.data[k][i] for k in range(n) if Si.data[k][i]} for i in range(n)]


# ---------------------------------------------------------------- verification

@dataclass
class Report:
    checks: dict = field(default_factory=dict)   # name -> (ok, detail)
    mode: str = ""

    def record(self, name, ok, detail=""):
        self.checks[name] = (bool(ok), detail)

    @property
    def ok(self) -> bool:
        return all(ok for ok, _ in self.checks.values())

    def failures(self):
        return {k: d for k, (ok, d) in self.checks.items() if not ok}

    def __getitem__(self, name):
        return self.checks[name][0]


def _tensor3_left(H: FDHopf, T: dict) -> dict:
    """(Delta (x) id) applied to T in H (x) H."""
    out = {}
    for (i, j), c in T.items():
        for (p, q), d in H.comult[i].items():
            _acc(out, (p, q, j), c * d)
    return out


def _tensor3_right(H: FDHopf, T: dict) -> dict:
    out = {}
    for (i, j), c in T.items():
        for (p, q), d in H.comult[j].items():
            _acc(out, (i, p, q), c * d)
    return out


def _conv_S_id(H: FDHopf, T: dict, left: bool = True) -> dict:
    """m (S (x) id) T  or  m (id (x) S) T."""
    out = {}
    for (i, j), c in T.items():
        if left:
            p = H.mul(H.antipode[i], {j: ONE})
        else:
            p = H.mul({i: ONE}, H.antipode[j])
        for k, x in p.items():
            _acc(out, k, c * x)
    return out


def verify_hopf(H: FDHopf, exhaustive: bool | None = None) -> Report:
    """Check the bialgebra axioms (and the antipode when present).

    Exhaustive mode checks every basis pair/triple.  Generator mode checks
    products against generators only; this is complete because every basis
    element is a scalar times (basis element) * (generator), see
    :func:`generator_chain`, so associativity, multiplicativity of the
    counit/coproduct and anti-multiplicativity of the antipode propagate by
    induction, and coassociativity, the counit law and the antipode law then
    only need checking on generators.
    """
    n = H.dim
    chain = None
    if exhaustive is None:
        exhaustive = n <= 24
    if not exhaustive:
        chain = generator_chain(H)
        if chain is None:
            exhaustive = True
    rep = Report(mode="exhaustive" if exhaustive else "generators")
    basis = [{i: ONE} for i in range(n)]
    seconds = list(range(n)) if exhaustive else list(H.generators)
    if not exhaustive:
        rep.record("generator_chain", True, f"{len(H.generators)} generators reach all {n} basis elements")

    # unit
    bad = next((i for i in range(n) if H.mul(H.unit, basis[i]) != basis[i]
                or H.mul(basis[i], H.unit) != basis[i]), None)
    rep.record("unit", bad is None, "" if bad is None else f"fails at {H.labels[bad]}")

    # associativity
    bad = None
    m = H.mult
    for i in range(n):
        if bad:
            break
        for j in range(n):
            p = m[i][j]
            for k in seconds:
                left = {}
                for t, c in p.items():
                    for u, d in m[t][k].items():
                        _acc(left, u, c * d)
                right = {}
                for t, c in m[j][k].items():
                    for u, d in m[i][t].items():
                        _acc(right, u, c * d)
                if left != right:
                    bad = (i, j, k)
                    break
            if bad:
                break
    rep.record("associativity", bad is None,
               "" if bad is None else "fails at " + ",".join(H.labels[t] for t in bad))

    # counit and coproduct multiplicative
    unit_t = H.tensor(H.unit, H.unit)
    bad = None
    if H.comul(H.unit) != unit_t or H.eps(H.unit) != ONE:
        bad = ("unit",)
    for i in range(n):
        if bad:
            break
        for j in seconds:
            prod = m[i][j]
            if H.eps(prod) != H.counit[i] * H.counit[j]:
                bad = (i, j, "counit")
                break
            if H.comul(prod) != H.tmul(H.comult[i], H.comult[j]):
                bad = (i, j, "coproduct")
                break
    rep.record("bialgebra_compat", bad is None, "" if bad is None else f"fails at {bad}")

    targets = range(n) if exhaustive else H.generators
    bad = next((i for i in targets
                if _tensor3_left(H, H.comult[i]) != _tensor3_right(H, H.comult[i])), None)
    rep.record("coassociativity", bad is None, "" if bad is None else f"fails at {H.labels[bad]}")

    def counit_ok(i):
        left, right = {}, {}
        for (p, q), c in H.comult[i].items():
            if H.counit[p]:
                _acc(left, q, c * H.counit[p])
            if H.counit[q]:
                _acc(right, p, c * H.counit[q])
        return left == basis[i] and right == basis[i]
    bad = next((i for i in targets if not counit_ok(i)), None)
    rep.record("counit", bad is None, "" if bad is None else f"fails at {H.labels[bad]}")

    if H.antipode is None:
        rep.record("antipode", True, "skipped: no antipode supplied")
        return rep
    bad = None
    if H.S(H.unit) != H.unit:
        bad = "S(1)"
    if not exhaustive and bad is None:
        for i in range(n):
            for s in H.generators:
                if H.S(m[i][s]) != H.mul(H.antipode[s], H.antipode[i]):
                    bad = f"anti-multiplicativity at {H.labels[i]}, {H.labels[s]}"
                    break
            if bad:
                break
    if bad is None:
        for i in targets:
            target = vscale(H.unit, H.counit[i])
            if _conv_S_id(H, H.comult[i], True) != target or _conv_S_id(H, H.comult[i], False) != target:
                bad = f"convolution identity at {H.labels[i]}"
                break
    rep.record("antipode", bad is None, bad or "")
    return rep


# ---------------------------------------------------------------- subspaces

def _solve_linear_map(columns: list, n_unknowns: int):
    """Kernel of the linear map whose i-th column is the sparse dict columns[i]."""
    rows = {}
    for i, col in enumerate(columns):
        for key, c in col.items():
            rows.setdefault(key, {})[i] = c
    return nullspace_sparse(rows.values(), n_unknowns)


def is_grouplike(H: FDHopf, u: dict) -> bool:
    return bool(u) and H.comul(u) == H.tensor(u, u)


def skew_primitives(H: FDHopf, g: dict, h: dict) -> list:
    """Basis of {x : Delta(x) = x (x) g + h (x) x} for grouplike g, h."""
    if not (is_grouplike(H, g) and is_grouplike(H, h)):
        raise ValueError("skew-primitives need grouplike arguments")
    cols = []
    for i in range(H.dim):
        col = dict(H.comult[i])
        for k, c in g.items():
            _acc(col, (i, k), -c)
        for k, c in h.items():
            _acc(col, (k, i), -c)
        cols.append(col)
    return _solve_linear_map(cols, H.dim)


def integrals(H: FDHopf):
    """Left and right integral spaces and whether they coincide."""
    elems = H.generators if generator_chain(H) is not None else range(H.dim)
    left_rows, right_rows = [], []
    for x in elems:
        e = H.counit[x]
        colsL, colsR = [], []
        for t in range(H.dim):
            cl = dict(H.mult[x][t])
            cr = dict(H.mult[t][x])
            if e:
                _acc(cl, t, -e)
                _acc(cr, t, -e)
            colsL.append(cl)
            colsR.append(cr)
        left_rows.append(colsL)
        right_rows.append(colsR)

    def kernel(blocks):
        rows = {}
        for b, cols in enumerate(blocks):
            for t, col in enumerate(cols):
                for k, c in col.items():
                    rows.setdefault((b, k), {})[t] = c
        return nullspace_sparse(rows.values(), H.dim)

    L, R = kernel(left_rows), kernel(right_rows)
    ech = Echelon()
    for v in L:
        ech.add(v)
    same = len(L) == len(R) and all(ech.contains(v) for v in R)
    return L, R, same


# ---------------------------------------------------------------- duals and morphisms

def dual_hopf(H: FDHopf, prefix: str = "f") -> FDHopf:
    """The dual Hopf algebra in the dual basis."""
    n = H.dim
    mult = [[{} for _ in range(n)] for _ in range(n)]
    for k in range(n):
        for (i, j), c in H.comult[k].items():
            mult[i][j][k] = c
    comult = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in H.mult[i][j].items():
                comult[k][(i, j)] = c
    unit = {i: c for i, c in enumerate(H.counit) if c}
    counit = [H.unit.get(i, ZERO) for i in range(n)]
    antipode = None
    if H.antipode is not None:
        antipode = [dict() for _ in range(n)]
        for i in range(n):
            for k, c in H.antipode[i].items():
                antipode[k][i] = c
    labels = [f"{prefix}[{l}]" for l in H.labels]
    return FDHopf(labels, mult, unit, comult, counit, antipode, [], name=f"{H.name}*")


def verify_morphism(phi: Mat, H1: FDHopf, H2: FDHopf) -> Report:
    """phi has the image of the i-th basis vector of H1 as its i-th column."""
    rep = Report()
    cols = phi.sparse_cols()

    def image(u):
        out = {}
        for i, c in u.items():
            for k, d in cols[i].items():
                _acc(out, k, c * d)
        return out

    n = H1.dim
    rep.record("unit", image(H1.unit) == H2.unit)
    bad = None
    for i in range(n):
        for j in range(n):
            if image(H1.mult[i][j]) != H2.mul(cols[i], cols[j]):
                bad = (H1.labels[i], H1.labels[j])
                break
        if bad:
            break
    rep.record("algebra_map", bad is None, "" if bad is None else f"fails at {bad}")
    bad = None
    for i in range(n):
        lhs = {}
        for (p, q), c in H1.comult[i].items():
            for k, x in cols[p].items():
                for l, y in cols[q].items():
                    _acc(lhs, (k, l), c * x * y)
        if lhs != H2.comul(cols[i]) or H2.eps(cols[i]) != H1.counit[i]:
            bad = H1.labels[i]
            break
    rep.record("coalgebra_map", bad is None, "" if bad is None else f"fails at {bad}")
    rank, _ = rank_kernel(phi)
    rep.record("bijective", rank == n == H2.dim, f"rank {rank}")
    return rep


def phi_A1_to_Cdual(A1: FDHopf, C: FDHopf, theta: CycQ6 = XI) -> Mat:
    """The isomorphism A1 -> C* sending g^i, g^i x to characters/skew functionals."""
    phi = Mat.zeros(C.dim, A1.dim)
    for i in range(6):
        gi = A1.index(_power_label("g", i))
        gix = A1.index(_power_label("g", i, "x"))
        for j in range(6):
            phi.data[C.index(_power_label("a", j))][gi] = xi_pow(-i * j)
            phi.data[C.index(_power_label("b", 1, _power_label("a", j)))][gix] = \
                theta * xi_pow(-(j + 1) * i)
    return phi


def _power_label(letter: str, k: int, tail: str = "") -> str:
    head = "" if k == 0 else (letter if k == 1 else f"{letter}^{k}")
    if tail in ("", "1"):
        return head or "1"
    return f"{head}*{tail}" if head else tail


def zn_group_algebra(n: int = 6) -> FDHopf:
    labels = [_power_label("g", i) for i in range(n)]
    mult = [[{(i + j) % n: ONE} for j in range(n)] for i in range(n)]
    comult = [{(i, i): ONE} for i in range(n)]
    antipode = [{(-i) % n: ONE} for i in range(n)]
    return FDHopf(labels, mult, {0: ONE}, comult, [ONE] * n, antipode, [1 % n], name=f"kZ{n}")


# ---------------------------------------------------------------- grouplikes

def _charpoly(T: Mat):
    """Characteristic polynomial coefficients (highest first) by Faddeev-LeVerrier."""
    n = T.rows
    coeffs = [ONE]
    M = Mat.zeros(n, n)
    I = Mat.identity(n)
    for k in range(1, n + 1):
        M = T @ M + I.scale(coeffs[-1])
        TM = T @ M
        tr = ZERO
        for i in range(n):
            tr = tr + TM.data[i][i]
        coeffs.append(-tr / k)
    return coeffs


def _poly_eval(coeffs, x):
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def _poly_divide_root(coeffs, r):
    out = [coeffs[0]]
    for c in coeffs[1:-1]:
        out.append(c + out[-1] * r)
    return out


def _norm_elements(N: int):
    """All a + b*xi in Z[xi] with a^2 + ab + b^2 = N."""
    out = []
    bmax = int((4 * N / 3) ** 0.5) + 1
    for b in range(-bmax, bmax + 1):
        disc = 4 * N - 3 * b * b
        if disc < 0:
            continue
        s = _isqrt(disc)
        if s * s != disc:
            continue
        for num in {-b + s, -b - s}:
            if num % 2 == 0:
                out.append(CycQ6(num // 2, b))
    return out


def _isqrt(n):
    from math import isqrt
    return isqrt(n)


def roots_in_field(coeffs) -> list:
    """Roots in Q(xi) of a polynomial with Q(xi) coefficients (highest first)."""
    from math import lcm
    coeffs = [c / coeffs[0] for c in coeffs]
    roots = []
    while len(coeffs) > 1 and not coeffs[-1]:
        roots.append(ZERO)
        coeffs = coeffs[:-1]
    if len(coeffs) <= 1:
        return sorted(set(roots), key=repr)
    D = 1
    for c in coeffs:
        D = lcm(D, c.d)
    # q(t) = D^deg(p) p(t / D) is monic with coefficients in Z[xi]
    q = [c * (D ** i) for i, c in enumerate(coeffs)]
    c0 = q[-1]
    N0 = c0.a * c0.a + c0.a * c0.b + c0.b * c0.b
    found = []
    for d in _divisors(N0):
        for r in _norm_elements(d):
            if not _poly_eval(q, r):
                found.append(r / D)
    roots.extend(found)
    return sorted(set(roots), key=repr)


def _divisors(n):
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def coradical_part(H: FDHopf):
    """Basis of the coradical, the annihilator of the radical of H*.

    In characteristic zero the radical of an algebra is the kernel of its trace
    form, so the coradical is the column space of the trace form of H*.
    """
    n = H.dim
    # trace of left multiplication by f_k on H*: sum_l Delta(e_l)[(k, l)]
    t = [ZERO] * n
    for l in range(n):
        for (k, l2), c in H.comult[l].items():
            if l2 == l:
                t[k] = t[k] + c
    gram_rows = [dict() for _ in range(n)]
    for k in range(n):
        if not t[k]:
            continue
        for (i, j), c in H.comult[k].items():
            _acc(gram_rows[i], j, c * t[k])
    ech = Echelon()
    for row in gram_rows:
        if row:
            ech.add(row)
    return ech.basis()


def _span_coords(basis, pivots, u):
    return [u.get(p, ZERO) for p in pivots]


def _combine(basis, coeffs) -> dict:
    u = {}
    for b, c in zip(basis, coeffs):
        if c:
            for key, x in b.items():
                _acc(u, key, c * x)
    return u


def pointed_part(H: FDHopf) -> list:
    """Basis of the largest cocommutative subcoalgebra of the coradical.

    When the grouplikes are defined over Q(xi) this is the span of G(H).
    """
    W = coradical_part(H)
    # cocommutative elements of W
    cols = []
    for v in W:
        d = H.comul(v)
        col = dict(d)
        for (i, j), c in d.items():
            _acc(col, (j, i), -c)
        cols.append(col)
    W = [_combine(W, [k.get(t, ZERO) for t in range(len(W))]) for k in _solve_linear_map(cols, len(W))]
    while True:
        if not W:
            return []
        ech = Echelon()
        for v in W:
            ech.add(v)
        basis = ech.basis()
        piv = [min(v) for v in basis]
        # functionals vanishing on W: x -> x_k - sum_p x_p * basis_p[k] for non-pivot k
        annihilators = []
        pivset = set(piv)
        for k in range(H.dim):
            if k in pivset:
                continue
            f = {k: ONE}
            for p, b in zip(piv, basis):
                c = b.get(k)
                if c:
                    f[p] = -c
            annihilators.append(f)
        cols = []
        for v in basis:
            d = H.comul(v)
            col = {}
            for a, f in enumerate(annihilators):
                for (i, j), c in d.items():
                    x = f.get(i)
                    if x:
                        _acc(col, ("L", a, j), c * x)
                    y = f.get(j)
                    if y:
                        _acc(col, ("R", a, i), c * y)
            cols.append(col)
        ker = _solve_linear_map(cols, len(basis))
        if len(ker) == len(basis):
            return basis
        W = [_combine(basis, [k.get(t, ZERO) for t in range(len(basis))]) for k in ker]


def grouplikes(H: FDHopf, certify: bool = False):
    """All grouplike elements with coordinates in Q(xi).

    The grouplikes span the largest cocommutative subcoalgebra K of the
    coradical (when split over Q(xi)); the operators (id (x) f_j) Delta commute
    on K and are diagonal in the grouplike basis, with eigenvalue the j-th
    coordinate, so joint eigenspaces are found one coordinate at a time.
    With ``certify`` also returns whether the count equals dim K.
    """
    K = pointed_part(H)
    m = len(K)
    found = []
    if m:
        pivots = [min(v) for v in K]

        def act(j, u):
            out = {}
            for i, c in u.items():
                for (p, q), d in H.comult[i].items():
                    if q == j:
                        _acc(out, p, c * d)
            return out

        spaces = [Mat.identity(m)]
        for j in sorted({q for v in K for i in v for (_, q) in H.comult[i]}):
            if all(W.cols == 1 for W in spaces):
                break
            T = Mat.zeros(m, m)
            for col, v in enumerate(K):
                for row, c in enumerate(_span_coords(K, pivots, act(j, v))):
                    T.data[row][col] = c
            new_spaces = []
            for W in spaces:
                if W.cols == 1:
                    new_spaces.append(W)
                    continue
                # T preserves W; restrict and split by eigenvalues
                TW = T @ W
                sol = _restrict(W, TW)
                for lam in roots_in_field(_charpoly(sol)):
                    _, ker = rank_kernel(sol - Mat.identity(W.cols).scale(lam))
                    if ker:
                        new_spaces.append(W @ Mat([[v[i] for v in ker] for i in range(W.cols)]))
            spaces = new_spaces
        for W in spaces:
            if W.cols != 1:
                continue
            u = _combine(K, [W.data[i][0] for i in range(m)])
            e = H.eps(u)
            if e:
                u = vscale(u, e.inv())
                if is_grouplike(H, u) and u not in found:
                    found.append(u)
    found.sort(key=lambda u: sorted(u))
    if certify:
        return found, len(found) == m
    return found


def _restrict(W: Mat, TW: Mat) -> Mat:
    """Matrix of T on the invariant subspace spanned by W's columns (T W = W R)."""
    ech = Echelon()
    n = W.cols
    # solve W R = TW column by column via the echelon form of [W | TW]
    rows = []
    for i in range(W.rows):
        r = {k: W.data[i][k] for k in range(n) if W.data[i][k]}
        for k in range(TW.cols):
            if TW.data[i][k]:
                r[n + k] = TW.data[i][k]
        rows.append(r)
    for r in rows:
        ech.add(r)
    R = Mat.zeros(n, TW.cols)
    for p, row in ech.pivots.items():
        if p >= n:
            raise ValueError("subspace is not invariant")
        for k in range(TW.cols):
            R.data[p][k] = row.get(n + k, ZERO)
    return R


# ---------------------------------------------------------------- the double formula

# Conventions for reading the double product formula over H = C^cop:
#   dual_cop:  the coproduct of q in H* is read in H*^cop (reversed factors)
#   dual_op:   products p*q in H* are taken in H*^op
#   s_inverse: the pairing uses S_H^{-1} (True) or S_H (False)
FORMULA_CONVENTIONS = [
    {"dual_cop": dc, "dual_op": do, "s_inverse": si}
    for dc in (False, True) for do in (False, True) for si in (True, False)
]


def double_from_formula(C: FDHopf, convention: dict) -> FDHopf:
    """The algebra C^{*} (x) C with the double product formula, basis f_p (x) e_s.

    Only the multiplication, unit and the tensor-product coalgebra of
    C^{*op cop} (x) C^cop are filled in.
    """
    n = C.dim
    # H = C^cop: coproduct reversed, antipode S_C^{-1}; pairing antipode S_H^{-1} = S_C
    S_pair = C.antipode if convention["s_inverse"] else antipode_inverse(C)
    delta_H = [{(k, j): c for (j, k), c in C.comult[i].items()} for i in range(n)]

    def delta2(s):
        out = {}
        for (i, j), c in delta_H[s].items():
            for (p, q), d in delta_H[i].items():
                _acc(out, (p, q, j), c * d)
        return out

    # H* product f_p f_v = sum_h Delta_H(e_h)[(p, v)] f_h  (or the opposite)
    dual_prod = {}
    for h in range(n):
        for (p, v), c in delta_H[h].items():
            key = (v, p) if convention["dual_op"] else (p, v)
            dual_prod.setdefault(key, {})[h] = c
    # middle scalar:  <f_t, S(a3) e_v a1>  or reversed with dual_cop
    mid = {}
    for s in range(n):
        entries = {}
        for (a1, a2, a3), c in delta2(s).items():
            Sa3 = S_pair[a3]
            for v in range(n):
                if convention["dual_cop"]:
                    word = C.mul_many({a1: ONE}, {v: ONE}, Sa3)
                else:
                    word = C.mul_many(Sa3, {v: ONE}, {a1: ONE})
                for t, d in word.items():
                    _acc(entries, (t, v, a2), c * d)
        mid[s] = entries
    N = n * n
    mult = [[None] * N for _ in range(N)]
    for p in range(n):
        for s in range(n):
            # (f_p (x) e_s)(f_t (x) e_b) = sum f_p * f_v (x) e_a2 e_b * coeff
            by_t = {}
            for (t, v, a2), c in mid[s].items():
                by_t.setdefault(t, []).append((v, a2, c))
            for t in range(n):
                terms = by_t.get(t, [])
                for b in range(n):
                    out = {}
                    for v, a2, c in terms:
                        left = dual_prod.get((p, v), {})
                        right = C.mult[a2][b]
                        for h, x in left.items():
                            cx = c * x
                            for k, y in right.items():
                                _acc(out, h * n + k, cx * y)
                    mult[p * n + s][t * n + b] = out
    unit = {h * n + C.index("1"): c for h, c in enumerate(C.counit) if c}
    # coalgebra: C^{*op cop} (x) C^cop
    dual_delta = [dict() for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for k, c in C.mult[i][j].items():
                dual_delta[k][(j, i)] = c          # cop of the dual coproduct
    comult = [None] * N
    counit = [ZERO] * N
    for p in range(n):
        for s in range(n):
            out = {}
            for (p1, p2), c in dual_delta[p].items():
                for (s1, s2), d in delta_H[s].items():
                    _acc(out, (p1 * n + s1, p2 * n + s2), c * d)
            comult[p * n + s] = out
            counit[p * n + s] = C.unit.get(p, ZERO) * C.counit[s]
    labels = [f"f[{C.labels[p]}]#{C.labels[s]}" for p in range(n) for s in range(n)]
    return FDHopf(labels, mult, unit, comult, counit, None, [], name="D(formula)")


def compare_doubles(D: FDHopf, F: FDHopf, C: FDHopf, A1: FDHopf, theta: CycQ6 = XI) -> Report:
    """Map presentation words to the formula algebra and compare all products.

    g, x go to phi(g) (x) 1, phi(x) (x) 1 with phi: A1 -> C*; a, b go to
    eps (x) a, eps (x) b.  The map is checked to be bijective, multiplicative on
    every basis pair and compatible with the coproducts.
    """
    n = C.dim
    phi = phi_A1_to_Cdual(A1, C, theta).sparse_cols()
    one_C = C.index("1")
    eps = {h: c for h, c in enumerate(C.counit) if c}
    images = {
        "g": {p * n + one_C: c for p, c in phi[A1.index("g")].items()},
        "x": {p * n + one_C: c for p, c in phi[A1.index("x")].items()},
        "a": {h * n + C.index("a"): c for h, c in eps.items()},
        "b": {h * n + C.index("b"): c for h, c in eps.items()},
    }
    psi = []
    for label in D.labels:
        u = F.unit
        if label != "1":
            for part in label.split("*"):
                name, _, k = part.partition("^")
                for _ in range(int(k) if k else 1):
                    u = F.mul(u, images[name])
        psi.append(u)
    rep = Report(mode="all basis pairs")
    P = Mat.zeros(F.dim, D.dim)
    for i, u in enumerate(psi):
        for k, c in u.items():
            P.data[k][i] = c
    rank, _ = rank_kernel(P)
    rep.record("bijective", rank == D.dim == F.dim, f"rank {rank}")

    def image(u):
        out = {}
        for i, c in u.items():
            for k, d in psi[i].items():
                _acc(out, k, c * d)
        return out

    bad = None
    for i in range(D.dim):
        for j in range(D.dim):
            if F.mul(psi[i], psi[j]) != image(D.mult[i][j]):
                bad = (D.labels[i], D.labels[j])
                break
        if bad:
            break
    rep.record("products", bad is None, "" if bad is None else f"first mismatch at {bad}")
    bad = None
    for i in range(D.dim):
        lhs = {}
        for (p, q), c in D.comult[i].items():
            for k, x in psi[p].items():
                for l, y in psi[q].items():
                    _acc(lhs, (k, l), c * x * y)
        if lhs != F.comul(psi[i]):
            bad = D.labels[i]
            break
    rep.record("coproducts", bad is None, "" if bad is None else f"first mismatch at {bad}")
    return rep
