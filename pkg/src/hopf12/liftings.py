"""Bosonizations R#C of Nichols algebras over C and the 216-dimensional liftings.

R = B(V) is realised on words in the basis of V: each degree keeps a set of
basis words (closed under prefixes) and a coordinate map from tensors, both
taken from the symmetrizer row spaces.  Products, the C-action, the C-coaction
and the braided coproduct of R are computed on tensors and projected.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactmath import LAMBDA, ONE, XI, ZERO, CycQ6, Echelon, Mat, inverse, xi_pow
from .freealg import load_fixture, quotient_basis
from .hopfcore import (FDHopf, Report, _acc, from_rewrite_system, grouplikes,
                       skew_primitives)
from .nichols import _Braid, quotient_rows
from .repmod import DMod, TwoDim, catalog
from .ydbraid import base_algebra, braiding, yd_from_dmod


# ---------------------------------------------------------------- Nichols algebra as words

class NicholsWords:
    """Coordinates of B(V) on a prefix-closed set of basis words."""

    def __init__(self, B, max_degree: int = 12):
        self.B = B
        self.d = B.dim
        rows = quotient_rows(B, max_degree)
        if rows[-1]:
            raise ValueError(f"Nichols algebra not certified finite up to degree {max_degree}")
        self.rows = [[{(): ONE}]] + rows[:-1]
        self.words = [[()]]
        self._qinv = [Mat.identity(1)]
        for n in range(1, len(self.rows)):
            P = self.rows[n]
            ech = Echelon()
            chosen = []
            for u in self.words[n - 1]:
                for l in range(self.d):
                    w = u + (l,)
                    col = {k: r[w] for k, r in enumerate(P) if w in r}
                    if col and ech.add(col):
                        chosen.append(w)
            if len(chosen) != len(P):
                raise RuntimeError("basis words do not span a graded piece")
            Q = Mat([[r.get(w, ZERO) for w in chosen] for r in P])
            self.words.append(chosen)
            self._qinv.append(inverse(Q))
        self.basis = [w for ws in self.words for w in ws]
        self.index = {w: k for k, w in enumerate(self.basis)}
        self._offset = []
        k = 0
        for ws in self.words:
            self._offset.append(k)
            k += len(ws)

    @property
    def top_degree(self) -> int:
        return len(self.words) - 1

    @property
    def dim(self) -> int:
        return len(self.basis)

    def project(self, t: dict) -> dict:
        """Coordinates of a tensor (dict word -> coeff) in the word basis."""
        by_deg = {}
        for w, x in t.items():
            by_deg.setdefault(len(w), {})[w] = x
        out = {}
        for n, part in by_deg.items():
            if n >= len(self.words):
                continue
            P = self.rows[n]
            pv = [sum((r[w] * x for w, x in part.items() if w in r), ZERO) for r in P]
            Qi = self._qinv[n]
            off = self._offset[n]
            for a in range(len(P)):
                s = ZERO
                for b, y in enumerate(pv):
                    if y:
                        s = s + Qi[a, b] * y
                if s:
                    _acc(out, off + a, s)
        return out


def _fmt(word) -> str:
    if not word:
        return "1"
    return "*".join(f"v{l + 1}" for l in word)


# ---------------------------------------------------------------- smash data

@dataclass
class SmashData:
    R: NicholsWords
    mult: list          # mult[r][s] -> coords
    action: list        # action[h][r] -> coords
    coaction: list      # coaction[r] -> {(h, s): c}
    coproduct: list     # coproduct[r] -> {(r1, r2): c}

    def check(self) -> Report:
        """Module-algebra and comodule-algebra laws on all basis pairs."""
        C = base_algebra()
        n = self.R.dim
        rep = Report(mode="smash")
        bad = None
        for h in range(C.dim):
            for r in range(n):
                for s in range(n):
                    lhs = _lin(self.action[h], self.mult[r][s])
                    rhs = {}
                    for (h1, h2), c in C.comult[h].items():
                        for p, x in self.action[h1][r].items():
                            for q, y in self.action[h2][s].items():
                                for k, z in self.mult[p][q].items():
                                    _acc(rhs, k, c * x * y * z)
                    if lhs != rhs:
                        bad = (C.labels[h], r, s)
                        break
                if bad:
                    break
            if bad:
                break
        rep.record("module_algebra", bad is None, "" if bad is None else f"fails at {bad}")
        bad = None
        for r in range(n):
            for s in range(n):
                lhs = {}
                for k, x in self.mult[r][s].items():
                    for key, y in self.coaction[k].items():
                        _acc(lhs, key, x * y)
                rhs = {}
                for (h1, r0), x in self.coaction[r].items():
                    for (h2, s0), y in self.coaction[s].items():
                        for h, z in C.mult[h1][h2].items():
                            for k, u in self.mult[r0][s0].items():
                                _acc(rhs, (h, k), x * y * z * u)
                if lhs != rhs:
                    bad = (r, s)
                    break
            if bad:
                break
        rep.record("comodule_algebra", bad is None, "" if bad is None else f"fails at {bad}")
        return rep


def _lin(table, u: dict) -> dict:
    out = {}
    for k, c in u.items():
        for j, x in table[k].items():
            _acc(out, j, c * x)
    return out


def smash_data(label, theta: CycQ6 = XI, max_degree: int = 12) -> SmashData:
    C = base_algebra()
    Y = yd_from_dmod(label if isinstance(label, DMod) else catalog(label, theta))
    B = braiding(Y)
    R = NicholsWords(B, max_degree)
    cb = _Braid(B)
    d = Y.dim

    mult = [[R.project({u + w: ONE}) for w in R.basis] for u in R.basis]

    # h . (v_{w1} ... v_{wk}) = sum h_(1) v_{w1} (x) h_(2) . (rest)
    act_memo = {}

    def act(h, w):
        key = (h, w)
        if key in act_memo:
            return act_memo[key]
        if not w:
            out = {(): C.counit[h]} if C.counit[h] else {}
        else:
            out = {}
            for (p, q), c in C.comult[h].items():
                M = Y.action[p]
                rest = act(q, w[1:])
                if not rest:
                    continue
                for r in range(d):
                    x = M[r, w[0]]
                    if x:
                        for u, y in rest.items():
                            _acc(out, (r,) + u, c * x * y)
        act_memo[key] = out
        return out

    action = [[R.project(act(h, w)) for w in R.basis] for h in range(C.dim)]

    # delta(v_{w1} ... v_{wk}) = v_{w1}(-1) ... v_{wk}(-1) (x) v_{w1}(0) ... v_{wk}(0)
    coact_memo = {(): {(C.index("1"), ()): ONE}}

    def coact(w):
        if w in coact_memo:
            return coact_memo[w]
        out = {}
        rest = coact(w[1:])
        for c, G in enumerate(Y.gamma):
            for r in range(d):
                x = G[r, w[0]]
                if not x:
                    continue
                for (h, u), y in rest.items():
                    for k, z in C.mult[c][h].items():
                        _acc(out, (k, (r,) + u), x * y * z)
        coact_memo[w] = out
        return out

    coaction = []
    for w in R.basis:
        out = {}
        for (h, u), x in coact(w).items():
            for k, y in R.project({u: ONE}).items():
                _acc(out, (h, k), x * y)
        coaction.append(out)

    # braided coproduct of T(V): Delta(u v) = Delta(u) (v (x) 1 + 1 (x) v), where
    # (r (x) s)(v (x) 1) = r c(s (x) v)_1 (x) c(s (x) v)_2
    cop_memo = {(): {((), ()): ONE}}

    def cop(w):
        if w in cop_memo:
            return cop_memo[w]
        out = {}
        v = w[-1]
        for (r, s), x in cop(w[:-1]).items():
            _acc(out, (r, s + (v,)), x)
            vec = {s + (v,): x}
            for p in range(len(s) - 1, -1, -1):
                vec = cb.apply(vec, p)
            for u, y in vec.items():
                _acc(out, (r + u[:1], u[1:]), y)
        cop_memo[w] = out
        return out

    coproduct = []
    for w in R.basis:
        out = {}
        for (r, s), x in cop(w).items():
            pr = R.project({r: ONE})
            if not pr:
                continue
            ps = R.project({s: ONE})
            for i, y in pr.items():
                for j, z in ps.items():
                    _acc(out, (i, j), x * y * z)
        coproduct.append(out)
    return SmashData(R, mult, action, coaction, coproduct)


def bosonize(label, theta: CycQ6 = XI, max_degree: int = 12) -> FDHopf:
    """R#C with (r#g)(s#h) = r (g_(1).s) # g_(2) h and the smash coproduct."""
    C = base_algebra()
    sd = smash_data(label, theta, max_degree)
    R = sd.R
    n, m = R.dim, C.dim
    idx = lambda r, h: r * m + h
    labels = [f"{_fmt(w)}#{h}" for w in R.basis for h in C.labels]

    mult = [[None] * (n * m) for _ in range(n * m)]
    for r in range(n):
        for g in range(m):
            for s in range(n):
                for h in range(m):
                    out = {}
                    for (g1, g2), c in C.comult[g].items():
                        gs = sd.action[g1][s]
                        if not gs:
                            continue
                        gh = C.mult[g2][h]
                        for t, x in gs.items():
                            for u, y in sd.mult[r][t].items():
                                for k, z in gh.items():
                                    _acc(out, idx(u, k), c * x * y * z)
                    mult[idx(r, g)][idx(s, h)] = out

    comult = []
    counit = []
    for r in range(n):
        for g in range(m):
            out = {}
            for (r1, r2), c in sd.coproduct[r].items():
                for (h, r0), x in sd.coaction[r2].items():
                    for (g1, g2), y in C.comult[g].items():
                        for k, z in C.mult[h][g1].items():
                            _acc(out, (idx(r1, k), idx(r0, g2)), c * x * y * z)
            comult.append(out)
            counit.append(C.counit[g] if r == 0 else ZERO)

    unit = {idx(0, C.index("1")): ONE}
    H = FDHopf(labels, mult, unit, comult, counit, None, [], name=f"B({label})#C")
    one = C.index("1")
    H.generators = [idx(R.index[(l,)], one) for l in range(R.d)] + \
                   [idx(0, C.index("a")), idx(0, C.index("b"))]

    # antipode: S(v#1) = -S(1#v_(-1)) (v_(0)#1), S(1#h) = 1#S(h), extended anti-multiplicatively
    def lift_C(u):
        return {idx(0, k): c for k, c in u.items()}

    S_letter = {}
    for l in range(R.d):
        out = {}
        for (h, r0), x in sd.coaction[R.index[(l,)]].items():
            for k, y in H.mul(lift_C(C.antipode[h]), {idx(r0, one): ONE}).items():
                _acc(out, k, -x * y)
        S_letter[l] = out
    S_word = {(): dict(unit)}
    for w in R.basis:
        if w:
            S_word[w] = H.mul(S_letter[w[-1]], S_word[w[:-1]])
    H.antipode = [H.mul(lift_C(C.antipode[g]), S_word[w]) for w in R.basis for g in range(m)]
    return H


def verify_projection(H: FDHopf) -> Report:
    """pi and iota are bialgebra maps and pi iota = id."""
    C = base_algebra()
    m = C.dim
    rep = Report(mode="projection")
    pi_of = lambda u: _pi(u, m)
    ok = True
    for i in range(H.dim):
        for s in H.generators:
            if pi_of(H.mult[i][s]) != C.mul(pi_of({i: ONE}), pi_of({s: ONE})):
                ok = False
                break
        if not ok:
            break
    rep.record("pi_algebra", ok)
    ok = True
    for i in range(H.dim):
        lhs = {}
        for (p, q), c in H.comult[i].items():
            for k, x in pi_of({p: ONE}).items():
                for l, y in pi_of({q: ONE}).items():
                    _acc(lhs, (k, l), c * x * y)
        if lhs != C.comul(pi_of({i: ONE})) or H.counit[i] != C.eps(pi_of({i: ONE})):
            ok = False
            break
    rep.record("pi_coalgebra", ok)
    ok = all(H.mult[h][k] == C.mult[h][k] for h in range(m) for k in range(m)) and \
        all(H.comult[h] == C.comult[h] for h in range(m))
    rep.record("iota_bialgebra", ok)
    rep.record("pi_iota_identity", all(_pi({h: ONE}, m) == {h: ONE} for h in range(m)))
    return rep


def _pi(u: dict, m: int) -> dict:
    return {k: c for k, c in u.items() if k < m}


# ---------------------------------------------------------------- liftings

LIFTING_FIXTURES = {1: "B14.pres", 5: "B12.pres"}


def lifting_presentation(j: int, mu):
    if j not in LIFTING_FIXTURES:
        raise ValueError("j must be 1 or 5")
    return load_fixture(LIFTING_FIXTURES[j], {"mu": CycQ6(0) + mu, "lam": LAMBDA})


def _poly(alphabet, pairs):
    """{(left word text, right word text): coeff} with words as space-separated letters."""
    w = lambda t: tuple(alphabet.index(ch) for ch in t.split()) if t else ()
    return {(w(l), w(r)): c for (l, r), c in pairs.items()}


def _times(P1: dict, P2: dict) -> dict:
    out = {}
    for (l1, r1), c in P1.items():
        for (l2, r2), d in P2.items():
            _acc(out, (l1 + l2, r1 + r2), c * d)
    return out


def _aw(k: int) -> str:
    return " ".join(["a"] * (k % 6))


def lifting_structure(j: int, alphabet):
    """Coproduct, counit and antipode of the lifting on its letters y, z, x, b, a."""
    cx = xi_pow(2) - xi_pow(2 + j)
    cy = xi_pow(2) + xi_pow(2 + j)
    kx, ky = (-j - 4) % 6, (-j - 1) % 6
    cop = {
        "a": _poly(alphabet, {("a", "a"): ONE, ("b", "b a a a"): xi_pow(4) + xi_pow(5)}),
        "b": _poly(alphabet, {("b", "a a a a"): ONE, ("a", "b"): ONE}),
        "x": _poly(alphabet, {("x", ""): ONE, (_aw(-j - 3), "x"): ONE,
                              (("b " + _aw(kx)).strip(), "y"): cx}),
        "y": _poly(alphabet, {("y", ""): ONE, (_aw(-j), "y"): ONE,
                              (("b " + _aw(ky)).strip(), "x"): cy}),
    }
    cop["z"] = _times(cop["x"], cop["y"])
    counit = {"a": ONE, "b": ZERO, "x": ZERO, "y": ZERO, "z": ZERO}
    w = lambda t: tuple(alphabet.index(ch) for ch in t.split()) if t else ()
    # S(x) = -S(a^{-j-3}) x - cx S(b a^kx) y, S(b a^k) = xi^-2 a^{-k} b a
    s_ba = lambda k: (w((_aw(-k) + " b a").strip()), xi_pow(-2))
    sx_word, sx_c = s_ba(kx)
    sy_word, sy_c = s_ba(ky)
    anti = {
        "a": {w("a a a a a"): ONE},
        "b": {w("b a"): xi_pow(-2)},
        "x": {w(_aw(j + 3)) + w("x"): -ONE, sx_word + w("y"): -cx * sx_c},
        "y": {w(_aw(j)) + w("y"): -ONE, sy_word + w("x"): -cy * sy_c},
    }
    anti["z"] = {}
    for u, c in anti["y"].items():
        for v, d in anti["x"].items():
            _acc(anti["z"], u + v, c * d)
    return cop, counit, anti


@dataclass
class Lifting:
    j: int
    mu: CycQ6
    rs: object
    basis: list
    certified: bool      # no irreducible word at the degree cap
    hopf: FDHopf


def build_lifting(j: int, mu=ZERO, antipode: bool = True) -> Lifting:
    pres = lifting_presentation(j, mu)
    rs = pres.complete()
    basis, finite = quotient_basis(rs)
    if not finite:
        raise ValueError("completion did not certify a finite basis at the cap")
    cop, counit, anti = lifting_structure(j, pres.alphabet)
    H = from_rewrite_system(rs, cop, counit, anti if antipode else None,
                            name=f"B_1,{(j + 3) % 6}({mu})", basis=basis)
    return Lifting(j, CycQ6(0) + mu, rs, basis, finite, H)


def relation_residues(pres, coproduct: dict, counit: dict, relations=None) -> Report:
    """Delta and eps of each relation (default: the defining ones), reduced in the quotient."""
    rs = pres.complete()
    basis, finite = quotient_basis(rs)
    rep = Report(mode="relations")
    if not finite:
        rep.record("finite", False, "quotient not finite at the cap")
        return rep
    H = from_rewrite_system(rs, coproduct, counit, None, basis=basis)
    index = {w: i for i, w in enumerate(basis)}

    def elem(word):
        return {index[k]: x for k, x in rs.reduce_terms({word: ONE}).items()}

    letter_delta = []
    for name in pres.alphabet:
        t = {}
        for (lw, rw), c in coproduct[name].items():
            for p, x in elem(lw).items():
                for q, y in elem(rw).items():
                    _acc(t, (p, q), c * x * y)
        letter_delta.append(t)
    letter_eps = [counit[a] for a in pres.alphabet]
    one = H.tensor(H.unit, H.unit)
    for r in (pres.relations if relations is None else relations):
        residue = {}
        eps = ZERO
        for w, c in r.terms.items():
            t = one
            e = ONE
            for a in w:
                t = H.tmul(t, letter_delta[a])
                e = e * letter_eps[a]
            for k, x in t.items():
                _acc(residue, k, c * x)
            eps = eps + c * e
        text = "" if not residue else f"{len(residue)} nonzero terms, e.g. " + \
            ", ".join(f"{H.labels[p]} (x) {H.labels[q]}" for p, q in list(residue)[:2])
        rep.record(str(r), not residue and not eps, text)
    return rep


def verify_bialgebra_on_relations(j: int, mu=ZERO, relations=None) -> Report:
    pres = lifting_presentation(j, mu)
    cop, counit, _ = lifting_structure(j, pres.alphabet)
    return relation_residues(pres, cop, counit, relations)


# ---------------------------------------------------------------- comparisons

def skew_primitive_fingerprint(H: FDHopf, gs=None) -> dict:
    """dim P_{g,h} for ordered pairs of grouplikes (trivial g - h included)."""
    if gs is None:
        gs = grouplikes(H)
    out = {}
    for g in gs:
        for h in gs:
            key = (H.element_str(g), H.element_str(h))
            out[key] = len(skew_primitives(H, g, h))
    return out


def grouplike_order(H: FDHopf, g: dict) -> int:
    p, n = dict(g), 1
    while p != H.unit:
        p = H.mul(p, g)
        n += 1
    return n


def skew_primitive_invariant(H: FDHopf, gs=None) -> list:
    """Sorted (order of g, dim P_{1,g}) over grouplikes g; unchanged by isomorphisms."""
    if gs is None:
        gs = grouplikes(H)
    return sorted((grouplike_order(H, g), len(skew_primitives(H, H.unit, g))) for g in gs)


def generator_map(source: Lifting, target: FDHopf, images: dict):
    """Extend letter images multiplicatively over the word basis of the source."""
    alphabet = source.rs.alphabet
    cols = []
    for w in source.basis:
        u = dict(target.unit)
        for a in w:
            u = target.mul(u, images[alphabet[a]])
        cols.append(u)
    return cols


def verify_generator_isomorphism(source: Lifting, target: FDHopf, images: dict) -> Report:
    """Relations map to zero, Delta and eps agree on letters, and the map is bijective.

    With the word basis of the source, multiplicativity reduces to the defining
    relations holding in the target; coalgebra compatibility on letters then
    extends because both coproducts are algebra maps.
    """
    rep = Report(mode="generators")
    pres = lifting_presentation(source.j, source.mu)
    bad = []
    for r in pres.relations:
        val = {}
        for w, c in r.terms.items():
            u = dict(target.unit)
            for a in w:
                u = target.mul(u, images[pres.alphabet[a]])
            for k, x in u.items():
                _acc(val, k, c * x)
        if val:
            bad.append(str(r))
    rep.record("relations", not bad, "; ".join(bad))
    H = source.hopf
    cols = generator_map(source, target, images)
    bad = []
    index = {w: i for i, w in enumerate(source.basis)}
    for a, name in enumerate(source.rs.alphabet):
        i = index[(a,)]
        lhs = {}
        for (p, q), c in H.comult[i].items():
            for k, x in cols[p].items():
                for l, y in cols[q].items():
                    _acc(lhs, (k, l), c * x * y)
        if lhs != target.comul(cols[i]) or target.eps(cols[i]) != H.counit[i]:
            bad.append(name)
    rep.record("coalgebra_on_letters", not bad, ", ".join(bad))
    ech = Echelon()
    rank = sum(1 for c in cols if ech.add(dict(c)))
    rep.record("bijective", rank == H.dim == target.dim, f"rank {rank}")
    return rep


def lifting_to_bosonization(j: int, theta: CycQ6 = XI):
    """x -> v1#1, y -> v2#1, a -> 1#a, b -> 1#b between B_{1,j+3}(0) and B(V_{1,j+3})#C."""
    L = build_lifting(j, ZERO)
    T = bosonize(TwoDim(1, j + 3), theta)
    C = base_algebra()
    m = C.dim
    one = C.index("1")
    R_index = {lab.split("#")[0]: k // m for k, lab in enumerate(T.labels) if lab.endswith("#1")}
    images = {
        "a": {C.index("a"): ONE},
        "b": {C.index("b"): ONE},
        "x": {R_index["v1"] * m + one: ONE},
        "y": {R_index["v2"] * m + one: ONE},
    }
    images["z"] = T.mul(images["x"], images["y"])
    return L, T, images, verify_generator_isomorphism(L, T, images)


BOSONIZATION_FAMILIES = {
    "a": ("K_1", 24),
    "b": ("V_3_1", 72),
    "c": ("V_4_1", 216),
    "d": ("V_1_1", 432),
}
