"""Noncommutative polynomials over Q(xi), rewriting, completion and quotient bases.

Words are tuples of letter indices.  A :class:`MonomialOrder` compares words by
weighted degree, then lexicographically along a letter precedence.  Positive
weights make this a well-order compatible with concatenation (two distinct words
of equal weight are never prefixes of each other); with unit weights it is the
usual degree-lexicographic order.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from pathlib import Path

from .exactmath import ONE, ZERO, CycQ6, LAMBDA, XI, as_cyc, format_cyc, parse_expr


class DegreeOverflow(ValueError):
    pass


class NCPoly:
    """Finite linear combination of words with CycQ6 coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet, terms=None):
        self.alphabet = tuple(alphabet)
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, alphabet, c):
        return cls(alphabet, {(): as_cyc(c)})

    @classmethod
    def letter(cls, alphabet, name):
        return cls(alphabet, {(list(alphabet).index(name),): ONE})

    @classmethod
    def word(cls, alphabet, word, c=ONE):
        return cls(alphabet, {tuple(word): as_cyc(c)})

    def _lift(self, other):
        if isinstance(other, NCPoly):
            return other
        return NCPoly.const(self.alphabet, other)

    def __add__(self, other):
        other = self._lift(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, ZERO) + c
        return NCPoly(self.alphabet, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.alphabet, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            c = as_cyc(other)
            return NCPoly(self.alphabet, {w: c * x for w, x in self.terms.items()})
        terms = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, ZERO) + c1 * c2
        return NCPoly(self.alphabet, terms)

    def __rmul__(self, other):
        c = as_cyc(other)
        return NCPoly(self.alphabet, {w: c * x for w, x in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            other = self._lift(other)
        return self.terms == other.terms

    __hash__ = None

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=-1)

    def is_homogeneous(self):
        return len({len(w) for w in self.terms}) <= 1

    def scalar(self) -> CycQ6:
        if any(w for w in self.terms):
            raise ValueError("not a scalar")
        return self.terms.get((), ZERO)

    def __repr__(self):
        return format_poly(self)


def format_word(word, alphabet) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        name = alphabet[word[i]]
        parts.append(name if j - i == 1 else f"{name}^{j - i}")
        i = j
    return "*".join(parts)


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for w in sorted(p.terms, key=lambda w: (len(w), w), reverse=True):
        c = p.terms[w]
        ws = format_word(w, p.alphabet)
        if not w:
            out.append(f"({format_cyc(c)})")
        elif c == ONE:
            out.append(ws)
        else:
            out.append(f"({format_cyc(c)})*{ws}")
    return " + ".join(out)


def parse_poly(text: str, alphabet, constants: dict | None = None) -> NCPoly:
    names = {name: NCPoly.letter(alphabet, name) for name in alphabet}
    consts = {"xi": XI, "lam": LAMBDA}
    consts.update(constants or {})
    for k, v in consts.items():
        names.setdefault(k, NCPoly.const(alphabet, v))
    return parse_expr(text, names, lift=lambda c: NCPoly.const(alphabet, c),
                      scalar_of=lambda p: p.scalar())


@dataclass(frozen=True)
class MonomialOrder:
    """Weighted degree, then lexicographic by letter precedence."""

    alphabet: tuple
    precedence: tuple  # letter names, smallest first
    weights: tuple = ()

    def __post_init__(self):
        if sorted(self.precedence) != sorted(self.alphabet):
            raise ValueError("precedence must list every letter once")
        ranks = tuple(self.precedence.index(a) for a in self.alphabet)
        object.__setattr__(self, "_ranks", ranks)
        w = self.weights or (1,) * len(self.alphabet)
        if len(w) != len(self.alphabet) or min(w) < 1:
            raise ValueError("weights must be positive, one per letter")
        object.__setattr__(self, "_w", tuple(w))

    def key(self, word):
        ranks = self._ranks
        w = self._w
        return (sum(w[i] for i in word), tuple(ranks[i] for i in word))

    def neg_key(self, word):
        weight, ranks = self.key(word)
        return (-weight, tuple(-r for r in ranks))

    def leading(self, p: NCPoly):
        return max(p.terms, key=self.key)


@dataclass
class RewriteSystem:
    """Rules ``leading word -> replacement`` sorted by leading word.

    ``complete_to`` is ``None`` when every overlap ambiguity was resolved, so
    reduction is confluent in all degrees; otherwise it is the word length up to
    which ambiguities were resolved.
    """

    order: MonomialOrder
    rules: dict = field(default_factory=dict)
    degree_cap: int = 12
    complete_to: int | None = None
    _lengths: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def alphabet(self):
        return self.order.alphabet

    @property
    def truncated(self) -> bool:
        return self.complete_to is not None

    def _refresh(self):
        self._lengths = tuple(sorted({len(w) for w in self.rules}))
        self._cache = {}

    def find(self, word):
        """First position and leading word of a rule occurring in ``word``."""
        rules = self.rules
        n = len(word)
        for i in range(n):
            for L in self._lengths:
                if i + L > n:
                    break
                sub = word[i:i + L]
                if sub in rules:
                    return i, sub
        return None

    def is_normal(self, word) -> bool:
        return self.find(word) is None

    def reduce_terms(self, terms: dict, check_degree: bool = True) -> dict:
        order = self.order
        if check_degree and self.complete_to is not None:
            for w in terms:
                if len(w) > self.complete_to:
                    raise DegreeOverflow(f"word of length {len(w)} exceeds the resolved "
                                         f"degree {self.complete_to}")
        todo = {}
        heap = []
        for w, c in terms.items():
            if c:
                todo[w] = c
                heapq.heappush(heap, (order.neg_key(w), w))
        out = {}
        cache = self._cache
        while heap:
            _, w = heapq.heappop(heap)
            c = todo.pop(w, None)
            if c is None or not c:
                continue
            nf = cache.get(w)
            if nf is not None:
                for u, x in nf.items():
                    v = out.get(u, ZERO) + c * x
                    if v:
                        out[u] = v
                    else:
                        out.pop(u, None)
                continue
            hit = self.find(w)
            if hit is None:
                v = out.get(w, ZERO) + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
                continue
            i, lw = hit
            pre, post = w[:i], w[i + len(lw):]
            for rw, rc in self.rules[lw].items():
                nw = pre + rw + post
                old = todo.get(nw)
                if old is None:
                    todo[nw] = c * rc
                    heapq.heappush(heap, (order.neg_key(nw), nw))
                else:
                    todo[nw] = old + c * rc
        return out

    def normal_form_word(self, word) -> dict:
        nf = self._cache.get(word)
        if nf is None:
            nf = self.reduce_terms({word: ONE})
            self._cache[word] = nf
        return nf

    def reduce(self, p: NCPoly) -> NCPoly:
        return NCPoly(self.alphabet, self.reduce_terms(p.terms))


def reduce(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.reduce(p)


def _monic(terms: dict, order: MonomialOrder):
    lead = max(terms, key=order.key)
    inv = terms[lead].inv()
    rep = {w: -(c * inv) for w, c in terms.items() if w != lead}
    return lead, rep


def _overlaps(l1, l2):
    """Proper overlaps: suffix of l1 equal to a prefix of l2."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            yield k


def complete(relations, order: MonomialOrder, degree_cap: int = 12,
             max_rules: int = 5000) -> RewriteSystem:
    """Resolve overlap and inclusion ambiguities of the relations up to the cap."""
    rs = RewriteSystem(order=order, degree_cap=degree_cap)
    pending = []  # heap of (key, counter, terms)
    counter = 0

    def push(terms, key):
        nonlocal counter
        heapq.heappush(pending, (key, counter, terms))
        counter += 1

    for r in relations:
        if r.terms:
            push(dict(r.terms), order.key(order.leading(r)))
    truncated = False
    pairs = []  # heap of (overlap word key, counter, l1, l2, k)

    def add_rule(terms):
        nonlocal counter, truncated
        lead, rep = _monic(terms, order)
        # rules whose leading word contains the new one become redundant
        for old in [w for w in rs.rules if w != lead and _contains(w, lead)]:
            old_rep = rs.rules.pop(old)
            t = dict(old_rep)
            t = {w: -c for w, c in t.items()}
            t[old] = t.get(old, ZERO) + ONE
            push(t, order.key(old))
        rs.rules[lead] = rep
        rs._refresh()
        for w in list(rs.rules):
            if w != lead:
                rs.rules[w] = rs.reduce_terms(rs.rules[w], check_degree=False)
        rs._cache = {}
        for other in list(rs.rules):
            for l1, l2 in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k in _overlaps(l1, l2):
                    word = l1 + l2[k:]
                    if len(word) > degree_cap:
                        truncated = True
                        continue
                    heapq.heappush(pairs, (order.key(word), counter, l1, l2, k))
                    counter += 1

    while pending or pairs:
        if len(rs.rules) > max_rules:
            raise DegreeOverflow("rule limit exceeded during completion")
        if pending:
            _, _, terms = heapq.heappop(pending)
            red = rs.reduce_terms(terms, check_degree=False)
            if red:
                add_rule(red)
            continue
        _, _, l1, l2, k = heapq.heappop(pairs)
        if l1 not in rs.rules or l2 not in rs.rules:
            continue
        # reduce l1 + l2[k:] in the two possible ways
        left = {w + l2[k:]: c for w, c in rs.rules[l1].items()}
        right = {l1[:-k] + w: c for w, c in rs.rules[l2].items()}
        diff = dict(left)
        for w, c in right.items():
            diff[w] = diff.get(w, ZERO) - c
        diff = {w: c for w, c in diff.items() if c}
        red = rs.reduce_terms(diff, check_degree=False)
        if red:
            add_rule(red)
    rs.rules = dict(sorted(rs.rules.items(), key=lambda kv: order.key(kv[0])))
    rs._refresh()
    rs.complete_to = degree_cap if truncated else None
    return rs


def _contains(word, sub):
    L = len(sub)
    return any(word[i:i + L] == sub for i in range(len(word) - L + 1))


def rewrite_system(rules: dict, order: MonomialOrder, degree_cap: int = 12) -> RewriteSystem:
    """A rewrite system from explicit rules ``{leading word: NCPoly or dict}``."""
    rs = RewriteSystem(order=order, degree_cap=degree_cap)
    for lead, rep in rules.items():
        terms = rep.terms if isinstance(rep, NCPoly) else rep
        rs.rules[tuple(lead)] = dict(terms)
    rs._refresh()
    return rs


def quotient_basis(rs: RewriteSystem, degree_cap: int | None = None):
    """Irreducible words of length <= cap and whether the list is exhaustive."""
    cap = rs.degree_cap if degree_cap is None else degree_cap
    n = len(rs.alphabet)
    lengths = rs._lengths
    rules = rs.rules
    words = [()]
    frontier = [()]
    at_cap = False
    for length in range(1, cap + 1):
        nxt = []
        for w in frontier:
            for a in range(n):
                u = w + (a,)
                if any(L <= length and u[length - L:] in rules for L in lengths):
                    continue
                nxt.append(u)
        words.extend(nxt)
        frontier = nxt
        if not nxt:
            break
        if length == cap:
            at_cap = True
    words.sort(key=rs.order.key)
    return words, not at_cap


def graded_dims(words, max_degree):
    dims = [0] * (max_degree + 1)
    for w in words:
        if len(w) <= max_degree:
            dims[len(w)] += 1
    return dims


def structure_constants(rs: RewriteSystem, basis):
    """Multiplication table: ``table[i][j]`` is the sparse coordinate dict of w_i w_j.

    Rows are built from left multiplication by single letters, using that every
    irreducible word is a letter times an irreducible word.
    """
    index = {w: i for i, w in enumerate(basis)}
    n = len(basis)

    def coords(terms):
        out = {}
        for w, c in terms.items():
            if w not in index:
                raise ValueError(f"normal word {w} outside the basis")
            out[index[w]] = c
        return out

    left = {}  # (letter, basis index) -> coordinates of letter * w

    def left_mult(a, u):
        key = (a, u)
        r = left.get(key)
        if r is None:
            r = coords(rs.reduce_terms({(a,) + basis[u]: ONE}))
            left[key] = r
        return r

    table = [None] * n
    for i in sorted(range(n), key=lambda i: len(basis[i])):
        w = basis[i]
        if not w:
            table[i] = [{j: ONE} for j in range(n)]
            continue
        a, rest = w[0], w[1:]
        prev = table[index[rest]]
        row = []
        for j in range(n):
            acc = {}
            for u, c in prev[j].items():
                for v, x in left_mult(a, u).items():
                    y = acc.get(v, ZERO) + c * x
                    if y:
                        acc[v] = y
                    else:
                        acc.pop(v, None)
            row.append(acc)
        table[i] = row
    return table


# ---------------------------------------------------------------- presentation files

@dataclass
class Presentation:
    alphabet: tuple
    order: MonomialOrder
    relations: list
    degree_cap: int = 12
    source: str = ""

    def complete(self) -> RewriteSystem:
        return complete(self.relations, self.order, self.degree_cap)


def parse_presentation(text: str, constants: dict | None = None) -> Presentation:
    """Parse ``letters: ...; order: a < b; weights: a=1, ...; cap: N; rel: <poly>``."""
    statements = []
    for line in text.splitlines():
        line = line.split("#", 1)[0]
        statements.extend(s.strip() for s in line.split(";") if s.strip())
    letters, precedence, weights, cap, rels = None, None, {}, 12, []
    for st in statements:
        key, _, value = st.partition(":")
        key, value = key.strip().lower(), value.strip()
        if key == "letters":
            letters = tuple(x.strip() for x in value.replace(",", " ").split())
        elif key == "order":
            precedence = tuple(x.strip() for x in value.split("<"))
        elif key == "weights":
            for item in value.split(","):
                name, _, w = item.partition("=")
                weights[name.strip()] = int(w)
        elif key == "cap":
            cap = int(value)
        elif key == "rel":
            rels.append(value)
        else:
            raise ValueError(f"unknown statement {st!r}")
    if letters is None:
        raise ValueError("presentation lacks a letters statement")
    precedence = precedence or letters
    wt = tuple(weights.get(a, 1) for a in letters)
    order = MonomialOrder(letters, precedence, wt)
    relations = [parse_poly(r, letters, constants) for r in rels]
    return Presentation(letters, order, relations, cap, text)


def format_presentation(pres: Presentation) -> str:
    lines = [f"letters: {', '.join(pres.alphabet)}",
             f"order: {' < '.join(pres.order.precedence)}"]
    if any(w != 1 for w in pres.order._w):
        lines.append("weights: " + ", ".join(f"{a}={w}" for a, w in zip(pres.alphabet, pres.order._w)))
    lines.append(f"cap: {pres.degree_cap}")
    lines.extend(f"rel: {format_poly(r)}" for r in pres.relations)
    return "\n".join(lines) + "\n"


DATA_DIR = Path(__file__).parent / "data"


def load_fixture(name: str, constants: dict | None = None) -> Presentation:
    return parse_presentation((DATA_DIR / name).read_text(), constants)
