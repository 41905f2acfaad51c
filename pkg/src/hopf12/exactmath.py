"""Exact arithmetic in Q(xi), xi a primitive 6th root of unity, and dense/sparse
linear algebra over that field.

An element is stored as ``(a + b*xi) / d`` with integers ``a, b`` and a positive
denominator ``d`` in lowest terms, reduced with ``xi**2 = xi - 1``.  Nothing in
this module touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable


class DivisionByZero(ZeroDivisionError):
    pass


def _normalize(a: int, b: int, d: int):
    if d == 1:
        return a, b, 1
    if d < 0:
        a, b, d = -a, -b, -d
    g = gcd(gcd(a, b), d)
    if g > 1:
        a //= g
        b //= g
        d //= g
    return a, b, d


class CycQ6:
    """Element r0 + r1*xi of Q(xi) with r0, r1 rational."""

    __slots__ = ("a", "b", "d")

    def __init__(self, r0=0, r1=0):
        r0 = Fraction(r0)
        r1 = Fraction(r1)
        d = r0.denominator * r1.denominator // gcd(r0.denominator, r1.denominator)
        self.a, self.b, self.d = _normalize(
            r0.numerator * (d // r0.denominator),
            r1.numerator * (d // r1.denominator),
            d,
        )

    @classmethod
    def _make(cls, a, b, d):
        obj = object.__new__(cls)
        obj.a, obj.b, obj.d = _normalize(a, b, d)
        return obj

    @property
    def r0(self) -> Fraction:
        return Fraction(self.a, self.d)

    @property
    def r1(self) -> Fraction:
        return Fraction(self.b, self.d)

    def _coerce(self, other):
        if isinstance(other, CycQ6):
            return other
        if isinstance(other, int):
            return CycQ6._make(other, 0, 1)
        if isinstance(other, Fraction):
            return CycQ6._make(other.numerator, 0, other.denominator)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.d == o.d:
            return CycQ6._make(self.a + o.a, self.b + o.b, self.d)
        return CycQ6._make(self.a * o.d + o.a * self.d, self.b * o.d + o.b * self.d,
                           self.d * o.d)

    __radd__ = __add__

    def __neg__(self):
        return CycQ6._make(-self.a, -self.b, self.d)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a1, b1, a2, b2 = self.a, self.b, o.a, o.b
        bb = b1 * b2
        return CycQ6._make(a1 * a2 - bb, a1 * b2 + a2 * b1 + bb, self.d * o.d)

    __rmul__ = __mul__

    def inv(self) -> "CycQ6":
        a, b = self.a, self.b
        norm = a * a + a * b + b * b
        if norm == 0:
            raise DivisionByZero("inverse of zero in Q(xi)")
        return CycQ6._make(self.d * (a + b), -self.d * b, norm)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        result = ONE
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self) -> "CycQ6":
        """Complex conjugate, i.e. the automorphism xi -> xi**-1 = 1 - xi."""
        return CycQ6._make(self.a + self.b, -self.b, self.d)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.a == o.a and self.b == o.b and self.d == o.d

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.d))
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return format_cyc(self)


ZERO = CycQ6._make(0, 0, 1)
ONE = CycQ6._make(1, 0, 1)
XI = CycQ6._make(0, 1, 1)
_XI_POWERS = [ONE]
for _ in range(5):
    _XI_POWERS.append(_XI_POWERS[-1] * XI)


def xi_pow(k: int) -> CycQ6:
    return _XI_POWERS[k % 6]


# (xi - 1)(xi + 1)^-1
LAMBDA = (XI - 1) / (XI + 1)


def theta_value(flip: bool = False) -> CycQ6:
    """The square root of xi**2 used throughout; xi by default, -xi when flipped."""
    return -XI if flip else XI


def as_cyc(x) -> CycQ6:
    if isinstance(x, CycQ6):
        return x
    return CycQ6(x)


# ---------------------------------------------------------------- text form

def _fmt_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_cyc(x: CycQ6) -> str:
    r0, r1 = x.r0, x.r1
    if r1 == 0:
        return _fmt_rat(r0)
    if r1 == 1:
        tail = "xi"
    elif r1 == -1:
        tail = "-xi"
    else:
        tail = f"{_fmt_rat(r1)}*xi"
    if r0 == 0:
        return tail
    if tail.startswith("-"):
        return f"{_fmt_rat(r0)} - {tail[1:]}"
    return f"{_fmt_rat(r0)} + {tail}"


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text: str):
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("sym", sym))
        pos = m.end()
    return tokens


def parse_expr(text: str, names: dict, lift: Callable = None, scalar_of: Callable = None):
    """Evaluate an arithmetic expression with + - * / ^ and parentheses.

    ``names`` maps identifiers to values, ``lift`` turns a CycQ6 into the value
    type, and ``scalar_of`` extracts a CycQ6 from a value (for division).
    """
    lift = lift or (lambda c: c)
    scalar_of = scalar_of or (lambda v: v)
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if expected is not None and tok != ("sym", expected):
            raise ValueError(f"expected {expected!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        sign = 1
        if peek() in (("sym", "+"), ("sym", "-")):
            sign = -1 if take()[1] == "-" else 1
        value = term()
        if sign < 0:
            value = -value
        while peek() in (("sym", "+"), ("sym", "-")):
            op = take()[1]
            rhs = term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term():
        value = power()
        while True:
            tok = peek()
            if tok in (("sym", "*"), ("sym", "/")):
                op = take()[1]
                rhs = power()
                if op == "*":
                    value = value * rhs
                else:
                    value = value * lift(as_cyc(scalar_of(rhs)).inv())
            elif tok[0] in ("num", "name") or tok == ("sym", "("):
                value = value * power()  # implicit product
            else:
                return value

    def power():
        base = atom()
        if peek() in (("sym", "^"), ("sym", "**")):
            take()
            neg = False
            if peek() == ("sym", "-"):
                take()
                neg = True
            kind, k = take()
            if kind != "num":
                raise ValueError(f"integer exponent expected in {text!r}")
            if neg:
                return lift(as_cyc(scalar_of(base)) ** (-k))
            result = lift(ONE)
            for _ in range(k):
                result = result * base
            return result
        return base

    def atom():
        kind, val = take()
        if kind == "num":
            return lift(CycQ6(val))
        if kind == "name":
            if val not in names:
                raise ValueError(f"unknown symbol {val!r} in {text!r}")
            return names[val]
        if val == "(":
            inner = expr()
            take(")")
            return inner
        if val == "-":
            return -power()
        raise ValueError(f"unexpected token {val!r} in {text!r}")

    if not tokens:
        raise ValueError("empty expression")
    result = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing input in {text!r}")
    return result


def parse_cyc(text: str) -> CycQ6:
    """Parse the text form produced by :func:`format_cyc` (and general sums)."""
    return as_cyc(parse_expr(text, {"xi": XI}))


# ---------------------------------------------------------------- matrices

class Mat:
    """Dense matrix over Q(xi); rows of CycQ6 entries."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, cols: int | None = None):
        self.data = [[as_cyc(x) for x in row] for row in data]
        self.rows = len(self.data)
        self.cols = cols if cols is not None else (len(self.data[0]) if self.data else 0)

    @classmethod
    def _wrap(cls, data, rows, cols):
        m = object.__new__(cls)
        m.data, m.rows, m.cols = data, rows, cols
        return m

    @classmethod
    def zeros(cls, rows, cols):
        return cls._wrap([[ZERO] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        m = cls.zeros(n, n)
        for i in range(n):
            m.data[i][i] = ONE
        return m

    @classmethod
    def diag(cls, values):
        values = [as_cyc(v) for v in values]
        m = cls.zeros(len(values), len(values))
        for i, v in enumerate(values):
            m.data[i][i] = v
        return m

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def copy(self):
        return Mat._wrap([row[:] for row in self.data], self.rows, self.cols)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = []
        odata = other.data
        ncols = other.cols
        for row in self.data:
            acc = [ZERO] * ncols
            for k, x in enumerate(row):
                if x:
                    orow = odata[k]
                    for j in range(ncols):
                        y = orow[j]
                        if y:
                            acc[j] = acc[j] + x * y
            out.append(acc)
        return Mat._wrap(out, self.rows, ncols)

    def apply(self, vec):
        """Matrix times a column vector given as a list."""
        out = []
        for row in self.data:
            acc = ZERO
            for x, y in zip(row, vec):
                if x and y:
                    acc = acc + x * y
            out.append(acc)
        return out

    def __add__(self, other):
        return Mat._wrap([[x + y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __sub__(self, other):
        return Mat._wrap([[x - y for x, y in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self):
        return Mat._wrap([[-x for x in r] for r in self.data], self.rows, self.cols)

    def scale(self, c) -> "Mat":
        c = as_cyc(c)
        return Mat._wrap([[c * x for x in r] for r in self.data], self.rows, self.cols)

    def __pow__(self, k: int) -> "Mat":
        result = Mat.identity(self.rows)
        for _ in range(k):
            result = result @ self
        return result

    def transpose(self) -> "Mat":
        return Mat._wrap([list(col) for col in zip(*self.data)] if self.rows else [],
                         self.cols, self.rows)

    def is_zero(self) -> bool:
        return not any(x for row in self.data for x in row)

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self.data == other.data

    __hash__ = None

    def __repr__(self):
        body = "; ".join(", ".join(format_cyc(x) for x in row) for row in self.data)
        return f"Mat({self.rows}x{self.cols}: [{body}])"

    def sparse_rows(self):
        return [{j: x for j, x in enumerate(row) if x} for row in self.data]

    def sparse_cols(self):
        cols = [dict() for _ in range(self.cols)]
        for i, row in enumerate(self.data):
            for j, x in enumerate(row):
                if x:
                    cols[j][i] = x
        return cols


def kron(A: Mat, B: Mat) -> Mat:
    """Kronecker product; e_i (x) e_j sits at index i*dim(B) + j."""
    rows = []
    for arow in A.data:
        for brow in B.data:
            row = []
            for x in arow:
                if x:
                    row.extend(x * y if y else ZERO for y in brow)
                else:
                    row.extend([ZERO] * B.cols)
            rows.append(row)
    return Mat._wrap(rows, A.rows * B.rows, A.cols * B.cols)


def block_diag(blocks) -> Mat:
    n = sum(b.rows for b in blocks)
    m = sum(b.cols for b in blocks)
    out = Mat.zeros(n, m)
    r = c = 0
    for b in blocks:
        for i in range(b.rows):
            out.data[r + i][c:c + b.cols] = b.data[i]
        r += b.rows
        c += b.cols
    return out


def hstack(columns) -> Mat:
    """Matrix whose columns are the given vectors (lists)."""
    if not columns:
        raise ValueError("no columns")
    return Mat._wrap([list(r) for r in zip(*columns)], len(columns[0]), len(columns))


# ---------------------------------------------------------------- sparse elimination

def _axpy(target: dict, coeff: CycQ6, source: dict):
    """target -= coeff * source, in place, dropping zeros."""
    for k, v in source.items():
        t = target.get(k)
        nv = (t - coeff * v) if t is not None else -(coeff * v)
        if nv:
            target[k] = nv
        elif t is not None:
            del target[k]


class Echelon:
    """Incrementally maintained reduced row echelon basis of sparse vectors."""

    def __init__(self):
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: dict) -> dict:
        v = dict(vec)
        for c in [c for c in v if c in self.pivots]:
            coeff = v.get(c)
            if coeff:
                _axpy(v, coeff, self.pivots[c])
        return v

    def add(self, vec: dict) -> bool:
        v = self.reduce(vec)
        if not v:
            return False
        p = min(v)
        inv = v[p].inv()
        v = {k: x * inv for k, x in v.items()}
        for row in self.pivots.values():
            coeff = row.get(p)
            if coeff:
                _axpy(row, coeff, v)
        self.pivots[p] = v
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    def basis(self):
        return [self.pivots[c] for c in sorted(self.pivots)]


def rank_kernel(M: Mat):
    """Return (rank, kernel basis) of M; kernel vectors are dense lists."""
    ech = Echelon()
    for row in M.sparse_rows():
        ech.add(row)
    free = [c for c in range(M.cols) if c not in ech.pivots]
    kernel = []
    for f in free:
        v = [ZERO] * M.cols
        v[f] = ONE
        for p, row in ech.pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        kernel.append(v)
    return ech.rank, kernel


def mat_rank(M: Mat) -> int:
    ech = Echelon()
    for row in M.sparse_rows():
        ech.add(row)
    return ech.rank


def nullspace_sparse(rows: Iterable[dict], ncols: int):
    """Kernel basis (as sparse dicts) of the matrix with the given sparse rows."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    kernel = []
    for f in range(ncols):
        if f in ech.pivots:
            continue
        v = {f: ONE}
        for p, row in ech.pivots.items():
            x = row.get(f)
            if x:
                v[p] = -x
        kernel.append(v)
    return kernel


def solve(A: Mat, b) -> list | None:
    """One solution x of A x = b, or None when inconsistent."""
    ech = Echelon()
    n = A.cols
    for row, rhs in zip(A.sparse_rows(), b):
        r = dict(row)
        rhs = as_cyc(rhs)
        if rhs:
            r[n] = rhs
        ech.add(r)
    if n in ech.pivots:
        return None
    x = [ZERO] * n
    for p, row in ech.pivots.items():
        x[p] = row.get(n, ZERO)
    return x


def inverse(M: Mat) -> Mat:
    n = M.rows
    if M.cols != n:
        raise ValueError("square matrix required")
    ech = Echelon()
    for i, row in enumerate(M.sparse_rows()):
        r = dict(row)
        r[n + i] = ONE
        ech.add(r)
    if any(p >= n for p in ech.pivots) or ech.rank < n:
        raise DivisionByZero("singular matrix")
    out = Mat.zeros(n, n)
    for p, row in ech.pivots.items():
        for k, x in row.items():
            if k >= n:
                out.data[p][k - n] = x
    return out


def det(M: Mat) -> CycQ6:
    n = M.rows
    rows = [dict(r) for r in M.sparse_rows()]
    result = ONE
    for col in range(n):
        piv = next((i for i in range(col, n) if rows[i].get(col)), None)
        if piv is None:
            return ZERO
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            result = -result
        p = rows[col][col]
        result = result * p
        pinv = p.inv()
        for i in range(col + 1, n):
            c = rows[i].get(col)
            if c:
                _axpy(rows[i], c * pinv, rows[col])
    return result


def vec_to_sparse(vec) -> dict:
    return {i: x for i, x in enumerate(vec) if x}


def sparse_to_vec(vec: dict, n: int) -> list:
    out = [ZERO] * n
    for i, x in vec.items():
        out[i] = x
    return out
