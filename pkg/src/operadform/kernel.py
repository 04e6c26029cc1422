"""
Exact rational linear algebra on sparse vectors, plus permutations.

Vectors are plain dicts ``{column: Fraction}`` with no stored zeros.
Everything here is pure: inputs are never mutated.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from itertools import permutations as _iter_perms

Q = Fraction


def fmt_rational(x) -> str:
    x = Q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s) -> Fraction:
    return Q(s)


# ---------------------------------------------------------------------------
# sparse vectors

def vec_add(u: dict, v: dict, c=1) -> dict:
    """Return u + c*v."""
    out = dict(u)
    for k, x in v.items():
        y = out.get(k, 0) + c * x
        if y:
            out[k] = y
        else:
            out.pop(k, None)
    return out


def vec_scale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def _bitsize(x: Fraction) -> int:
    return (x.numerator * x.denominator).bit_length()


class SparseMatrix:
    """Row-major sparse matrix over Q."""

    def __init__(self, rows: int, cols: int, entries=None):
        self.nrows = rows
        self.ncols = cols
        self._rows: dict[int, dict[int, Fraction]] = {}
        for (i, j), x in (entries or {}).items():
            self[i, j] = x

    @classmethod
    def from_dense(cls, data):
        data = [list(r) for r in data]
        ncols = len(data[0]) if data else 0
        m = cls(len(data), ncols)
        for i, r in enumerate(data):
            for j, x in enumerate(r):
                if x:
                    m[i, j] = x
        return m

    @classmethod
    def from_rows(cls, rows, ncols: int):
        m = cls(len(rows), ncols)
        for i, r in enumerate(rows):
            for j, x in r.items():
                if x:
                    m[i, j] = x
        return m

    def __setitem__(self, key, value):
        i, j = key
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("entry (%d, %d) outside %dx%d" % (i, j, self.nrows, self.ncols))
        value = Q(value)
        row = self._rows.setdefault(i, {})
        if value:
            row[j] = value
        else:
            row.pop(j, None)
            if not row:
                del self._rows[i]

    def __getitem__(self, key):
        i, j = key
        return self._rows.get(i, {}).get(j, Q(0))

    def row(self, i) -> dict:
        return dict(self._rows.get(i, {}))

    def rows(self):
        return [self.row(i) for i in range(self.nrows)]

    @property
    def entries(self):
        return {(i, j): x for i, r in self._rows.items() for j, x in r.items()}

    def nnz(self):
        return sum(len(r) for r in self._rows.values())

    def to_dense(self):
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def transpose(self):
        t = SparseMatrix(self.ncols, self.nrows)
        for (i, j), x in self.entries.items():
            t[j, i] = x
        return t

    def apply(self, v: dict) -> dict:
        """Matrix times column vector."""
        out = {}
        for i, r in self._rows.items():
            s = sum((x * v[j] for j, x in r.items() if j in v), Q(0))
            if s:
                out[i] = s
        return out

    def __repr__(self):
        return "SparseMatrix(%d, %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


# ---------------------------------------------------------------------------
# elimination

def echelon(rows) -> dict:
    """Semi-echelon form of the span of ``rows``.

    Returns ``{pivot_col: row}`` where each row has its smallest column equal
    to the pivot, with coefficient 1 there. Columns are processed in
    increasing order; among rows leading in the same column the one whose
    leading entry has the smallest bit-size is used as pivot.
    """
    buckets: dict[int, list] = {}
    heap: list[int] = []
    for r in rows:
        r = {k: Q(x) for k, x in r.items() if x}
        if not r:
            continue
        c = min(r)
        if c not in buckets:
            buckets[c] = []
            heapq.heappush(heap, c)
        buckets[c].append(r)

    pivots = {}
    while heap:
        c = heapq.heappop(heap)
        bucket = buckets.pop(c)
        best = min(range(len(bucket)), key=lambda t: (_bitsize(bucket[t][c]), len(bucket[t])))
        p = bucket[best]
        lead = p[c]
        if lead != 1:
            p = {k: x / lead for k, x in p.items()}
        pivots[c] = p
        for t, r in enumerate(bucket):
            if t == best:
                continue
            r = vec_add(r, p, -r[c])
            if not r:
                continue
            c2 = min(r)
            if c2 not in buckets:
                buckets[c2] = []
                heapq.heappush(heap, c2)
            buckets[c2].append(r)
    return pivots


def reduce_vector(v: dict, pivots: dict) -> dict:
    """Reduce v modulo the span of a semi-echelon pivot set."""
    v = {k: Q(x) for k, x in v.items() if x}
    heap = [k for k in v if k in pivots]
    heapq.heapify(heap)
    while heap:
        c = heapq.heappop(heap)
        x = v.get(c)
        if not x:
            continue
        p = pivots[c]
        for k, y in p.items():
            z = v.get(k, 0) - x * y
            if z:
                if k not in v and k in pivots:
                    heapq.heappush(heap, k)
                v[k] = z
            else:
                v.pop(k, None)
    return v


def rref(rows) -> dict:
    """Reduced row echelon form as ``{pivot_col: row}``."""
    piv = echelon(rows)
    done: dict[int, dict] = {}
    for c in sorted(piv, reverse=True):
        done[c] = reduce_vector_tail(piv[c], c, done)
    return done


def reduce_vector_tail(row, c, later):
    rest = {k: x for k, x in row.items() if k != c}
    rest = reduce_vector(rest, later)
    rest[c] = Q(1)
    return rest


def rank(m) -> int:
    rows = m.rows() if isinstance(m, SparseMatrix) else m
    return len(echelon(rows))


def nullspace_basis(m: SparseMatrix) -> list:
    """Exact basis of the right kernel, one vector per free column."""
    R = rref(m.rows())
    out = []
    for f in range(m.ncols):
        if f in R:
            continue
        v = {f: Q(1)}
        for c, row in R.items():
            x = row.get(f)
            if x:
                v[c] = -x
        out.append(v)
    return out


def in_span(v: dict, pivots: dict) -> bool:
    return not reduce_vector(v, pivots)


class Reducer:
    """Normal form modulo a subspace; the surviving coordinates are the
    quotient representatives."""

    def __init__(self, ambient_dim: int, subspace):
        self.ambient_dim = ambient_dim
        self.pivots = echelon(subspace)
        self.representatives = [j for j in range(ambient_dim) if j not in self.pivots]

    def reduce(self, v: dict) -> dict:
        return reduce_vector(v, self.pivots)

    def __call__(self, v):
        return self.reduce(v)


def quotient_basis(ambient_dim: int, subspace):
    """Complement representatives of span(subspace) and the reduction map."""
    r = Reducer(ambient_dim, subspace)
    return r.representatives, r


def solve_affine(columns, target: dict):
    """Find x with sum_j x_j * columns[j] == target.

    Free variables end up 0. Returns None when target is outside the span.
    """
    big = 1 + max([max(c) for c in columns if c] + [max(target) if target else 0])
    rows = []
    for j, col in enumerate(columns):
        r = dict(col)
        r[big + j] = Q(1)
        rows.append(r)
    res = reduce_vector(target, echelon(rows))
    if any(k < big for k in res):
        return None
    return [-res.get(big + j, Q(0)) for j in range(len(columns))]


# ---------------------------------------------------------------------------
# permutations

class Permutation:
    """Bijection of {1..n}, stored as the tuple of images."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(int(i) for i in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError("not a permutation of 1..%d: %r" % (len(images), images))
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def transposition(cls, n, a, b):
        im = list(range(1, n + 1))
        im[a - 1], im[b - 1] = b, a
        return cls(im)

    @classmethod
    def all(cls, n):
        return [cls(p) for p in _iter_perms(range(1, n + 1))]

    @property
    def n(self):
        return len(self.images)

    def __call__(self, i):
        return self.images[i - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """(self o other)(i) = self(other(i))."""
        if other.n != self.n:
            raise ValueError("size mismatch")
        return Permutation(self.images[j - 1] for j in other.images)

    __mul__ = compose

    def inverse(self):
        inv = [0] * self.n
        for i, j in enumerate(self.images, 1):
            inv[j - 1] = i
        return Permutation(inv)

    def is_identity(self):
        return all(i == j for i, j in enumerate(self.images, 1))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return "Permutation(%r)" % (self.images,)
