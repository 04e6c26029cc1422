"""
Degreewise model of the Drinfeld-Kohno algebras A_n.

Generators t_ij (1 <= i < j <= n) are numbered t_12, t_13, t_23, t_14, ...
so that the index of t_ij does not depend on n. A word is a tuple of
generator indices; its weight is its length.

The degree-d piece of A_n is built from the degree-(d-1) piece:

    A_d = (A_{d-1} (x) V) / image(A_{d-2} (x) R)

where V is the span of generators and R the quadratic relators. The
surviving words (the lexicographically smallest ones) are the
representatives; every word reduces to a combination of them.
"""

from __future__ import annotations

import hashlib
import json
import os
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from .kernel import Q, Permutation, Reducer, fmt_rational

STANDARD = "standard"
PAPER_LITERAL = "paper-literal"

DEFAULT_MAX_WEIGHT = 8


class TruncationError(ArithmeticError):
    """Requested weight exceeds the configured truncation bound."""


class CacheCorruptionError(RuntimeError):
    pass


# ---------------------------------------------------------------------------
# generators

def gen_index(i: int, j: int) -> int:
    if i == j:
        raise ValueError("t_ii is not a generator")
    if i > j:
        i, j = j, i
    if i < 1:
        raise ValueError("strand indices start at 1")
    return (j - 1) * (j - 2) // 2 + (i - 1)


@lru_cache(maxsize=None)
def gen_pair(k: int) -> tuple:
    j = 2
    while (j - 1) * j // 2 <= k:
        j += 1
    i = k - (j - 1) * (j - 2) // 2 + 1
    return (i, j)


def num_gens(n: int) -> int:
    return n * (n - 1) // 2


class ChordGenerator(tuple):
    """t_ij, normalized so that i < j."""

    def __new__(cls, n, i, j):
        if i == j or not (1 <= i <= n and 1 <= j <= n):
            raise ValueError("bad chord t_%d%d on %d strands" % (i, j, n))
        i, j = min(i, j), max(i, j)
        return super().__new__(cls, (n, i, j))

    @property
    def index(self):
        return gen_index(self[1], self[2])

    def __repr__(self):
        return "t_%d%d" % (self[1], self[2])


def word_str(word) -> str:
    if not word:
        return "1"
    return "".join("t%d%d" % gen_pair(g) for g in word)


# ---------------------------------------------------------------------------
# polynomials

class NCPolynomial:
    """Finite Q-combination of words in the chord generators of A_n.

    Arithmetic reduces through the algebra's chosen bases; ``mode`` picks the
    relator set (see :func:`relators`).
    """

    __slots__ = ("n", "terms", "mode")

    def __init__(self, n: int, terms=None, mode: str = STANDARD):
        self.n = n
        self.mode = mode
        self.terms = {}
        for w, c in (terms or {}).items():
            c = Q(c)
            if c:
                self.terms[tuple(w)] = c

    # constructors
    @classmethod
    def zero(cls, n, mode=STANDARD):
        return cls(n, {}, mode)

    @classmethod
    def one(cls, n, c=1, mode=STANDARD):
        return cls(n, {(): c}, mode)

    @classmethod
    def gen(cls, n, i, j, c=1, mode=STANDARD):
        ChordGenerator(n, i, j)
        return cls(n, {(gen_index(i, j),): c}, mode)

    @classmethod
    def from_pairs(cls, n, pairs, c=1, mode=STANDARD):
        """The word t_{p1} t_{p2} ... for a list of (i, j) pairs."""
        return cls(n, {tuple(gen_index(i, j) for i, j in pairs): c}, mode)

    def algebra(self):
        return get_algebra(self.n, self.mode)

    def _new(self, terms):
        return NCPolynomial(self.n, terms, self.mode)

    def _check(self, other):
        if not isinstance(other, NCPolynomial):
            other = NCPolynomial.one(self.n, other, self.mode)
        if other.n != self.n:
            raise ValueError("strand counts differ: %d vs %d" % (self.n, other.n))
        return other

    def __add__(self, other):
        other = self._check(other)
        t = dict(self.terms)
        for w, c in other.terms.items():
            t[w] = t.get(w, 0) + c
        return self._new(t)

    __radd__ = __add__

    def __neg__(self):
        return self._new({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = Q(c)
        return self._new({w: c * x for w, x in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPolynomial):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(Q(1) / Q(c))

    def reduced(self):
        return self.algebra().reduce(self)

    def is_zero(self):
        return not self.reduced().terms

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = NCPolynomial.one(self.n, other, self.mode)
        elif not isinstance(other, NCPolynomial):
            return NotImplemented
        return self.n == other.n and not (self - other).reduced().terms

    def __hash__(self):
        return hash((self.n, frozenset(self.reduced().terms.items())))

    @property
    def weights(self):
        return sorted({len(w) for w in self.terms})

    def max_weight(self):
        return max((len(w) for w in self.terms), default=-1)

    def component(self, d):
        return self._new({w: c for w, c in self.terms.items() if len(w) == d})

    def truncate(self, N):
        return self._new({w: c for w, c in self.terms.items() if len(w) <= N})

    def coefficient(self, word):
        return self.terms.get(tuple(word), Q(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            parts.append("%s*%s" % (fmt_rational(self.terms[w]), word_str(w)))
        return " + ".join(parts)

    def to_json(self):
        return {
            "n": self.n,
            "terms": [
                {"word": [list(gen_pair(g)) for g in w], "coeff": fmt_rational(c)}
                for w, c in sorted(self.terms.items(), key=lambda t: (len(t[0]), t[0]))
            ],
        }

    @classmethod
    def from_json(cls, data, mode=STANDARD):
        n = int(data["n"])
        terms = {}
        for t in data["terms"]:
            w = tuple(gen_index(int(i), int(j)) for i, j in t["word"])
            terms[w] = terms.get(w, 0) + Q(t["coeff"])
        return cls(n, terms, mode)


# ---------------------------------------------------------------------------
# relators

def _commutator_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for x, c in a.items():
        for y, e in b.items():
            out[(x, y)] = out.get((x, y), 0) + c * e
            out[(y, x)] = out.get((y, x), 0) - c * e
    return {w: c for w, c in out.items() if c}


def relators(n: int, mode: str = STANDARD) -> list:
    """Quadratic relators of A_n.

    [t_ij + t_ik, t_jk] for every ordered triple of distinct strands, and in
    standard mode also [t_ij, t_kl] for disjoint pairs.
    """
    if mode not in (STANDARD, PAPER_LITERAL):
        raise ValueError("unknown relator mode %r" % (mode,))
    out = []
    rng = range(1, n + 1)
    for i in rng:
        for j in rng:
            for k in rng:
                if len({i, j, k}) < 3 or j > k:
                    continue
                lhs = {gen_index(i, j): 1, gen_index(i, k): 1}
                out.append(NCPolynomial(n, _commutator_terms(lhs, {gen_index(j, k): 1}), mode))
    if mode == STANDARD:
        pairs = [(i, j) for j in rng for i in range(1, j)]
        for a, (i, j) in enumerate(pairs):
            for (k, l) in pairs[a + 1:]:
                if {i, j} & {k, l}:
                    continue
                out.append(NCPolynomial(n, _commutator_terms({gen_index(i, j): 1}, {gen_index(k, l): 1}), mode))
    return out


def relator_hash(n: int, mode: str = STANDARD) -> str:
    payload = json.dumps([r.to_json() for r in relators(n, mode)], sort_keys=True)
    return hashlib.sha256(payload.encode()).hexdigest()


# ---------------------------------------------------------------------------
# graded pieces

class DKBasis:
    """Basis of the degree-d piece of A_n plus the reduction of raw words.

    ``table`` maps (index of a degree-(d-1) representative, generator) to a
    combination ``{representative index: coeff}`` of degree-d representatives.
    """

    def __init__(self, n, degree, representatives, table, prev=None):
        self.n = n
        self.degree = degree
        self.representatives = list(representatives)
        self.index = {w: k for k, w in enumerate(self.representatives)}
        self.table = table
        self.prev = prev
        self._memo: dict = {}

    @property
    def dimension(self):
        return len(self.representatives)

    def reduce_word(self, word) -> dict:
        word = tuple(word)
        if len(word) != self.degree:
            raise ValueError("word of weight %d in degree-%d basis" % (len(word), self.degree))
        hit = self._memo.get(word)
        if hit is not None:
            return hit
        if self.degree == 0:
            res = {0: Q(1)}
        elif self.degree == 1:
            res = {self.index[word]: Q(1)}
        elif word in self.index:
            res = {self.index[word]: Q(1)}
        else:
            head = self.prev.reduce_word(word[:-1])
            res = {}
            g = word[-1]
            for r, c in head.items():
                for s, e in self.table[(r, g)].items():
                    res[s] = res.get(s, 0) + c * e
            res = {s: x for s, x in res.items() if x}
        self._memo[word] = res
        return res

    def reduce(self, terms: dict) -> dict:
        """Reduce ``{word: coeff}`` (all of this degree) to representative words."""
        acc: dict = {}
        for w, c in terms.items():
            for s, e in self.reduce_word(w).items():
                acc[s] = acc.get(s, 0) + c * e
        return {self.representatives[s]: x for s, x in acc.items() if x}

    def vector(self, poly_terms: dict) -> dict:
        """Coordinates ``{rep index: coeff}``."""
        acc: dict = {}
        for w, c in poly_terms.items():
            for s, e in self.reduce_word(w).items():
                acc[s] = acc.get(s, 0) + c * e
        return {s: x for s, x in acc.items() if x}

    def payload(self):
        return {
            "n": self.n,
            "degree": self.degree,
            "representatives": [[list(gen_pair(g)) for g in w] for w in self.representatives],
            "table": [
                [r, list(gen_pair(g)), {str(s): fmt_rational(x) for s, x in sorted(comb.items())}]
                for (r, g), comb in sorted(self.table.items())
            ],
        }


class DKAlgebra:
    """Lazily built graded pieces of A_n, with optional on-disk cache."""

    def __init__(self, n: int, mode: str = STANDARD, max_weight: int = DEFAULT_MAX_WEIGHT,
                 cache_dir=None):
        if n < 1:
            raise ValueError("n must be positive")
        self.n = n
        self.mode = mode
        self.max_weight = max_weight
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.gens = list(range(num_gens(n)))
        self.relators = relators(n, mode)
        self._bases: dict[int, DKBasis] = {}
        self._hash = None

    @property
    def relator_hash(self):
        if self._hash is None:
            self._hash = relator_hash(self.n, self.mode)
        return self._hash

    def basis(self, d: int) -> DKBasis:
        if d < 0:
            raise ValueError("negative degree")
        if d > self.max_weight:
            raise TruncationError("degree %d exceeds truncation bound %d" % (d, self.max_weight))
        b = self._bases.get(d)
        if b is None:
            b = self._load(d) or self._build(d)
            self._bases[d] = b
        return b

    def dimension(self, d: int) -> int:
        return self.basis(d).dimension

    def _build(self, d):
        n = self.n
        if d == 0:
            return DKBasis(n, 0, [()], {})
        if d == 1:
            return self._save(DKBasis(n, 1, [(g,) for g in self.gens], {}, self.basis(0)))
        prev = self.basis(d - 1)
        prev2 = self.basis(d - 2)
        G = len(self.gens)
        # raw word (prev rep r, generator g); largest word gets column 0 so the
        # eliminated (pivot) words are the largest ones
        nraw = prev.dimension * G

        def col(r, g):
            return nraw - 1 - (r * G + g)

        rows = []
        for u in prev2.representatives:
            for rel in self.relators:
                v: dict = {}
                for (a, b), c in rel.terms.items():
                    for r, e in prev.reduce_word(u + (a,)).items():
                        k = col(r, b)
                        v[k] = v.get(k, 0) + c * e
                v = {k: x for k, x in v.items() if x}
                if v:
                    rows.append(v)
        red = Reducer(nraw, rows)
        reps_cols = sorted(red.representatives, reverse=True)
        words = []
        colpos = {}
        for k in reps_cols:
            rg = nraw - 1 - k
            r, g = divmod(rg, G)
            words.append(prev.representatives[r] + (g,))
            colpos[k] = len(words) - 1
        table = {}
        for r in range(prev.dimension):
            for g in range(G):
                vec = red.reduce({col(r, g): Q(1)})
                table[(r, g)] = {colpos[k]: x for k, x in vec.items()}
        return self._save(DKBasis(n, d, words, table, prev))

    # cache -----------------------------------------------------------------

    def _cache_path(self, d):
        if self.cache_dir is None:
            return None
        return self.cache_dir / ("dk_n%d_d%d_%s.json" % (self.n, d, self.relator_hash[:16]))

    def _save(self, basis):
        path = self._cache_path(basis.degree)
        if path is None:
            return basis
        payload = basis.payload()
        body = json.dumps(payload, sort_keys=True)
        doc = {"checksum": hashlib.sha256(body.encode()).hexdigest(), "basis": payload,
               "relator_hash": self.relator_hash, "mode": self.mode}
        self.cache_dir.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp%d" % os.getpid())
        tmp.write_text(json.dumps(doc, sort_keys=True))
        os.replace(tmp, path)
        return basis

    def _load(self, d):
        path = self._cache_path(d)
        if path is None or not path.exists():
            return None
        try:
            doc = json.loads(path.read_text())
            payload = doc["basis"]
            body = json.dumps(payload, sort_keys=True)
        except (ValueError, KeyError) as exc:
            raise CacheCorruptionError("unreadable cache file %s: %s" % (path, exc))
        if hashlib.sha256(body.encode()).hexdigest() != doc.get("checksum"):
            raise CacheCorruptionError("checksum mismatch in cache file %s" % path)
        if doc.get("relator_hash") != self.relator_hash:
            raise CacheCorruptionError("relator hash mismatch in cache file %s" % path)
        reps = [tuple(gen_index(i, j) for i, j in w) for w in payload["representatives"]]
        table = {}
        for r, (i, j), comb in payload["table"]:
            table[(int(r), gen_index(i, j))] = {int(s): Q(x) for s, x in comb.items()}
        prev = self.basis(d - 1) if d > 0 else None
        return DKBasis(self.n, d, reps, table, prev)

    # arithmetic ------------------------------------------------------------

    def reduce(self, p: NCPolynomial) -> NCPolynomial:
        by_deg: dict[int, dict] = {}
        for w, c in p.terms.items():
            by_deg.setdefault(len(w), {})[w] = c
        out = {}
        for d, terms in by_deg.items():
            out.update(self.basis(d).reduce(terms))
        return NCPolynomial(self.n, out, self.mode)


@lru_cache(maxsize=None)
def _algebra(n, mode, cache_dir):
    return DKAlgebra(n, mode, cache_dir=cache_dir)


def get_algebra(n: int, mode: str = STANDARD) -> DKAlgebra:
    """Shared algebra instance; the cache directory comes from OPERAD_CACHE."""
    return _algebra(n, mode, os.environ.get("OPERAD_CACHE") or None)


def degree_basis(n: int, d: int, mode: str = STANDARD) -> DKBasis:
    if n < 2:
        raise ValueError("n must be at least 2")
    return get_algebra(n, mode).basis(d)


# ---------------------------------------------------------------------------
# operations

def multiply(a: NCPolynomial, b: NCPolynomial, truncate: int | None = None) -> NCPolynomial:
    """Reduced product; terms above ``truncate`` are dropped before reducing."""
    if a.n != b.n:
        raise ValueError("strand counts differ")
    out: dict = {}
    for u, c in a.terms.items():
        for v, e in b.terms.items():
            if truncate is not None and len(u) + len(v) > truncate:
                continue
            w = u + v
            out[w] = out.get(w, 0) + c * e
    return get_algebra(a.n, a.mode).reduce(NCPolynomial(a.n, out, a.mode))


def augment(a: NCPolynomial) -> Fraction:
    return a.terms.get((), Q(0))


def symmetric_action(sigma: Permutation, a: NCPolynomial) -> NCPolynomial:
    """T_sigma t_ij = t_{sigma(i) sigma(j)}, extended multiplicatively."""
    if sigma.n != a.n:
        raise ValueError("permutation on %d letters acting on A_%d" % (sigma.n, a.n))
    img = {}
    for g in range(num_gens(a.n)):
        i, j = gen_pair(g)
        img[g] = gen_index(sigma(i), sigma(j))
    terms: dict = {}
    for w, c in a.terms.items():
        w2 = tuple(img[g] for g in w)
        terms[w2] = terms.get(w2, 0) + c
    return get_algebra(a.n, a.mode).reduce(NCPolynomial(a.n, terms, a.mode))


def apply_generator_map(a: NCPolynomial, images: dict, n: int) -> NCPolynomial:
    """Algebra map sending generator g to the linear form ``images[g]``
    (a dict generator -> coeff in A_n), extended multiplicatively."""
    terms: dict = {}
    for w, c in a.terms.items():
        partial = {(): c}
        for g in w:
            nxt: dict = {}
            for u, x in partial.items():
                for h, y in images[g].items():
                    k = u + (h,)
                    nxt[k] = nxt.get(k, 0) + x * y
            partial = nxt
        for u, x in partial.items():
            terms[u] = terms.get(u, 0) + x
    return get_algebra(n, a.mode).reduce(NCPolynomial(n, terms, a.mode))


def outer_images(i: int, n: int, m: int) -> dict:
    """Images of the generators of A_n under a -> o_i(a (x) 1)."""
    if not 1 <= i <= n:
        raise IndexError("insertion position %d outside 1..%d" % (i, n))

    def phi(k):
        return k if k <= i else k + m - 1

    out = {}
    for g in range(num_gens(n)):
        p, q = gen_pair(g)
        if p != i and q != i:
            out[g] = {gen_index(phi(p), phi(q)): Q(1)}
        else:
            other = q if p == i else p
            out[g] = {gen_index(r, phi(other)): Q(1) for r in range(i, i + m)}
    return out


def inner_images(i: int, m: int) -> dict:
    """Images of the generators of A_m under b -> o_i(1 (x) b)."""
    out = {}
    for g in range(num_gens(m)):
        p, q = gen_pair(g)
        out[g] = {gen_index(i + p - 1, i + q - 1): Q(1)}
    return out


def insert(i: int, outer: NCPolynomial, inner: NCPolynomial, truncate=None) -> NCPolynomial:
    """Operadic insertion o_i : A_n (x) A_m -> A_{n+m-1}."""
    n, m = outer.n, inner.n
    if not 1 <= i <= n:
        raise IndexError("insertion position %d outside 1..%d" % (i, n))
    N = n + m - 1
    a = apply_generator_map(outer, outer_images(i, n, m), N)
    b = apply_generator_map(inner, inner_images(i, m), N)
    return multiply(a, b, truncate=truncate)
