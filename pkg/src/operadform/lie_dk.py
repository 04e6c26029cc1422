"""
The graded Lie algebras g_n (generators t_ij of weight 1, same relators as
A_n) and their Chevalley-Eilenberg homology.

g_n is modelled as a quotient of the free Lie algebra, independently of the
associative reduction in :mod:`dk_algebra`: Lie polynomials live in the free
associative algebra, are written in the Lyndon basis, and the ideal is grown
weight by weight as ``J_w = [V, J_{w-1}]``.
"""

from __future__ import annotations

import json
from functools import lru_cache

from .dk_algebra import STANDARD, TruncationError, num_gens, relators, word_str
from .kernel import Q, Reducer, SparseMatrix, echelon, rank


# ---------------------------------------------------------------------------
# free Lie algebra

def lyndon_words(q: int, w: int) -> list:
    """Lyndon words of length w over letters 0..q-1, in lexicographic order
    (Duval's generation)."""
    if w < 1:
        return []
    out = []
    word = [-1]
    while word:
        word[-1] += 1
        if len(word) == w:
            out.append(tuple(word))
        m = len(word)
        while len(word) < w:
            word.append(word[len(word) - m])
        while word and word[-1] == q - 1:
            word.pop()
    return out


def is_lyndon(word) -> bool:
    word = tuple(word)
    return bool(word) and all(word < word[i:] + word[:i] for i in range(1, len(word)))


def standard_factorization(word):
    """l = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(word)):
        if is_lyndon(word[i:]):
            return word[:i], word[i:]
    raise ValueError("%r has no standard factorization" % (word,))


def bracketing(word):
    """Nested-tuple bracketing of a Lyndon word (letters at the leaves)."""
    if len(word) == 1:
        return word[0]
    u, v = standard_factorization(word)
    return (bracketing(u), bracketing(v))


def poly_commutator(a: dict, b: dict) -> dict:
    out: dict = {}
    for u, x in a.items():
        for v, y in b.items():
            out[u + v] = out.get(u + v, 0) + x * y
            out[v + u] = out.get(v + u, 0) - x * y
    return {w: c for w, c in out.items() if c}


@lru_cache(maxsize=None)
def lyndon_poly(word) -> dict:
    """Expansion of the standard bracketing of a Lyndon word."""
    if len(word) == 1:
        return {word: Q(1)}
    u, v = standard_factorization(word)
    return poly_commutator(lyndon_poly(u), lyndon_poly(v))


def lyndon_coordinates(f: dict) -> dict:
    """Coordinates of a homogeneous Lie polynomial in the Lyndon basis.

    Uses triangularity: the bracketing of l is l plus larger words.
    """
    f = {w: Q(c) for w, c in f.items() if c}
    out = {}
    while f:
        m = min(f)
        if not is_lyndon(m):
            raise ValueError("not a Lie polynomial (leading word %r)" % (m,))
        c = f[m]
        out[m] = c
        for w, x in lyndon_poly(m).items():
            y = f.get(w, 0) - c * x
            if y:
                f[w] = y
            else:
                f.pop(w, None)
    return out


def free_lie_basis(generators: int, w: int) -> list:
    """Lyndon bracketings spanning weight w of the free Lie algebra."""
    return [bracketing(l) for l in lyndon_words(generators, w)]


def witt_dimension(q: int, w: int) -> int:
    """(1/w) sum_{d | w} mu(d) q^(w/d)."""
    def mobius(k):
        res, p = 1, 2
        while p * p <= k:
            if k % p == 0:
                k //= p
                if k % p == 0:
                    return 0
                res = -res
            p += 1
        return -res if k > 1 else res
    return sum(mobius(d) * q ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


# ---------------------------------------------------------------------------
# g_n

class LieElement:
    """Homogeneous element of g_n in the chosen weight basis."""

    __slots__ = ("algebra", "weight", "coords")

    def __init__(self, algebra, weight, coords):
        self.algebra = algebra
        self.weight = weight
        self.coords = {k: Q(c) for k, c in coords.items() if c}

    @property
    def n(self):
        return self.algebra.n

    def __add__(self, other):
        if other.weight != self.weight and self.coords and other.coords:
            raise ValueError("inhomogeneous sum")
        c = dict(self.coords)
        for k, x in other.coords.items():
            c[k] = c.get(k, 0) + x
        return LieElement(self.algebra, max(self.weight, other.weight), c)

    def __neg__(self):
        return LieElement(self.algebra, self.weight, {k: -x for k, x in self.coords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return LieElement(self.algebra, self.weight, {k: c * x for k, x in self.coords.items()})

    def is_zero(self):
        return not self.coords

    def __eq__(self, other):
        return (self - other).is_zero()

    def to_poly(self) -> dict:
        """Image in the free associative algebra (a representative Lie polynomial)."""
        reps = self.algebra.basis(self.weight)
        out: dict = {}
        for k, c in self.coords.items():
            for w, x in lyndon_poly(reps[k]).items():
                out[w] = out.get(w, 0) + c * x
        return {w: c for w, c in out.items() if c}

    def __repr__(self):
        reps = self.algebra.basis(self.weight)
        if not self.coords:
            return "0"
        return " + ".join("%s*L[%s]" % (c, word_str(reps[k])) for k, c in sorted(self.coords.items()))


class DKLie:
    """Weight pieces of g_n up to ``max_weight``."""

    def __init__(self, n: int, max_weight: int = 4, mode: str = STANDARD):
        if n < 2:
            raise ValueError("n must be at least 2")
        self.n = n
        self.mode = mode
        self.max_weight = max_weight
        self.q = num_gens(n)
        self._lyndon: dict = {}
        self._ideal: dict = {}
        self._quot: dict = {}
        self._bracket_memo: dict = {}

    def lyndon(self, w):
        if w not in self._lyndon:
            words = lyndon_words(self.q, w)
            self._lyndon[w] = (words, {l: k for k, l in enumerate(words)})
        return self._lyndon[w]

    def _coords_vector(self, f, w):
        words, index = self.lyndon(w)
        # column order reversed so the largest Lyndon words are eliminated
        N = len(words)
        return {N - 1 - index[l]: c for l, c in lyndon_coordinates(f).items()}

    def ideal(self, w):
        """Semi-echelon spanning rows (reversed Lyndon columns) of J_w."""
        if w in self._ideal:
            return self._ideal[w]
        if w <= 1:
            piv = {}
        elif w == 2:
            piv = echelon([self._coords_vector(r.terms, 2) for r in relators(self.n, self.mode)])
        else:
            words, _ = self.lyndon(w - 1)
            N = len(words)
            rows = []
            for row in self.ideal(w - 1).values():
                f: dict = {}
                for k, c in row.items():
                    for u, x in lyndon_poly(words[N - 1 - k]).items():
                        f[u] = f.get(u, 0) + c * x
                for a in range(self.q):
                    v = self._coords_vector(poly_commutator({(a,): Q(1)}, f), w)
                    if v:
                        rows.append(v)
            piv = echelon(rows)
        self._ideal[w] = piv
        return piv

    def _quotient(self, w):
        if w not in self._quot:
            if w > self.max_weight:
                raise TruncationError("weight %d exceeds truncation bound %d" % (w, self.max_weight))
            words, _ = self.lyndon(w)
            N = len(words)
            red = Reducer(N, list(self.ideal(w).values()))
            cols = sorted(red.representatives, reverse=True)
            reps = [words[N - 1 - k] for k in cols]
            pos = {k: t for t, k in enumerate(cols)}
            self._quot[w] = (reps, red, pos)
        return self._quot[w]

    def basis(self, w):
        """Representative Lyndon words of the weight-w piece of g_n."""
        if w < 1:
            return []
        return self._quotient(w)[0]

    def dimension(self, w):
        return len(self.basis(w))

    def from_poly(self, f: dict, w: int) -> LieElement:
        """Class of a Lie polynomial of weight w."""
        reps, red, pos = self._quotient(w)
        v = red.reduce(self._coords_vector(f, w))
        return LieElement(self, w, {pos[k]: c for k, c in v.items()})

    def generator(self, g):
        return self.from_poly({(g,): Q(1)}, 1)

    def element(self, w, k):
        return LieElement(self, w, {k: Q(1)})

    def bracket_basis(self, a, i, b, j) -> LieElement:
        key = (a, i, b, j)
        hit = self._bracket_memo.get(key)
        if hit is None:
            x = lyndon_poly(self.basis(a)[i])
            y = lyndon_poly(self.basis(b)[j])
            hit = self.from_poly(poly_commutator(x, y), a + b)
            self._bracket_memo[key] = hit
        return hit

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        if x.algebra is not self or y.algebra is not self:
            raise ValueError("elements of different Lie algebras")
        w = x.weight + y.weight
        out = LieElement(self, w, {})
        for i, c in x.coords.items():
            for j, e in y.coords.items():
                out = out + self.bracket_basis(x.weight, i, y.weight, j).scale(c * e)
        return out


def bracket(a: LieElement, b: LieElement) -> LieElement:
    return a.algebra.bracket(a, b)


@lru_cache(maxsize=None)
def get_lie(n: int, max_weight: int = 4, mode: str = STANDARD) -> DKLie:
    return DKLie(n, max_weight, mode)


def g_basis(n: int, w: int, mode: str = STANDARD):
    return get_lie(n, max(w, 4), mode).basis(w)


# ---------------------------------------------------------------------------
# Chevalley-Eilenberg complex

class GradedDims(dict):
    """{(k, w): dim}."""

    def __init__(self, n, data=()):
        super().__init__(data)
        self.n = n

    def poincare(self):
        """Coefficients of sum_k (sum_w dim) t^k."""
        top = max((k for (k, w), d in self.items() if d), default=0)
        out = [0] * (top + 1)
        for (k, w), d in self.items():
            if d:
                out[k] += d
        return out

    def total(self):
        return sum(self.values())

    def to_json(self):
        return {"n": self.n,
                "dims": [{"k": k, "w": w, "dim": d} for (k, w), d in sorted(self.items())]}

    def dumps(self):
        return json.dumps(self.to_json(), sort_keys=True)

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], {(e["k"], e["w"]): e["dim"] for e in data["dims"]})


class CEComplex:
    """Exterior-power complex of g_n, split into weight blocks."""

    def __init__(self, lie: DKLie, max_weight: int):
        self.lie = lie
        self.max_weight = max_weight
        # global basis of g: (weight, index)
        self.elements = [(w, i) for w in range(1, max_weight + 1) for i in range(lie.dimension(w))]
        self.pos = {e: k for k, e in enumerate(self.elements)}
        self._chains: dict = {}

    def chains(self, k, w) -> list:
        """Increasing tuples of global element indices, total weight w."""
        key = (k, w)
        if key in self._chains:
            return self._chains[key]
        out = []
        E = self.elements

        def rec(start, left, budget, acc):
            if left == 0:
                if budget == 0:
                    out.append(tuple(acc))
                return
            for t in range(start, len(E)):
                wt = E[t][0]
                if wt > budget - (left - 1):
                    break
                acc.append(t)
                rec(t + 1, left - 1, budget - wt, acc)
                acc.pop()

        if k == 0:
            out = [()] if w == 0 else []
        else:
            rec(0, k, w, [])
        self._chains[key] = out
        return out

    def _wedge(self, z, rest):
        """Put z in front of the increasing tuple rest; returns (sign, tuple)."""
        if z in rest:
            return 0, None
        pos = sum(1 for r in rest if r < z)
        sign = -1 if pos % 2 else 1
        return sign, rest[:pos] + (z,) + rest[pos:]

    def differential(self, k, w) -> SparseMatrix:
        """Matrix of d: C_{k,w} -> C_{k-1,w} (rows = sources)."""
        src = self.chains(k, w)
        tgt = self.chains(k - 1, w) if k >= 1 else []
        index = {c: t for t, c in enumerate(tgt)}
        m = SparseMatrix(len(src), len(tgt))
        if k < 2:
            return m
        E = self.elements
        for s, chain in enumerate(src):
            row: dict = {}
            for a in range(k):
                for b in range(a + 1, k):
                    sgn = -1 if (a + b) % 2 else 1  # (-1)^{(a+1)+(b+1)}
                    xa, xb = E[chain[a]], E[chain[b]]
                    br = self.lie.bracket_basis(xa[0], xa[1], xb[0], xb[1])
                    rest = chain[:a] + chain[a + 1:b] + chain[b + 1:]
                    for i, c in br.coords.items():
                        z = self.pos[(br.weight, i)]
                        s2, t = self._wedge(z, rest)
                        if s2:
                            col = index[t]
                            row[col] = row.get(col, 0) + sgn * s2 * c
            for col, x in row.items():
                if x:
                    m[s, col] = x
        return m

    def homology(self) -> GradedDims:
        dims = GradedDims(self.lie.n)
        for w in range(self.max_weight + 1):
            ranks = {}
            for k in range(0, w + 2):
                ranks[k] = rank(self.differential(k, w)) if k >= 2 else 0
            for k in range(0, w + 1):
                dims[(k, w)] = len(self.chains(k, w)) - ranks[k] - ranks[k + 1]
        return dims


def ce_homology(n: int, max_weight: int = 4, mode: str = STANDARD) -> GradedDims:
    lie = get_lie(n, max(max_weight, 1), mode)
    return CEComplex(lie, max_weight).homology()


def embed_in_tensor(x: LieElement) -> dict:
    """Lie polynomial of x in the free associative algebra on the t_ij."""
    return x.to_poly()
