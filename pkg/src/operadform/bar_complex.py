"""
Normalized bar complex of A_n and its homology.

A chain basis element is a tuple of factors ``(weight, rep_index)``, each a
representative word of positive weight in A_n. The block (k, w) holds the
length-k tuples of total weight w. The differential is

    d(a_1|...|a_k) = sum_{i=1}^{k-1} (-1)^i (a_1|...|a_i a_{i+1}|...|a_k),

the end terms of the unnormalized formula vanishing since the augmentation
kills every factor.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .dk_algebra import (STANDARD, NCPolynomial, apply_generator_map, get_algebra,
                         inner_images, outer_images, symmetric_action)
from .kernel import (Q, Permutation, Reducer, SparseMatrix, echelon, nullspace_basis,
                     rank, reduce_vector, solve_affine)


def compositions(w, k):
    """Ordered k-tuples of positive integers summing to w."""
    if k == 0:
        if w == 0:
            yield ()
        return
    for first in range(1, w - k + 2):
        for rest in compositions(w - first, k - 1):
            yield (first,) + rest


class BarChain:
    """A tensor a_1 | ... | a_k of augmentation-ideal elements of A_n."""

    def __init__(self, factors):
        factors = list(factors)
        if not factors:
            raise ValueError("use BarComplex.unit() for the empty tensor")
        n = factors[0].n
        for f in factors:
            if f.n != n:
                raise ValueError("factors over different A_n")
            if f.terms.get(()):
                raise ValueError("bar factors must lie in the augmentation ideal")
        self.n = n
        self.factors = factors

    @property
    def degree(self):
        return len(self.factors)


class HomologyClass:
    """A homology class of the bar complex of A_n.

    ``parts`` maps a bidegree (k, w) to coordinates in that block's homology
    basis; ``representative`` is a cycle {chain basis tuple: coeff}.
    """

    def __init__(self, n, parts, representative=None):
        self.n = n
        self.parts = {kw: {j: Q(c) for j, c in v.items() if c} for kw, v in parts.items()}
        self.parts = {kw: v for kw, v in self.parts.items() if v}
        self.representative = representative or {}

    @property
    def bidegrees(self):
        return sorted(self.parts)

    @property
    def k(self):
        ks = {k for k, w in self.parts}
        if len(ks) != 1:
            raise ValueError("inhomogeneous class")
        return ks.pop()

    @property
    def w(self):
        ws = {w for k, w in self.parts}
        if len(ws) != 1:
            raise ValueError("inhomogeneous class")
        return ws.pop()

    def is_zero(self):
        return not self.parts

    def flat(self) -> dict:
        return {(k, w, j): c for (k, w), v in self.parts.items() for j, c in v.items()}

    def __add__(self, other):
        parts = {kw: dict(v) for kw, v in self.parts.items()}
        for kw, v in other.parts.items():
            tgt = parts.setdefault(kw, {})
            for j, c in v.items():
                tgt[j] = tgt.get(j, 0) + c
        rep = dict(self.representative)
        for t, c in other.representative.items():
            rep[t] = rep.get(t, 0) + c
        return HomologyClass(self.n, parts, {t: c for t, c in rep.items() if c})

    def scale(self, c):
        return HomologyClass(self.n, {kw: {j: c * x for j, x in v.items()} for kw, v in self.parts.items()},
                             {t: c * x for t, x in self.representative.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return self.n == other.n and (self - other).is_zero()

    def __repr__(self):
        return "HomologyClass(n=%d, %r)" % (self.n, self.parts)


class HomologyBlock:
    """Kernel-mod-image basis of one bidegree."""

    def __init__(self, bar, k, w):
        self.bar = bar
        self.k, self.w = k, w
        dim = len(bar.chains(k, w))
        self.dim = dim
        if k >= 2:
            cycles = nullspace_basis(bar.differential(k, w).transpose())
        else:
            cycles = [{j: Q(1)} for j in range(dim)]
        boundaries = [r for r in bar.differential(k + 1, w).rows() if r]
        self.boundaries = Reducer(dim, boundaries)
        kept, reduced, piv = [], [], {}
        for z in cycles:
            r = self.boundaries.reduce(z)
            if reduce_vector(r, piv):
                piv = echelon(list(piv.values()) + [r])
                kept.append(z)
                reduced.append(r)
        self.representatives = kept
        self._reduced = reduced

    @property
    def dimension(self):
        return len(self.representatives)

    def coordinates(self, v: dict) -> dict:
        """Coordinates of the class of the cycle v."""
        if self.k >= 2:
            dv = self.bar.apply_differential(v, self.k, self.w)
            if dv:
                raise ValueError("chain is not a cycle")
        r = self.boundaries.reduce(v)
        if not r:
            return {}
        x = solve_affine(self._reduced, r)
        if x is None:
            raise ArithmeticError("cycle not in the span of the homology basis")
        return {j: c for j, c in enumerate(x) if c}


class BarComplex:
    """Bigraded normalized bar complex of A_n up to ``max_weight``."""

    def __init__(self, n: int, max_weight: int = 4, mode: str = STANDARD):
        self.n = n
        self.mode = mode
        self.max_weight = max_weight
        self.algebra = get_algebra(n, mode)
        self._chains: dict = {}
        self._index: dict = {}
        self._diff: dict = {}
        self._blocks: dict = {}

    def chains(self, k, w) -> list:
        key = (k, w)
        if key not in self._chains:
            out = []
            for comp in compositions(w, k):
                dims = [self.algebra.dimension(d) for d in comp]
                out.extend(_tuples(comp, dims))
            self._chains[key] = out
            self._index[key] = {c: t for t, c in enumerate(out)}
        return self._chains[key]

    def index(self, k, w):
        self.chains(k, w)
        return self._index[(k, w)]

    def word(self, factor):
        d, i = factor
        return self.algebra.basis(d).representatives[i]

    def _product(self, f, g):
        """Reduced product of two representative factors as {factor: coeff}."""
        d = f[0] + g[0]
        comb = self.algebra.basis(d).reduce_word(self.word(f) + self.word(g))
        return {(d, s): c for s, c in comb.items()}

    def differential(self, k, w) -> SparseMatrix:
        """d: B_{k,w} -> B_{k-1,w}; row r is the image of chain basis r."""
        key = (k, w)
        if key in self._diff:
            return self._diff[key]
        src = self.chains(k, w)
        tgt_index = self.index(k - 1, w) if k >= 1 else {}
        m = SparseMatrix(len(src), len(tgt_index))
        if k >= 2:
            for s, chain in enumerate(src):
                row = self._d_basis(chain, tgt_index)
                for col, x in row.items():
                    m[s, col] = x
        self._diff[key] = m
        return m

    def _d_basis(self, chain, tgt_index):
        row: dict = {}
        for i in range(len(chain) - 1):
            sign = -1 if i % 2 == 0 else 1  # (-1)^{i+1} for 0-based i
            for f, c in self._product(chain[i], chain[i + 1]).items():
                t = tgt_index[chain[:i] + (f,) + chain[i + 2:]]
                row[t] = row.get(t, 0) + sign * c
        return {t: x for t, x in row.items() if x}

    def apply_differential(self, v: dict, k, w) -> dict:
        m = self.differential(k, w)
        out: dict = {}
        for s, c in v.items():
            for t, x in m.row(s).items():
                out[t] = out.get(t, 0) + c * x
        return {t: x for t, x in out.items() if x}

    def homology_block(self, k, w) -> HomologyBlock:
        if (k, w) not in self._blocks:
            self._blocks[(k, w)] = HomologyBlock(self, k, w)
        return self._blocks[(k, w)]

    def homology_dims(self, max_weight=None):
        from .lie_dk import GradedDims
        W = self.max_weight if max_weight is None else max_weight
        dims = GradedDims(self.n)
        for w in range(W + 1):
            ranks = {k: rank(self.differential(k, w)) if k >= 2 else 0 for k in range(w + 2)}
            for k in range(w + 1):
                dims[(k, w)] = len(self.chains(k, w)) - ranks[k] - ranks[k + 1]
        return dims

    # chains as dicts {basis tuple: coeff} -----------------------------------

    def tensor(self, factors) -> dict:
        """Expand a tensor of polynomials into {basis tuple: coeff}."""
        out = {(): Q(1)}
        for f in factors:
            f = self.algebra.reduce(f)
            if f.terms.get(()):
                raise ValueError("bar factors must lie in the augmentation ideal")
            nxt: dict = {}
            for t, c in out.items():
                for wd, x in f.terms.items():
                    d = len(wd)
                    key = t + ((d, self.algebra.basis(d).index[wd]),)
                    nxt[key] = nxt.get(key, 0) + c * x
            out = nxt
        return {t: c for t, c in out.items() if c}

    def by_block(self, chain: dict) -> dict:
        """Split {basis tuple: coeff} into {(k, w): {index: coeff}}."""
        out: dict = {}
        for t, c in chain.items():
            k, w = len(t), sum(f[0] for f in t)
            idx = self.index(k, w)[t]
            blk = out.setdefault((k, w), {})
            blk[idx] = blk.get(idx, 0) + c
        return {kw: {i: c for i, c in v.items() if c} for kw, v in out.items()}

    def from_block(self, k, w, v: dict) -> dict:
        ch = self.chains(k, w)
        return {ch[i]: c for i, c in v.items() if c}

    def chain_differential(self, chain: dict) -> dict:
        out: dict = {}
        for (k, w), v in self.by_block(chain).items():
            if k < 2:
                continue
            for t, c in self.from_block(k - 1, w, self.apply_differential(v, k, w)).items():
                out[t] = out.get(t, 0) + c
        return {t: c for t, c in out.items() if c}

    def chain_polys(self, t):
        return [NCPolynomial(self.n, {self.word(f): 1}, self.mode) for f in t]

    def classify(self, chain: dict) -> HomologyClass:
        parts = {}
        for (k, w), v in self.by_block(chain).items():
            parts[(k, w)] = self.homology_block(k, w).coordinates(v)
        return HomologyClass(self.n, parts, dict(chain))

    def basis_class(self, k, w, j) -> HomologyClass:
        blk = self.homology_block(k, w)
        rep = self.from_block(k, w, blk.representatives[j])
        return HomologyClass(self.n, {(k, w): {j: Q(1)}}, rep)

    def unit_class(self) -> HomologyClass:
        return HomologyClass(self.n, {(0, 0): {0: Q(1)}}, {(): Q(1)})


def _tuples(comp, dims):
    out = [()]
    for d, D in zip(comp, dims):
        out = [t + ((d, i),) for t in out for i in range(D)]
    return out


@lru_cache(maxsize=None)
def get_bar(n: int, max_weight: int = 4, mode: str = STANDARD) -> BarComplex:
    return BarComplex(n, max_weight, mode)


def bar_differential(c: BarChain) -> dict:
    """d of a tensor of polynomials, as {basis tuple: coeff} in the bar complex."""
    bar = get_bar(c.n)
    return bar.chain_differential(bar.tensor(c.factors))


def homology_basis(n: int, k: int, w: int, max_weight: int = 4) -> list:
    bar = get_bar(n, max(max_weight, w))
    blk = bar.homology_block(k, w)
    return [bar.basis_class(k, w, j) for j in range(blk.dimension)]


def homology_dims(n: int, max_weight: int = 4, mode: str = STANDARD):
    return BarComplex(n, max_weight, mode).homology_dims()


# ---------------------------------------------------------------------------
# operad structure on homology

def shuffles(k, l):
    """(positions of the first list, sign) over all (k, l)-shuffles."""
    for pos in combinations(range(k + l), k):
        inv = 0
        # pairs (a_i, b_j) with b_j placed before a_i
        for p_idx, p in enumerate(pos):
            inv += p - p_idx
        yield pos, (-1 if inv % 2 else 1)


def _factor_images(bar_src, factor, images, target_n, mode):
    word = bar_src.word(factor)
    return apply_generator_map(NCPolynomial(bar_src.n, {word: 1}, mode), images, target_n)


def insert_chains(i: int, x: dict, n: int, y: dict, m: int, mode=STANDARD) -> dict:
    """Chain-level o_i: shuffle product of the factor lists followed by the
    algebra maps a -> o_i(a (x) 1), b -> o_i(1 (x) b)."""
    bx, by = get_bar(n, mode=mode), get_bar(m, mode=mode)
    N = n + m - 1
    target = get_bar(N, mode=mode)
    oim, iim = outer_images(i, n, m), inner_images(i, m)
    cache: dict = {}

    def img(which, f):
        key = (which, f)
        if key not in cache:
            if which == 0:
                cache[key] = _factor_images(bx, f, oim, N, mode)
            else:
                cache[key] = _factor_images(by, f, iim, N, mode)
        return cache[key]

    out: dict = {}
    for tx, cx in x.items():
        for ty, cy in y.items():
            k, l = len(tx), len(ty)
            for pos, sign in shuffles(k, l):
                factors = []
                a = b = 0
                pset = set(pos)
                for p in range(k + l):
                    if p in pset:
                        factors.append(img(0, tx[a]))
                        a += 1
                    else:
                        factors.append(img(1, ty[b]))
                        b += 1
                for t, c in target.tensor(factors).items():
                    out[t] = out.get(t, 0) + sign * cx * cy * c
    return {t: c for t, c in out.items() if c}


def induced_insert(i: int, x: HomologyClass, y: HomologyClass) -> HomologyClass:
    if not 1 <= i <= x.n:
        raise IndexError("insertion position %d outside 1..%d" % (i, x.n))
    chain = insert_chains(i, x.representative, x.n, y.representative, y.n)
    return get_bar(x.n + y.n - 1).classify(chain)


def act_chain(sigma: Permutation, chain: dict, n: int) -> dict:
    bar = get_bar(n)
    out: dict = {}
    for t, c in chain.items():
        factors = [symmetric_action(sigma, p) for p in bar.chain_polys(t)]
        for t2, e in bar.tensor(factors).items():
            out[t2] = out.get(t2, 0) + c * e
    return {t: c for t, c in out.items() if c}


def act_class(sigma: Permutation, x: HomologyClass) -> HomologyClass:
    """Factorwise symmetric action on a class."""
    return get_bar(x.n).classify(act_chain(sigma, x.representative, x.n))


def mu_class() -> HomologyClass:
    """Class of the unit in arity 2 (image of the product)."""
    return get_bar(2).unit_class()


def beta_class() -> HomologyClass:
    """Class of the one-factor chain t_12 in arity 2 (image of the bracket)."""
    bar = get_bar(2)
    return bar.classify(bar.tensor([NCPolynomial.gen(2, 1, 2)]))


def total_homology_dim(n: int) -> int:
    """Dimension of homology in bidegrees (k, k), k < n, where it is concentrated."""
    bar = get_bar(n, max(4, n - 1))
    return sum(bar.homology_block(k, k).dimension for k in range(n))


def generation_check(n: int):
    """Does the operad generated by the product and bracket classes (under
    insertion and the symmetric groups) span the homology in arity n?

    Returns (ok, certificate) where the certificate lists, per arity, the
    chosen spanning classes as expression strings.
    """
    mu, beta = mu_class(), beta_class()
    level = [(mu, "mu"), (beta, "beta")]
    certificate = {2: [e for _, e in level]}
    ok = True
    if n < 2:
        return n == 1, {1: ["id"]}
    for a in range(2, n):
        target_dim = total_homology_dim(a + 1)
        chosen, piv = [], {}
        perms = Permutation.all(a + 1)
        coord_index: dict = {}

        def add(cls, expr):
            nonlocal piv
            v = {}
            for key, c in cls.flat().items():
                v[coord_index.setdefault(key, len(coord_index))] = c
            if reduce_vector(v, piv):
                piv = echelon(list(piv.values()) + [v])
                chosen.append((cls, expr))

        for cls, expr in level:
            for pos in range(1, a + 1):
                for gen, gname in ((mu, "mu"), (beta, "beta")):
                    base = induced_insert(pos, cls, gen)
                    bexpr = "(%s o_%d %s)" % (expr, pos, gname)
                    for sigma in perms:
                        if len(chosen) == target_dim:
                            break
                        img = base if sigma.is_identity() else act_class(sigma, base)
                        tag = bexpr if sigma.is_identity() else "%s.%s" % (
                            "".join(map(str, sigma.images)), bexpr)
                        add(img, tag)
        level = chosen
        certificate[a + 1] = [e for _, e in chosen]
        if len(chosen) != target_dim:
            ok = False
            break
    return ok, certificate
