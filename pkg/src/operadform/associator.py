"""
Rational associators and the functor phi from parenthesized braids to the
Drinfeld-Kohno algebras.

Images are indexed by labels: the chord t_ab joins the strands carrying
labels a and b, so composition in PaB_n is plain multiplication (f then g
maps to phi(f) * phi(g)). phi(x) = exp(t_12 / 2) for the crossing
x1x2 -> x2x1 and phi(i) = Phi for (x1x2)x3 -> x1(x2x3).
"""

from __future__ import annotations

import json
from functools import lru_cache

from .braids_pab import PaBMorphism, ParenPerm, tree_leaves, underlying_permutation
from .dk_algebra import NCPolynomial, augment, get_algebra, insert, multiply, symmetric_action
from .kernel import Q, Permutation, echelon, fmt_rational, reduce_vector, solve_affine
from .lie_dk import get_lie, lyndon_poly


class NoSolutionError(ArithmeticError):
    pass


# ---------------------------------------------------------------------------
# truncated series

def mul_trunc(a, b, N):
    return multiply(a, b, truncate=N)


def exp_series(a: NCPolynomial, N: int) -> NCPolynomial:
    if augment(a):
        raise ValueError("exp needs zero constant term")
    out = NCPolynomial.one(a.n)
    term = NCPolynomial.one(a.n)
    for k in range(1, N + 1):
        term = mul_trunc(term, a, N).scale(Q(1, k))
        if not term.terms:
            break
        out = out + term
    return out.truncate(N)


def log_series(a: NCPolynomial, N: int) -> NCPolynomial:
    if augment(a) != 1:
        raise ValueError("log needs constant term 1")
    x = (a - 1).reduced().truncate(N)
    out = NCPolynomial.zero(a.n)
    power = NCPolynomial.one(a.n)
    for k in range(1, N + 1):
        power = mul_trunc(power, x, N)
        if not power.terms:
            break
        out = out + power.scale(Q((-1) ** (k + 1), k))
    return out.reduced()


def inverse_series(a: NCPolynomial, N: int) -> NCPolynomial:
    c = augment(a)
    if not c:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    x = (NCPolynomial.one(a.n) - a.scale(1 / c)).reduced().truncate(N)
    out = NCPolynomial.one(a.n)
    power = NCPolynomial.one(a.n)
    for _ in range(N):
        power = mul_trunc(power, x, N)
        if not power.terms:
            break
        out = out + power
    return out.scale(1 / c).reduced()


# ---------------------------------------------------------------------------
# group-likeness

@lru_cache(maxsize=None)
def lie_span(n: int, d: int):
    """Semi-echelon basis of the primitive (Lie) part of degree d of A_n."""
    if d < 1:
        return {}
    lie = get_lie(n, max(d, 4))
    basis = get_algebra(n).basis(d)
    rows = [basis.vector(lyndon_poly(l)) for l in lie.basis(d)]
    return echelon(rows)


def is_lie(a: NCPolynomial) -> bool:
    for d in a.weights:
        if d == 0:
            return False
        comp = a.component(d)
        v = get_algebra(a.n).basis(d).vector(comp.terms)
        if reduce_vector(v, lie_span(a.n, d)):
            return False
    return True


def is_group_like(a: NCPolynomial, N: int) -> bool:
    if augment(a) != 1:
        raise ValueError("group-likeness needs augmentation 1")
    return is_lie(log_series(a.reduced().truncate(N), N).truncate(N))


# ---------------------------------------------------------------------------
# associator series

class AssociatorSeries:
    """Phi in A_3, known through ``degree``."""

    def __init__(self, poly: NCPolynomial, degree: int, log: NCPolynomial | None = None):
        if poly.n != 3:
            raise ValueError("an associator lives in A_3")
        self.poly = poly.reduced().truncate(degree)
        self.degree = degree
        self._log = log

    @classmethod
    def trivial(cls, degree):
        return cls(NCPolynomial.one(3), degree)

    @property
    def log(self):
        if self._log is None:
            self._log = log_series(self.poly, self.degree)
        return self._log

    def component(self, d):
        return self.poly.component(d)

    def coefficient_of_bracket(self, d=2, pair=((1, 2), (2, 3))):
        """c with log(Phi)_d = c [t_a, t_b], or None if not proportional."""
        (i, j), (k, l) = pair
        a, b = NCPolynomial.gen(3, i, j), NCPolynomial.gen(3, k, l)
        br = (a * b - b * a).reduced()
        basis = get_algebra(3).basis(d)
        x = solve_affine([basis.vector(br.terms)], basis.vector(self.log.component(d).terms))
        return None if x is None else x[0]

    def to_json(self):
        data = self.poly.to_json()
        data["degree"] = self.degree
        return data

    @classmethod
    def from_json(cls, data):
        return cls(NCPolynomial.from_json(data), int(data["degree"]))

    def dump(self, path):
        with open(path, "w") as fh:
            json.dump(self.to_json(), fh, indent=1, sort_keys=True)

    @classmethod
    def load(cls, path):
        with open(path) as fh:
            return cls.from_json(json.load(fh))

    def __repr__(self):
        return "AssociatorSeries(degree=%d, %r)" % (self.degree, self.poly)


def unit(n):
    return NCPolynomial.one(n)


def relabel_to(a: NCPolynomial, labels, n: int) -> NCPolynomial:
    """Embed an element over positions 1..s into A_n, position p -> labels[p-1]."""
    s = a.n
    if s < n:
        a = insert(1, unit(n - s + 1), a)
    rest = [l for l in range(1, n + 1) if l not in labels]
    sigma = Permutation(list(labels) + rest)
    return a if sigma.is_identity() else symmetric_action(sigma, a)


def block_substitute(phi: NCPolynomial, blocks, n: int) -> NCPolynomial:
    """phi^{A,B,C}: t_pq -> sum of t_ab over a in block p, b in block q,
    computed by inserting units into each slot and relabelling."""
    a = phi
    for pos in range(len(blocks), 0, -1):
        size = len(blocks[pos - 1])
        if size > 1:
            a = insert(pos, a, unit(size))
    labels = [l for b in blocks for l in b]
    return relabel_to(a, labels, n)


def crossing(n, a, b, sign, N):
    return exp_series(NCPolynomial.gen(n, a, b, Q(sign, 2)), N)


# ---------------------------------------------------------------------------
# coherence

class CoherenceDefect:
    def __init__(self, name, poly: NCPolynomial):
        self.name = name
        self.poly = poly

    def is_zero(self):
        return not self.poly.reduced().terms

    def first_nonzero_degree(self):
        w = [d for d in self.poly.reduced().weights]
        return min(w) if w else None

    def __repr__(self):
        return "CoherenceDefect(%s, %r)" % (self.name, self.poly)


def _phi_inv(phi: AssociatorSeries, N):
    return inverse_series(phi.poly.truncate(N), N)


def defect_polys(phi_poly: NCPolynomial, N: int) -> dict:
    """LHS - RHS of the pentagon and both hexagons, truncated at N."""
    P = phi_poly.truncate(N)
    Pinv = inverse_series(P, N)
    u2 = unit(2)

    def m(*xs):
        out = xs[0]
        for x in xs[1:]:
            out = mul_trunc(out, x, N)
        return out

    # ((12)3)4 -> (12)(34) -> 1(2(34))  versus
    # ((12)3)4 -> (1(23))4 -> 1((23)4) -> 1(2(34))
    lhs = m(insert(1, P, u2), insert(3, P, u2))
    rhs = m(insert(1, u2, P), insert(2, P, u2), insert(2, u2, P))
    pentagon = (lhs - rhs).truncate(N)

    X = exp_series(NCPolynomial.gen(2, 1, 2, Q(1, 2)), N)
    # (12)3 -> 3(12): block crossing versus
    # (12)3 -> 1(23) -> 1(32) -> (13)2 -> (31)2 -> 3(12)
    lhs = insert(1, X, u2).truncate(N)
    rhs = m(P, insert(2, unit(2), X),
            inverse_series(block_substitute(P, [[1], [3], [2]], 3), N),
            relabel_to(X, [1, 3], 3),
            block_substitute(P, [[3], [1], [2]], 3))
    hex1 = (lhs - rhs).truncate(N)

    # 1(23) -> (23)1: block crossing versus
    # 1(23) -> (12)3 -> (21)3 -> 2(13) -> 2(31) -> (23)1
    lhs = insert(2, X, u2).truncate(N)
    rhs = m(Pinv, relabel_to(X, [1, 2], 3),
            block_substitute(P, [[2], [1], [3]], 3),
            relabel_to(X, [1, 3], 3),
            inverse_series(block_substitute(P, [[2], [3], [1]], 3), N))
    hex2 = (lhs - rhs).truncate(N)
    return {"pentagon": pentagon.reduced(), "hexagon-1": hex1.reduced(), "hexagon-2": hex2.reduced()}


def well_definedness_defects(phi: AssociatorSeries, N: int | None = None) -> list:
    N = phi.degree if N is None else N
    if augment(phi.poly) != 1:
        raise ValueError("associator must have augmentation 1")
    return [CoherenceDefect(k, v) for k, v in defect_polys(phi.poly, N).items()]


# ---------------------------------------------------------------------------
# degree-by-degree solver

def _lie_basis_polys(d):
    lie = get_lie(3, max(d, 4))
    return [NCPolynomial(3, lyndon_poly(l)).reduced() for l in lie.basis(d)]


def _defect_vector(psi: NCPolynomial, d: int) -> dict:
    polys = defect_polys(exp_series(psi, d), d)
    vec = {}
    offset = 0
    for name in ("pentagon", "hexagon-1", "hexagon-2"):
        p = polys[name]
        basis = get_algebra(p.n).basis(d)
        for k, x in basis.vector(p.component(d).terms).items():
            vec[offset + k] = x
        offset += basis.dimension
    return vec


def solve(N: int, log=None) -> AssociatorSeries:
    """Phi = exp(psi_1 + ... + psi_N), psi_d Lie, each psi_d solving the
    degree-d part of the coherence equations (free parameters set to 0)."""
    psi = NCPolynomial.zero(3)
    for d in range(1, N + 1):
        const = _defect_vector(psi, d)
        cols = []
        for e in _lie_basis_polys(d):
            v = _defect_vector(psi + e, d)
            cols.append({k: v.get(k, 0) - const.get(k, 0) for k in set(v) | set(const)
                         if v.get(k, 0) != const.get(k, 0)})
        target = {k: -x for k, x in const.items()}
        if not target:
            x = [Q(0)] * len(cols)
        elif not cols:
            x = None
        else:
            x = solve_affine(cols, target)
        if x is None:
            raise NoSolutionError("no solution at degree %d" % d)
        for c, e in zip(x, _lie_basis_polys(d)):
            if c:
                psi = psi + e.scale(c)
        if log:
            log("degree %d: %d unknowns, solution %s" % (d, len(cols), [fmt_rational(c) for c in x]))
    psi = psi.reduced()
    return AssociatorSeries(exp_series(psi, N), N, log=psi)


# ---------------------------------------------------------------------------
# the functor phi

def _to_right_comb(tree):
    """Moves ((A B) C) -> (A (B C)) bringing tree to the right comb, as
    (A, B, C) label tuples."""
    moves = []

    def rec(t):
        if isinstance(t, int):
            return t
        left, right = t
        while not isinstance(left, int):
            a, b = left
            moves.append((tuple(tree_leaves(a)), tuple(tree_leaves(b)), tuple(tree_leaves(right))))
            left, right = a, (b, right)
        return (left, rec(right))

    rec(tree)
    return moves


def _right_comb(items):
    t = items[-1]
    for x in reversed(items[:-1]):
        t = (x, t)
    return t


class PhiEvaluator:
    """phi for a fixed associator and truncation degree."""

    def __init__(self, phi: AssociatorSeries, N: int | None = None):
        self.phi = phi
        self.N = phi.degree if N is None else N
        P = phi.poly.truncate(self.N)
        self.P, self.Pinv = P, inverse_series(P, self.N)
        self._memo: dict = {}

    def move(self, blocks, n, inverse=False):
        key = (blocks, n, inverse)
        if key not in self._memo:
            src = self.Pinv if inverse else self.P
            self._memo[key] = block_substitute(src, [list(b) for b in blocks], n).truncate(self.N)
        return self._memo[key]

    def reassociate(self, t1, t2, n):
        """Image of the unique identity-braid morphism t1 -> t2."""
        if tree_leaves(t1) != tree_leaves(t2):
            raise ValueError("reassociation must keep the leaf order")
        out = unit(n)
        for mv in _to_right_comb(t1):
            out = mul_trunc(out, self.move(mv, n), self.N)
        for mv in reversed(_to_right_comb(t2)):
            out = mul_trunc(out, self.move(mv, n, inverse=True), self.N)
        return out

    def __call__(self, f: PaBMorphism) -> NCPolynomial:
        n, N = f.n, self.N
        tree = f.source.tree
        out = unit(n)
        for x in f.braid.letters:
            j, s = abs(x), (1 if x > 0 else -1)
            L = tree_leaves(tree)
            cherry = (L[j - 1], L[j])
            t2 = _right_comb(L[:j - 1] + [cherry] + L[j + 1:])
            out = mul_trunc(out, self.reassociate(tree, t2, n), N)
            out = mul_trunc(out, crossing(n, L[j - 1], L[j], s, N), N)
            tree = _right_comb(L[:j - 1] + [(L[j], L[j - 1])] + L[j + 1:])
        out = mul_trunc(out, self.reassociate(tree, f.target.tree, n), N)
        return out.reduced()


def phi_evaluate(f: PaBMorphism, phi: AssociatorSeries, N: int | None = None) -> NCPolynomial:
    return PhiEvaluator(phi, N)(f)


def phi_image(f: PaBMorphism, phi: AssociatorSeries, N: int | None = None):
    """(image in A_n, underlying permutation of the braid)."""
    return phi_evaluate(f, phi, N), underlying_permutation(f.braid)


def braid_relation_morphisms():
    """sigma_1 sigma_2 sigma_1 and sigma_2 sigma_1 sigma_2 from (x1x2)x3 to (x3x2)x1."""
    src = ParenPerm(((1, 2), 3))
    tgt = ParenPerm(((3, 2), 1))
    return PaBMorphism(src, tgt, [1, 2, 1]), PaBMorphism(src, tgt, [2, 1, 2])


def braid_relation_check(phi: AssociatorSeries, N: int | None = None) -> bool:
    N = phi.degree if N is None else N
    if N <= 0:
        return True
    ev = PhiEvaluator(phi, N)
    f, g = braid_relation_morphisms()
    return ev(f) == ev(g)
