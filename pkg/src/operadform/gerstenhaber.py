"""
The Gerstenhaber operad e_2 and the map k into bar homology.

Elements of e_2(n) are computed in a faithful model: a graded-commutative
product of Lie words, where each Lie word is expanded in the free
associative algebra on the inputs with the bracket acting as the super
commutator (every input is odd for the shifted degree). A basis monomial is
a product of left-combed brackets {...{{x_a, x_b}, x_c}...} over the blocks
of a set partition, the first letter of every comb being the smallest one in
its block. In the expanded model that monomial is the unique tuple of words
each starting with its smallest letter, which makes reading off normal-form
coordinates immediate.

Degrees count brackets: |x_i| = 0 and |{a, b}| = |a| + |b| + 1.
"""

from __future__ import annotations

import random
from itertools import permutations

from .kernel import Q, Permutation

PRODUCT = "*"
BRACKET = "b"


class MalformedExpression(ValueError):
    pass


# ---------------------------------------------------------------------------
# expanded model: {tuple of words: coeff}, factors sorted by smallest letter

def _deg(word):
    return len(word) - 1


def _sort_factors(factors):
    """Sort by smallest letter, tracking the Koszul sign of each swap."""
    f = list(factors)
    sign = 1
    for i in range(1, len(f)):
        j = i
        while j > 0 and min(f[j - 1]) > min(f[j]):
            if _deg(f[j - 1]) * _deg(f[j]) % 2:
                sign = -sign
            f[j - 1], f[j] = f[j], f[j - 1]
            j -= 1
    return sign, tuple(f)


def _add(out, key, c):
    x = out.get(key, 0) + c
    if x:
        out[key] = x
    else:
        out.pop(key, None)


def e_mul(X: dict, Y: dict) -> dict:
    out: dict = {}
    for kx, cx in X.items():
        for ky, cy in Y.items():
            s, key = _sort_factors(kx + ky)
            _add(out, key, s * cx * cy)
    return out


def _word_bracket(u, v):
    """Super commutator of two words of odd-shifted letters."""
    s = -1 if (len(u) * len(v)) % 2 else 1
    return [(u + v, 1), (v + u, -s)]


def _bracket_monomials(kx, ky):
    """{p_1...p_r, q_1...q_s} by the two derivation rules."""
    out: dict = {}
    dq = sum(_deg(q) for q in ky)
    for i, p in enumerate(kx):
        after = sum(_deg(x) for x in kx[i + 1:])
        s1 = -1 if ((dq + 1) * after) % 2 else 1
        before_q = 0
        for j, q in enumerate(ky):
            s2 = -1 if ((_deg(p) + 1) * before_q) % 2 else 1
            before_q += _deg(q)
            for w, c in _word_bracket(p, q):
                # {p_i, Q} replaces p_i in place; inside it, {p, q_j} sits at q_j
                inner = ky[:j] + (w,) + ky[j + 1:]
                factors = kx[:i] + inner + kx[i + 1:]
                s, key = _sort_factors(factors)
                _add(out, key, s * s1 * s2 * c)
    return out


def e_bracket(X: dict, Y: dict) -> dict:
    out: dict = {}
    for kx, cx in X.items():
        for ky, cy in Y.items():
            for key, c in _bracket_monomials(kx, ky).items():
                _add(out, key, c * cx * cy)
    return out


def e_degree(X: dict):
    degs = {sum(_deg(w) for w in key) for key in X}
    return degs.pop() if len(degs) == 1 else None


def relabel(X: dict, f) -> dict:
    out: dict = {}
    for key, c in X.items():
        s, k2 = _sort_factors(tuple(tuple(f(l) for l in w) for w in key))
        _add(out, k2, s * c)
    return out


# ---------------------------------------------------------------------------
# expression trees

def leaves(expr):
    if isinstance(expr, int):
        return [expr]
    if not isinstance(expr, (tuple, list)) or len(expr) != 3 or expr[0] not in (PRODUCT, BRACKET):
        raise MalformedExpression("bad node %r" % (expr,))
    return leaves(expr[1]) + leaves(expr[2])


def arity_of(expr):
    ls = leaves(expr)
    if sorted(ls) != list(range(1, len(ls) + 1)):
        raise MalformedExpression("inputs must be 1..n each used once, got %r" % (ls,))
    return len(ls)


def tree_degree(expr):
    if isinstance(expr, int):
        return 0
    d = tree_degree(expr[1]) + tree_degree(expr[2])
    return d + 1 if expr[0] == BRACKET else d


def evaluate(expr, leaf=None) -> dict:
    """Expanded value of a tree; ``leaf`` maps an input label to a value."""
    if isinstance(expr, int):
        return leaf(expr) if leaf else {((expr,),): Q(1)}
    op, a, b = expr
    A, B = evaluate(a, leaf), evaluate(b, leaf)
    return e_mul(A, B) if op == PRODUCT else e_bracket(A, B)


# ---------------------------------------------------------------------------
# elements

def _is_normal_key(key):
    return all(w[0] == min(w) for w in key)


class GerstenhaberElement:
    """Rational combination of normal-form monomials of arity n."""

    def __init__(self, arity: int, terms=None):
        self.arity = arity
        self.terms = {tuple(tuple(w) for w in k): Q(c) for k, c in (terms or {}).items() if c}

    @classmethod
    def from_expanded(cls, arity, X: dict):
        return cls(arity, {k: c for k, c in X.items() if _is_normal_key(k)})

    @classmethod
    def monomial(cls, key, c=1):
        key = tuple(tuple(w) for w in key)
        n = sum(len(w) for w in key)
        return cls(n, {key: c})

    def expand(self) -> dict:
        out: dict = {}
        for key, c in self.terms.items():
            for k2, e in evaluate(monomial_tree(key)).items():
                _add(out, k2, c * e)
        return out

    @property
    def degree(self):
        degs = {sum(_deg(w) for w in k) for k in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def __add__(self, other):
        t = dict(self.terms)
        for k, c in other.terms.items():
            _add(t, k, c)
        return GerstenhaberElement(self.arity, t)

    def scale(self, c):
        return GerstenhaberElement(self.arity, {k: c * x for k, x in self.terms.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return self.arity == other.arity and self.terms == other.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%s*%s" % (c, monomial_str(k)) for k, c in sorted(self.terms.items()))

    def to_json(self):
        return {"arity": self.arity,
                "terms": [{"monomial": monomial_json(k), "coeff": str(c)}
                          for k, c in sorted(self.terms.items())]}


def comb_tree(word):
    t = word[0]
    for l in word[1:]:
        t = (BRACKET, t, l)
    return t


def monomial_tree(key):
    t = comb_tree(key[0])
    for w in key[1:]:
        t = (PRODUCT, t, comb_tree(w))
    return t


def _tree_json(t):
    if isinstance(t, int):
        return t
    return [t[0], _tree_json(t[1]), _tree_json(t[2])]


def monomial_json(key):
    """Nested arrays, e.g. ["*", ["b", 1, 3], 2] for {x_1,x_3}.x_2."""
    return _tree_json(monomial_tree(key))


def tree_from_json(data):
    if isinstance(data, int):
        return data
    if isinstance(data, list) and len(data) == 3:
        return (data[0], tree_from_json(data[1]), tree_from_json(data[2]))
    raise MalformedExpression("bad node %r" % (data,))


def monomial_str(key):
    def comb(w):
        s = "x%d" % w[0]
        for l in w[1:]:
            s = "{%s,x%d}" % (s, l)
        return s
    return ".".join(comb(w) for w in key)


def tree_str(t):
    if isinstance(t, int):
        return "x%d" % t
    if t[0] == PRODUCT:
        return "(%s.%s)" % (tree_str(t[1]), tree_str(t[2]))
    return "{%s,%s}" % (tree_str(t[1]), tree_str(t[2]))


def normal_form(expr) -> GerstenhaberElement:
    n = arity_of(expr)
    return GerstenhaberElement.from_expanded(n, evaluate(expr))


def renormalize(e: GerstenhaberElement) -> GerstenhaberElement:
    """Rewrite every monomial of e as a tree and normalize again."""
    out = GerstenhaberElement(e.arity)
    for key, c in e.terms.items():
        out = out + normal_form(monomial_tree(key)).scale(c)
    return out


def set_partitions(elements):
    elements = list(elements)
    if not elements:
        yield []
        return
    first, rest = elements[0], elements[1:]
    for part in set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1:]


def basis(n: int) -> list:
    """Normal-form monomials of arity n; there are n! of them."""
    if n < 1:
        raise ValueError("arity must be positive")
    out = []
    for part in set_partitions(range(1, n + 1)):
        blocks = sorted((sorted(b) for b in part), key=lambda b: b[0])
        choices = [[(b[0],) + p for p in permutations(b[1:])] for b in blocks]
        keys = [()]
        for ch in choices:
            keys = [k + (w,) for k in keys for w in ch]
        out.extend(keys)
    return sorted(out, key=lambda k: (sum(_deg(w) for w in k), k))


def _operation_sign(tree):
    """Sign s with tree (read with algebra brackets) = s * (tree read with beta),
    where {a, b} = (-1)^{|a|} beta(a, b) on inputs of degree 0."""
    if isinstance(tree, int):
        return 1
    s = _operation_sign(tree[1]) * _operation_sign(tree[2])
    if tree[0] == BRACKET and tree_degree(tree[1]) % 2:
        s = -s
    return s


def _evaluate_operation(tree, values, degrees):
    """Value of the operation tree (beta at bracket nodes) on graded arguments.

    Returns (value, degree of the arguments used). Koszul rule: the right
    subtree passes the arguments of the left one; beta(u, v) = (-1)^{|u|}{u, v}.
    """
    if isinstance(tree, int):
        return values[tree], degrees[tree]
    op, a, b = tree
    u, du = _evaluate_operation(a, values, degrees)
    v, dv = _evaluate_operation(b, values, degrees)
    sign = -1 if (tree_degree(b) * du) % 2 else 1
    if op == PRODUCT:
        val = e_mul(u, v)
    else:
        val = e_bracket(u, v)
        if (tree_degree(a) + du) % 2:
            sign = -sign
    if sign < 0:
        val = {k: -c for k, c in val.items()}
    return val, du + dv


def compose(i: int, outer: GerstenhaberElement, inner: GerstenhaberElement) -> GerstenhaberElement:
    """outer o_i inner: outer applied as an operation with inner in slot i."""
    n, m = outer.arity, inner.arity
    if not 1 <= i <= n:
        raise IndexError("composition position %d outside 1..%d" % (i, n))
    by_degree: dict = {}
    for key, c in inner.terms.items():
        by_degree.setdefault(sum(_deg(w) for w in key), {})[key] = c
    out: dict = {}
    for d, terms in by_degree.items():
        inner_x = relabel(GerstenhaberElement(m, terms).expand(), lambda l: l + i - 1)
        values, degrees = {}, {}
        for j in range(1, n + 1):
            if j == i:
                values[j], degrees[j] = inner_x, d
            else:
                values[j] = {(((j if j < i else j + m - 1),),): Q(1)}
                degrees[j] = 0
        for key, c in outer.terms.items():
            tree = monomial_tree(key)
            val, _ = _evaluate_operation(tree, values, degrees)
            c = c * _operation_sign(tree)
            for k2, e in val.items():
                _add(out, k2, c * e)
    return GerstenhaberElement.from_expanded(n + m - 1, out)


def identity() -> GerstenhaberElement:
    return GerstenhaberElement(1, {((1,),): 1})


def product() -> GerstenhaberElement:
    return normal_form((PRODUCT, 1, 2))


def bracket() -> GerstenhaberElement:
    return normal_form((BRACKET, 1, 2))


def random_tree(n: int, rng: random.Random):
    """Random binary tree of products and brackets on a random ordering of 1..n."""
    labels = list(range(1, n + 1))
    rng.shuffle(labels)

    def build(ls):
        if len(ls) == 1:
            return ls[0]
        cut = rng.randint(1, len(ls) - 1)
        return (rng.choice((PRODUCT, BRACKET)), build(ls[:cut]), build(ls[cut:]))

    return build(labels)


# ---------------------------------------------------------------------------
# the map k: e_2 -> homology of the bar complex

def _k_planar(tree):
    """(class over positions, labels left to right) or (None, [label]) for a leaf."""
    from .bar_complex import beta_class, induced_insert, mu_class
    if isinstance(tree, int):
        return None, [tree]
    op, a, b = tree
    ca, la = _k_planar(a)
    cb, lb = _k_planar(b)
    res = mu_class() if op == PRODUCT else beta_class()
    if ca is not None:
        res = induced_insert(1, res, ca)
    if cb is not None:
        res = induced_insert(len(la) + 1, res, cb)
    if op == BRACKET and tree_degree(a) % 2:
        # the algebra bracket is the operation beta twisted by (-1)^{|a|}
        res = res.scale(-1)
    return res, la + lb


def k_tree(tree):
    """k evaluated directly on an expression tree, without normalizing."""
    from .bar_complex import act_class
    arity_of(tree)
    cls, labels = _k_planar(tree)
    if cls is None:
        raise ValueError("k is defined on arity >= 2")
    sigma = Permutation(labels)
    return cls if sigma.is_identity() else act_class(sigma, cls)


def k_map(e: GerstenhaberElement):
    """Image of e in the homology of the bar complex of A_{arity}."""
    from .bar_complex import HomologyClass
    out = HomologyClass(e.arity, {})
    for key, c in e.terms.items():
        out = out + k_tree(monomial_tree(key)).scale(c)
    return out


def k_rank(n: int) -> int:
    """Rank of k on basis(n) against the bar homology in arity n."""
    from .kernel import echelon
    index: dict = {}
    rows = []
    for key in basis(n):
        v = {}
        for kwj, c in k_map(GerstenhaberElement.monomial(key)).flat().items():
            v[index.setdefault(kwj, len(index))] = c
        rows.append(v)
    return len(echelon(rows))
