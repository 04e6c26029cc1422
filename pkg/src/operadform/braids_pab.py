"""
Braid words and the category of parenthesized braids.

Conventions
-----------
* A braid word on n strands is a sequence of nonzero ints; ``+j`` is the
  positive crossing of the strands at positions j, j+1 and ``-j`` its inverse.
* Strands are numbered by their starting position. The underlying
  permutation sends a starting position to the final position of that strand.
* An object (parenthesized permutation) is a nested tuple of labels, e.g.
  ``((1, 2), 3)``. Reading leaves left to right gives position -> label.
* A morphism source -> target joins each label to the same label, i.e.
  perm(braid) = sigma_target^{-1} o sigma_source. Morphisms compose left to
  right: ``compose_morphisms(f, g)`` is f followed by g.
"""

from __future__ import annotations

from .kernel import Permutation


class MorphismError(ValueError):
    pass


class BraidWord:
    __slots__ = ("n", "letters")

    def __init__(self, n: int, letters=()):
        letters = tuple(int(x) for x in letters)
        for x in letters:
            if x == 0 or abs(x) >= n:
                raise ValueError("letter %d out of range for %d strands" % (x, n))
        self.n = n
        self.letters = letters

    def __mul__(self, other):
        if other.n != self.n:
            raise ValueError("strand counts differ")
        return BraidWord(self.n, self.letters + other.letters)

    def inverse(self):
        return BraidWord(self.n, tuple(-x for x in reversed(self.letters)))

    def __eq__(self, other):
        return isinstance(other, BraidWord) and (self.n, self.letters) == (other.n, other.letters)

    def __hash__(self):
        return hash((self.n, self.letters))

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return "BraidWord(%d, %r)" % (self.n, list(self.letters))

    def to_json(self):
        return {"n": self.n, "word": list(self.letters)}

    @classmethod
    def from_json(cls, data):
        return cls(int(data["n"]), data["word"])


def underlying_permutation(b: BraidWord) -> Permutation:
    at = list(range(1, b.n + 1))  # at[position-1] = strand there
    for x in b.letters:
        j = abs(x)
        at[j - 1], at[j] = at[j], at[j - 1]
    final = [0] * b.n
    for pos, strand in enumerate(at, 1):
        final[strand - 1] = pos
    return Permutation(final)


def is_pure(b: BraidWord) -> bool:
    return underlying_permutation(b).is_identity()


def crossing_counts(b: BraidWord) -> dict:
    """Signed crossing count per unordered pair of strands (by origin)."""
    at = list(range(1, b.n + 1))
    out: dict = {}
    for x in b.letters:
        j = abs(x)
        pair = tuple(sorted((at[j - 1], at[j])))
        out[pair] = out.get(pair, 0) + (1 if x > 0 else -1)
        at[j - 1], at[j] = at[j], at[j - 1]
    return {p: c for p, c in out.items() if c}


def linking_numbers(b: BraidWord) -> dict:
    """Pairwise linking numbers of a pure braid (half the signed crossings)."""
    if not is_pure(b):
        raise ValueError("linking numbers need a pure braid")
    return {p: c // 2 for p, c in crossing_counts(b).items()}


# ---------------------------------------------------------------------------
# parenthesized permutations

def tree_leaves(t) -> list:
    if isinstance(t, int):
        return [t]
    left, right = t
    return tree_leaves(left) + tree_leaves(right)


def normalize_tree(t):
    """Lists (e.g. from JSON) to nested tuples."""
    if isinstance(t, int):
        return t
    if len(t) != 2:
        raise ValueError("parenthesizations are binary: %r" % (t,))
    return (normalize_tree(t[0]), normalize_tree(t[1]))


def map_labels(t, f):
    if isinstance(t, int):
        return f(t)
    return (map_labels(t[0], f), map_labels(t[1], f))


def shape(t):
    """Parenthesization with labels forgotten."""
    if isinstance(t, int):
        return "."
    return (shape(t[0]), shape(t[1]))


class ParenPerm:
    __slots__ = ("tree",)

    def __init__(self, tree):
        tree = normalize_tree(tree)
        labels = tree_leaves(tree)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise ValueError("leaf labels must be a permutation of 1..n: %r" % (labels,))
        self.tree = tree

    @property
    def n(self):
        return len(tree_leaves(self.tree))

    @property
    def labels(self):
        return tree_leaves(self.tree)

    @property
    def permutation(self) -> Permutation:
        """position -> label"""
        return Permutation(self.labels)

    def relabel(self, sigma: Permutation) -> "ParenPerm":
        return ParenPerm(map_labels(self.tree, sigma))

    def __eq__(self, other):
        return isinstance(other, ParenPerm) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)

    def __repr__(self):
        return "ParenPerm(%r)" % (self.tree,)

    def to_json(self):
        def conv(t):
            return t if isinstance(t, int) else [conv(t[0]), conv(t[1])]
        return conv(self.tree)


def substitute(t, k: int, inner, m: int):
    """Replace leaf k of t by the tree ``inner`` (labels 1..m -> k..k+m-1)."""
    def f(node):
        if isinstance(node, int):
            if node == k:
                return map_labels(inner, lambda l: l + k - 1)
            return node if node < k else node + m - 1
        return (f(node[0]), f(node[1]))
    return f(t)


class PaBMorphism:
    __slots__ = ("source", "target", "braid")

    def __init__(self, source, target, braid):
        source = source if isinstance(source, ParenPerm) else ParenPerm(source)
        target = target if isinstance(target, ParenPerm) else ParenPerm(target)
        if not isinstance(braid, BraidWord):
            braid = BraidWord(source.n, braid)
        if not (source.n == target.n == braid.n):
            raise MorphismError("strand counts differ")
        expected = target.permutation.inverse().compose(source.permutation)
        if underlying_permutation(braid) != expected:
            raise MorphismError("braid does not join each label of %r to the same label of %r"
                                % (source.tree, target.tree))
        self.source, self.target, self.braid = source, target, braid

    @property
    def n(self):
        return self.braid.n

    @classmethod
    def identity(cls, obj):
        obj = obj if isinstance(obj, ParenPerm) else ParenPerm(obj)
        return cls(obj, obj, BraidWord(obj.n))

    def inverse(self):
        return PaBMorphism(self.target, self.source, self.braid.inverse())

    def relabel(self, sigma: Permutation):
        """T_sigma: renumber objects, keep the braid."""
        return PaBMorphism(self.source.relabel(sigma), self.target.relabel(sigma), self.braid)

    def __eq__(self, other):
        return (isinstance(other, PaBMorphism) and self.source == other.source
                and self.target == other.target and self.braid == other.braid)

    def __hash__(self):
        return hash((self.source, self.target, self.braid))

    def __repr__(self):
        return "PaBMorphism(%r -> %r, %r)" % (self.source.tree, self.target.tree, list(self.braid.letters))

    def crossing_counts_by_label(self):
        """Signed crossings per unordered pair of labels."""
        lab = self.source.labels
        return {tuple(sorted((lab[a - 1], lab[b - 1]))): c
                for (a, b), c in crossing_counts(self.braid).items()}


def compose_morphisms(f: PaBMorphism, g: PaBMorphism) -> PaBMorphism:
    """f followed by g."""
    if f.target != g.source:
        raise MorphismError("target %r of the first morphism is not the source %r of the second"
                            % (f.target.tree, g.source.tree))
    return PaBMorphism(f.source, g.target, f.braid * g.braid)


def cable_word(word: BraidWord, strand_pos: int, m: int) -> tuple:
    """Replace the strand starting at ``strand_pos`` by m parallel strands.

    Returns (letters, final position of the bundle's first strand).
    """
    c = strand_pos
    out = []
    for x in word.letters:
        j, s = abs(x), (1 if x > 0 else -1)
        if j == c:
            # bundle at j..j+m-1 crosses the single strand at j+m, which moves left
            out.extend(s * p for p in range(c + m - 1, c - 1, -1))
            c += 1
        elif j + 1 == c:
            # single strand at j crosses the bundle at j+1..j+m, moving right
            out.extend(s * p for p in range(j, j + m))
            c -= 1
        else:
            out.append(s * (j if j < c else j + m - 1))
    return tuple(out), c


def cable_insert(k: int, outer: PaBMorphism, inner: PaBMorphism) -> PaBMorphism:
    """Insert ``inner`` into the strand labelled k of ``outer``."""
    n, m = outer.n, inner.n
    if not 1 <= k <= n:
        raise IndexError("insertion position %d outside 1..%d" % (k, n))
    src = substitute(outer.source.tree, k, inner.source.tree, m)
    tgt = substitute(outer.target.tree, k, inner.target.tree, m)
    start = outer.source.permutation.inverse()(k)
    letters, end = cable_word(outer.braid, start, m)
    letters = letters + tuple((abs(x) + end - 1) * (1 if x > 0 else -1) for x in inner.braid.letters)
    return PaBMorphism(src, tgt, BraidWord(n + m - 1, letters))


def elementary_generators():
    """x: x1x2 -> x2x1 along sigma_1, and i: (x1x2)x3 -> x1(x2x3) along the identity braid."""
    x = PaBMorphism((1, 2), (2, 1), [1])
    i = PaBMorphism(((1, 2), 3), (1, (2, 3)), [])
    return {"x": x, "i": i}
