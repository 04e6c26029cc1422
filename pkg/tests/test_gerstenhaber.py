import random
from itertools import product as cartesian
from math import factorial

import pytest

from operadform.bar_complex import get_bar, induced_insert
from operadform.dk_algebra import NCPolynomial
from operadform.gerstenhaber import (BRACKET, PRODUCT, GerstenhaberElement, MalformedExpression, basis, bracket,
                                     compose, e_bracket, e_mul, evaluate, identity, k_map, k_rank, k_tree,
                                     monomial_json, normal_form, product, random_tree, renormalize,
                                     tree_degree, tree_from_json)

B, P = BRACKET, PRODUCT


def test_basis_sizes():
    assert [len(basis(n)) for n in range(1, 6)] == [factorial(n) for n in range(1, 6)]
    assert basis(1) == [((1,),)]
    assert len(basis(2)) == 2 and len(basis(3)) == 6


def test_normal_form_examples():
    x = normal_form((P, 1, 2))
    assert len(x.terms) == 1 and list(x.terms.values()) == [1]
    lhs = normal_form((B, (P, 1, 2), 3))
    rhs = normal_form((P, 1, (B, 2, 3))) + normal_form((P, (B, 1, 3), 2))
    assert lhs == rhs
    cyc = (normal_form((B, 1, (B, 2, 3))) + normal_form((B, 2, (B, 3, 1)))
           + normal_form((B, 3, (B, 1, 2))))
    assert cyc.is_zero()


def test_malformed_expressions():
    for bad in [(P, 1, 1), (P, 1, 3), ("+", 1, 2), (P, 1)]:
        with pytest.raises(MalformedExpression):
            normal_form(bad)


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_normal_form_idempotent(n):
    rng = random.Random(n)
    for _ in range(200):
        nf = normal_form(random_tree(n, rng))
        assert renormalize(nf) == nf


# elements of prescribed bracket degree on disjoint inputs
def _of_degree(d, labels):
    t = labels[0]
    for l in labels[1:d + 1]:
        t = (B, t, l)
    for l in labels[d + 1:]:
        t = (P, t, l)
    return t


def _triples():
    for da, db, dc in cartesian(range(3), repeat=3):
        a = _of_degree(da, [1, 2, 3])
        b = _of_degree(db, [4, 5, 6])
        c = _of_degree(dc, [7, 8, 9])
        yield (da, db, dc), evaluate(a), evaluate(b), evaluate(c)


def _add(*xs):
    out = {}
    for c, x in xs:
        for k, v in x.items():
            out[k] = out.get(k, 0) + c * v
    return {k: v for k, v in out.items() if v}


def test_leibniz_all_degrees():
    for (da, db, dc), a, b, c in _triples():
        lhs = e_bracket(e_mul(a, b), c)
        sign = (-1) ** (db * (dc + 1))
        rhs = _add((1, e_mul(a, e_bracket(b, c))), (sign, e_mul(e_bracket(a, c), b)))
        assert lhs == rhs


def test_jacobi_shifted_cyclic_form():
    for (da, db, dc), a, b, c in _triples():
        sa, sb, sc = da + 1, db + 1, dc + 1
        total = _add(((-1) ** (sa * sc), e_bracket(a, e_bracket(b, c))),
                     ((-1) ** (sb * sa), e_bracket(b, e_bracket(c, a))),
                     ((-1) ** (sc * sb), e_bracket(c, e_bracket(a, b))))
        assert total == {}


def test_alternative_jacobi_sign_pattern():
    # (-1)^|a| {a,{b,c}} + (-1)^{|a||b|+|b|} {b,{a,c}} + (-1)^{|a||c|+|b||c|+|c|} {c,{a,b}}
    # vanishes exactly when |b| + |c| is even, in particular for all inputs of degree 0
    for (da, db, dc), a, b, c in _triples():
        total = _add(((-1) ** da, e_bracket(a, e_bracket(b, c))),
                     ((-1) ** (da * db + db), e_bracket(b, e_bracket(a, c))),
                     ((-1) ** (da * dc + db * dc + dc), e_bracket(c, e_bracket(a, b))))
        assert (total == {}) == ((db + dc) % 2 == 0)


def test_compose_examples():
    prod3 = compose(1, product(), product())
    assert prod3 == normal_form((P, (P, 1, 2), 3))
    got = compose(1, bracket(), product())
    assert got == normal_form((B, (P, 1, 2), 3))
    for e in basis(3):
        el = GerstenhaberElement.monomial(e)
        assert compose(2, el, identity()) == el
        assert compose(1, identity(), el) == el


def test_compose_associative():
    gens = [product(), bracket()]
    for a, b, c in cartesian(gens, repeat=3):
        for i in (1, 2):
            for j in (1, 2):
                assert compose(i + j - 1, compose(i, a, b), c) == compose(i, a, compose(j, b, c))


def test_monomial_json():
    key = ((1, 3), (2,))
    assert monomial_json(key) == ["*", ["b", 1, 3], 2]
    assert normal_form(tree_from_json(["*", ["b", 1, 3], 2])) == GerstenhaberElement.monomial(key)


def test_k_examples():
    bar2 = get_bar(2)
    assert k_map(product()) == bar2.unit_class()
    assert k_map(bracket()) == bar2.classify(bar2.tensor([NCPolynomial.gen(2, 1, 2)]))


def test_k_preserves_degree():
    for e in basis(3):
        el = GerstenhaberElement.monomial(e)
        cls = k_map(el)
        assert {k for (k, w) in cls.parts} == {el.degree}


@pytest.mark.parametrize("n", [2, 3, 4])
def test_k_rank(n):
    assert k_rank(n) == factorial(n)


def _k_combo(*terms):
    out = None
    for c, tree in terms:
        x = k_tree(tree).scale(c)
        out = x if out is None else out + x
    return out


def _relabel_tree(t, labels):
    if isinstance(t, int):
        return labels[t - 1]
    return (t[0], _relabel_tree(t[1], labels), _relabel_tree(t[2], labels))


def test_k_respects_relations_on_random_instances():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(3, 4)
        labels = list(range(1, n + 1))
        rng.shuffle(labels)
        cuts = sorted(rng.sample(range(1, n), 2))
        groups = [labels[:cuts[0]], labels[cuts[0]:cuts[1]], labels[cuts[1]:]]
        a, b, c = (_relabel_tree(random_tree(len(g), rng), g) for g in groups)
        da, db, dc = tree_degree(a), tree_degree(b), tree_degree(c)
        sa, sb, sc = da + 1, db + 1, dc + 1
        # commutativity of both operations, inside a context c
        assert k_tree((P, (P, a, b), c)) == _k_combo(((-1) ** (da * db), (P, (P, b, a), c)))
        assert k_tree((P, (B, a, b), c)) == _k_combo((-(-1) ** (sa * sb), (P, (B, b, a), c)))
        # associativity
        assert k_tree((P, (P, a, b), c)) == k_tree((P, a, (P, b, c)))
        # Leibniz
        assert k_tree((B, (P, a, b), c)) == _k_combo(
            (1, (P, a, (B, b, c))), ((-1) ** (db * (dc + 1)), (P, (B, a, c), b)))
        # Jacobi
        assert _k_combo(((-1) ** (sa * sc), (B, a, (B, b, c))), ((-1) ** (sb * sa), (B, b, (B, c, a))),
                        ((-1) ** (sc * sb), (B, c, (B, a, b)))).is_zero()


def test_k_tree_agrees_with_normal_form():
    rng = random.Random(3)
    for n in (2, 3, 4):
        for _ in range(20):
            tree = random_tree(n, rng)
            assert k_tree(tree) == k_map(normal_form(tree))


def test_k_intertwines_composition():
    gens = [product(), bracket()] + [GerstenhaberElement.monomial(e) for e in basis(3)]
    for a in gens:
        for b in (product(), bracket()):
            for i in range(1, a.arity + 1):
                assert k_map(compose(i, a, b)) == induced_insert(i, k_map(a), k_map(b))


def _elements(arities):
    return [GerstenhaberElement.monomial(e) for n in arities for e in basis(n)]


def test_compose_axioms_with_koszul_sign():
    els = _elements((2, 3))
    small = _elements((2,))
    for a in els:
        for b in small:
            for c in small:
                m = b.arity
                for i in range(1, a.arity + 1):
                    for j in range(1, m + 1):
                        assert compose(i + j - 1, compose(i, a, b), c) == compose(i, a, compose(j, b, c))
                    for k in range(i + 1, a.arity + 1):
                        lhs = compose(k + m - 1, compose(i, a, b), c)
                        rhs = compose(i, compose(k, a, c), b).scale((-1) ** (b.degree * c.degree))
                        assert lhs == rhs


def test_k_intertwines_composition_all_pairs():
    els = _elements((2, 3))
    for a in els:
        for b in els:
            if a.arity + b.arity - 1 > 4:
                continue
            for i in range(1, a.arity + 1):
                assert k_map(compose(i, a, b)) == induced_insert(i, k_map(a), k_map(b))
