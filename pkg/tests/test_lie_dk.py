import json
from itertools import product

from hypothesis import given, settings, strategies as st

from operadform.dk_algebra import PAPER_LITERAL, gen_index
from operadform.kernel import rank
from operadform.lie_dk import (CEComplex, GradedDims, bracket, ce_homology, free_lie_basis, g_basis, get_lie,
                               is_lyndon, lyndon_words)


def mobius(k):
    out, p = 1, 2
    while p * p <= k:
        if k % p == 0:
            k //= p
            if k % p == 0:
                return 0
            out = -out
        p += 1
    return -out if k > 1 else out


def witt(q, w):
    return sum(mobius(d) * q ** (w // d) for d in range(1, w + 1) if w % d == 0) // w


def test_free_lie_examples():
    assert len(free_lie_basis(2, 1)) == 2
    assert len(free_lie_basis(2, 2)) == 1
    assert len(free_lie_basis(3, 2)) == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6))
def test_lyndon_count_matches_witt(q, w):
    words = lyndon_words(q, w)
    assert len(words) == witt(q, w)
    assert all(is_lyndon(x) for x in words)


def test_g2_is_one_dimensional():
    assert [len(g_basis(2, w)) for w in range(1, 5)] == [1, 0, 0, 0]


def test_g3_and_g4_dimensions():
    # g_3 = centre + free Lie on two generators; g_4 = g_3 + free Lie on three
    g3 = [len(g_basis(3, w)) for w in range(1, 5)]
    assert g3 == [1 + witt(2, 1)] + [witt(2, w) for w in range(2, 5)]
    assert g3[:2] == [3, 1]
    g4 = [len(g_basis(4, w)) for w in range(1, 5)]
    assert g4 == [a + witt(3, w) for a, w in zip(g3, range(1, 5))]


def _gen(L, i, j):
    return L.generator(gen_index(i, j))


def test_bracket_examples():
    L3, L4 = get_lie(3), get_lie(4)
    assert bracket(_gen(L3, 1, 2), _gen(L3, 1, 2)).is_zero()
    assert bracket(_gen(L3, 1, 2) + _gen(L3, 1, 3), _gen(L3, 2, 3)).is_zero()
    assert bracket(_gen(L4, 1, 2), _gen(L4, 3, 4)).is_zero()
    assert not bracket(_gen(L3, 1, 2), _gen(L3, 2, 3)).is_zero()


def test_bracket_antisymmetry_and_jacobi():
    L = get_lie(4)
    els = [L.element(w, k) for w in (1, 2) for k in range(L.dimension(w))]
    for x, y in product(els, repeat=2):
        assert bracket(x, y) == -bracket(y, x)
    gens = [L.element(1, k) for k in range(6)]
    for x, y, z in product(gens, gens, els[:8]):
        jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert jac.is_zero()


def test_ce_homology_examples():
    h2 = ce_homology(2)
    assert {k: v for k, v in h2.items() if v} == {(0, 0): 1, (1, 1): 1}
    assert ce_homology(3).poincare() == [1, 3, 2]
    h4 = ce_homology(4)
    assert h4.poincare() == [1, 6, 11, 6] and h4.total() == 24


def test_poincare_recursion_and_concentration():
    prev = [1]
    for n in range(2, 5):
        h = ce_homology(n)
        expected = [a + (n - 1) * b for a, b in zip(prev + [0], [0] + prev)]
        assert h.poincare() == expected
        assert all(d == 0 for (k, w), d in h.items() if k != w)
        prev = expected


def test_ce_differential_squares_to_zero():
    for n in (3, 4):
        ce = CEComplex(get_lie(n), 4)
        for w in range(1, 5):
            for k in range(3, w + 1):
                d1, d2 = ce.differential(k, w), ce.differential(k - 1, w)
                for r in d1.rows():
                    assert _apply_rows(d2, r) == {}


def _apply_rows(m, v):
    out = {}
    for s, c in v.items():
        for t, x in m.row(s).items():
            out[t] = out.get(t, 0) + c * x
    return {t: x for t, x in out.items() if x}


def test_paper_literal_lie_is_larger():
    std = [len(g_basis(4, w)) for w in range(1, 4)]
    lit = [get_lie(4, 4, PAPER_LITERAL).dimension(w) for w in range(1, 4)]
    assert lit[0] == std[0] and all(a > b for a, b in zip(lit[1:], std[1:]))


def test_graded_dims_json():
    h = ce_homology(3)
    back = GradedDims.from_json(json.loads(json.dumps(h.to_json())))
    assert back == h and back.n == 3
    assert {"k": 2, "w": 2, "dim": 2} in h.to_json()["dims"]


def test_relators_vanish_in_g():
    L = get_lie(4)
    for (i, j, k) in [(1, 2, 3), (1, 2, 4), (2, 3, 4), (1, 3, 4)]:
        x = _gen(L, i, j) + _gen(L, i, k)
        assert bracket(x, _gen(L, j, k)).is_zero()
        # bracket with a relator image stays zero one weight up
        for g in range(6):
            assert bracket(L.element(1, g), bracket(x, _gen(L, j, k))).is_zero()


def test_ce_ranks_exact():
    ce = CEComplex(get_lie(3), 3)
    assert rank(ce.differential(2, 2)) == 1
