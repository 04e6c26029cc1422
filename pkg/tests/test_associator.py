import json
from fractions import Fraction
from itertools import product

import pytest

from operadform.associator import (AssociatorSeries, PhiEvaluator, braid_relation_check, exp_series,
                                   inverse_series, is_group_like, log_series, mul_trunc, phi_evaluate, solve,
                                   well_definedness_defects)
from operadform.braids_pab import PaBMorphism, cable_insert, compose_morphisms, elementary_generators
from operadform.dk_algebra import NCPolynomial, augment, get_algebra, insert
from operadform.kernel import solve_affine

t = NCPolynomial.gen
N = 4


@pytest.fixture(scope="module")
def phi():
    return solve(N)


def test_series_inverses():
    a = t(3, 1, 2).scale(Fraction(1, 3)) + t(3, 2, 3) * t(3, 1, 3)
    e = exp_series(a, 4)
    assert log_series(e, 4) == a.truncate(4)
    assert mul_trunc(e, inverse_series(e, 4), 4) == NCPolynomial.one(3)


def test_group_like_examples():
    assert is_group_like(exp_series(t(2, 1, 2).scale(Fraction(1, 2)), 4), 4)
    assert not is_group_like(NCPolynomial.one(3) + t(3, 1, 2) * t(3, 1, 3), 2)
    assert is_group_like(NCPolynomial.one(3), 4)
    with pytest.raises(ValueError):
        is_group_like(t(3, 1, 2), 2)


def test_trivial_associator_defects():
    defects = {d.name: d for d in well_definedness_defects(AssociatorSeries.trivial(4), 4)}
    assert defects["pentagon"].is_zero()
    assert not defects["hexagon-1"].is_zero()
    assert defects["hexagon-1"].first_nonzero_degree() == 2


def _degree2_oracle():
    """c in Phi = 1 + c [t12, t23] + ..., from the linearised first hexagon.

    Relabelling acts on the one-dimensional weight-2 Lie part of A_3 by the
    sign of the permutation, so the degree-2 equation reads
    c (1 - sgn(132) + sgn(312)) [t12, t23] = [t13, t23] / 8.
    """
    B = get_algebra(3).basis(2)
    omega = t(3, 1, 2) * t(3, 2, 3) - t(3, 2, 3) * t(3, 1, 2)
    rhs = (t(3, 1, 3) * t(3, 2, 3) - t(3, 2, 3) * t(3, 1, 3)).scale(Fraction(1, 8))
    (x,) = solve_affine([B.vector(omega.terms)], B.vector(rhs.terms))
    return x / 3


def test_solve_degree_parts(phi):
    assert phi.log.component(1).is_zero()
    c = phi.coefficient_of_bracket(2)
    assert c == _degree2_oracle()
    assert abs(c) == Fraction(1, 24)


def test_solved_associator_round_trip(phi):
    assert augment(phi.poly) == 1
    assert is_group_like(phi.poly, N)
    assert all(d.is_zero() for d in well_definedness_defects(phi, N))
    assert braid_relation_check(phi, N)


def test_braid_relation_controls(phi):
    assert not braid_relation_check(AssociatorSeries.trivial(2), 2)
    assert braid_relation_check(AssociatorSeries.trivial(0), 0)
    assert braid_relation_check(solve(2), 2)


def test_associator_file_round_trip(phi, tmp_path):
    path = tmp_path / "phi.json"
    phi.dump(path)
    data = json.loads(path.read_text())
    assert data["n"] == 3 and data["degree"] == N
    back = AssociatorSeries.load(path)
    assert back.poly == phi.poly and back.degree == N


def test_phi_on_generators(phi):
    g = elementary_generators()
    ev = PhiEvaluator(phi)
    assert ev(g["x"]) == exp_series(t(2, 1, 2).scale(Fraction(1, 2)), N)
    assert ev(g["i"]) == phi.poly
    loop = compose_morphisms(g["x"], PaBMorphism((2, 1), (1, 2), [1]))
    assert ev(loop) == exp_series(t(2, 1, 2), N)


def _small_morphisms():
    out = [PaBMorphism((1, 2), (2, 1), [1]), PaBMorphism((2, 1), (1, 2), [-1]),
           PaBMorphism.identity((1, 2)), PaBMorphism((1, 2), (1, 2), [1, 1])]
    out += [PaBMorphism(((1, 2), 3), (1, (2, 3)), []), PaBMorphism((1, (2, 3)), ((1, 2), 3), []),
            PaBMorphism(((1, 2), 3), ((2, 1), 3), [1]), PaBMorphism(((2, 1), 3), (2, (1, 3)), []),
            PaBMorphism((2, (1, 3)), (2, (3, 1)), [-2]), PaBMorphism((1, (2, 3)), ((2, 3), 1), [1, 2]),
            PaBMorphism(((2, 3), 1), ((1, 2), 3), [-2, -1])]
    return out


def test_phi_functorial(phi):
    ev = PhiEvaluator(phi)
    ms = _small_morphisms()
    pairs = 0
    for f, g in product(ms, repeat=2):
        if f.target == g.source:
            assert ev(compose_morphisms(f, g)) == mul_trunc(ev(f), ev(g), N)
            pairs += 1
    assert pairs >= 8


def test_phi_respects_insertion(phi):
    ev = PhiEvaluator(phi)
    g = elementary_generators()
    ids = [PaBMorphism.identity((1, 2)), PaBMorphism.identity(((1, 2), 3))]
    for f in [g["x"], g["i"]] + ids:
        for h in [g["x"], g["i"], ids[0]]:
            for k in range(1, f.n + 1):
                assert ev(cable_insert(k, f, h)) == insert(k, ev(f), ev(h), truncate=N)


def test_images_have_augmentation_one(phi):
    ev = PhiEvaluator(phi)
    for f in _small_morphisms():
        assert augment(ev(f)) == 1


def test_phi_evaluate_function(phi):
    x = elementary_generators()["x"]
    assert phi_evaluate(x, phi, 2) == exp_series(t(2, 1, 2).scale(Fraction(1, 2)), 2)
