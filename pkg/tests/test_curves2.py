import random

import pytest

from pyoptcurve import util
from pyoptcurve.curves1 import EllipticCurve
from pyoptcurve.curves2 import (Genus2Curve, Genus2Recipe,
                                construct_fibered_sextic,
                                count_points_hyperelliptic,
                                count_points_quartic, find_optimal_genus2,
                                verify_genus2)
from pyoptcurve.disc19 import Disc19Field
from pyoptcurve.errors import DegenerateRecipeError, SingularCurveError
from pyoptcurve.fparith import Poly

from oracles import count_sextic, legendre, square_roots, evaluate

F47 = Disc19Field.from_q(47)
F61 = Disc19Field.from_q(61)


@pytest.mark.parametrize('q,a,b,alpha,beta,sextic,count', [
    (47, 1, 38, 1, 30, [33, 0, 22, 0, 4, 0, 1], 74),
    (61, 6, 29, 1, 2, [9, 0, 18, 0, 55, 0, 1], 92),
])
def test_table_sextics(q, a, b, alpha, beta, sextic, count):
    recipe = Genus2Recipe(EllipticCurve(Disc19Field.from_q(q), a, b),
                          alpha, beta)
    C = construct_fibered_sextic(recipe)
    assert list(C.sextic.coeffs) == sextic
    assert C.count == count
    assert C.is_even()


def test_leading_coefficient_is_alpha_inverse_cubed():
    recipe = Genus2Recipe(EllipticCurve(277, 2, 61), 2, 80)
    C = construct_fibered_sextic(recipe)
    assert C.sextic.lc == 104


def test_str():
    C = construct_fibered_sextic(Genus2Recipe(EllipticCurve(F47, 1, 38),
                                              1, 30))
    assert str(C) == 'z^2=x^6+4x^4+22x^2+33'


def test_hyperelliptic_count_matches_enumeration():
    rng = random.Random(2)
    q = 47
    checked = 0
    while checked < 6:
        coeffs = [rng.randrange(q) for _ in range(6)] + [rng.randrange(1, q)]
        C = Genus2Curve(q, coeffs)
        if not C.sextic.is_squarefree():
            continue
        assert count_points_hyperelliptic(C) == count_sextic(q, coeffs)
        checked += 1


@pytest.mark.parametrize('q', [5, 7, 11, 13])
def test_hyperelliptic_count_small_fields(q):
    rng = random.Random(q)
    checked = 0
    while checked < 50:
        coeffs = [rng.randrange(q) for _ in range(6)] + [rng.randrange(1, q)]
        C = Genus2Curve(q, coeffs)
        try:
            count = count_points_hyperelliptic(C)
        except SingularCurveError:
            continue
        assert count == count_sextic(q, coeffs)
        checked += 1


@pytest.mark.parametrize('q', [5, 7, 11, 13])
def test_fibered_counts_small_fields(q):
    rng = random.Random(10 * q)
    checked = 0
    while checked < 50:
        try:
            E1 = EllipticCurve(q, rng.randrange(q), rng.randrange(q))
            recipe = Genus2Recipe(E1, rng.randrange(1, q), rng.randrange(q))
            C = construct_fibered_sextic(recipe)
        except (SingularCurveError, DegenerateRecipeError):
            continue
        quartic = list(recipe.e2_model.coeffs)
        e2_count = count_points_quartic(recipe)
        assert e2_count == count_sextic(q, quartic)
        assert C.count == count_sextic(q, list(C.sextic.coeffs))
        # the Jacobian of C splits as E1 x E2
        assert C.count == E1.count + e2_count - (q + 1)
        checked += 1


def test_quartic_count_matches_enumeration():
    recipe = Genus2Recipe(EllipticCurve(F47, 1, 38), 3, 7)
    quartic = list(recipe.e2_model.coeffs)
    affine = sum(len(square_roots(evaluate(quartic, x, 47), 47))
                 for x in range(47))
    expected = affine + (2 if legendre(3, 47) == 1 else 0)
    assert count_points_quartic(recipe) == expected


def test_degenerate_recipes():
    E = EllipticCurve(F47, 1, 38)
    with pytest.raises(DegenerateRecipeError):
        Genus2Recipe(E, 0, 5)
    # x = 1 is a root of x^3 + x + 45
    with pytest.raises(DegenerateRecipeError):
        Genus2Recipe(EllipticCurve(F47, 1, 45), 1, 46)


def test_singular_sextic_rejected():
    square = Poly([1, 1], 47) ** 2 * Poly([3, 0, 0, 1, 1], 47)
    with pytest.raises(SingularCurveError):
        count_points_hyperelliptic(Genus2Curve(47, square))


def test_sextic_degree():
    with pytest.raises(ValueError):
        Genus2Curve(47, [1, 0, 1])


@pytest.mark.parametrize('kind,count', [('max', 74), ('min', 22)])
def test_find_optimal_genus2(kind, count):
    recipe, C = find_optimal_genus2(F47, kind)
    assert C.count == count
    report = verify_genus2(recipe, kind)
    assert report['pass']
    assert report['E1_kind'] == report['E2_kind'] == util.parse_kind(kind)


def test_verify_genus2_construction_mismatch():
    recipe = Genus2Recipe(EllipticCurve(F47, 1, 38), 1, 30)
    good = verify_genus2(recipe, 'max', [33, 0, 22, 0, 4, 0, 1])
    assert good['pass'] and good['construction_match'] is True
    bad = verify_genus2(recipe, 'max', [34, 0, 22, 0, 4, 0, 1])
    assert not bad['pass'] and bad['construction_match'] is False
    assert bad['count'] == 74


def test_verify_genus2_wrong_kind():
    recipe = Genus2Recipe(EllipticCurve(F47, 1, 38), 1, 30)
    report = verify_genus2(recipe, 'min')
    assert not report['pass']
    assert report['target'] == 22
