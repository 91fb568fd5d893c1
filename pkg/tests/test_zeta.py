import pytest

from pyoptcurve import util
from pyoptcurve.curves1 import EllipticCurve
from pyoptcurve.curves2 import Genus2Recipe, construct_fibered_sextic
from pyoptcurve.curves3 import Genus3Cover
from pyoptcurve.disc19 import Disc19Field
from pyoptcurve.errors import InconsistentCountsError, UnsupportedError
from pyoptcurve.fparith import Poly
from pyoptcurve.zeta import (ExtensionCounts, LPolynomial,
                             count_over_extension, extension_counts,
                             is_optimal_lpoly, lpoly_from_counts,
                             optimal_lpoly, point_counts_from_lpoly)

from oracles import polymul

F47 = Disc19Field.from_q(47)
E47 = EllipticCurve(F47, 1, 38)
CUBE = [1, 39, 648, 5863, 30456, 86151, 103823]


def test_elliptic_extension_counts():
    assert count_over_extension(E47, 1) == 61
    assert count_over_extension(E47, 2) == 2135


def test_extension_degree_limits():
    with pytest.raises(UnsupportedError):
        count_over_extension(E47, 4)
    E997 = EllipticCurve(Disc19Field.from_q(997), 6, 493)
    with pytest.raises(UnsupportedError):
        count_over_extension(E997, 3)


@pytest.mark.parametrize('q,g,N,coeffs', [
    (47, 1, (61,), [1, 13, 47]),
    (5, 1, (6,), [1, 0, 5]),
    (47, 3, (87, 1985, 104916), CUBE),
])
def test_lpoly_from_counts(q, g, N, coeffs):
    L = lpoly_from_counts(ExtensionCounts(q, g, N))
    assert list(L.coeffs) == coeffs
    assert L.satisfies_functional_equation()


def test_cube_expansion_matches_oracle():
    factor = [1, 13, 47]
    assert polymul(polymul(factor, factor), factor) == CUBE
    assert list(optimal_lpoly(F47, 3, 'max').coeffs) == CUBE


def test_inconsistent_counts():
    # 676 - 149 is odd, so the second Newton step does not divide
    with pytest.raises(InconsistentCountsError):
        lpoly_from_counts(ExtensionCounts(47, 2, (74, 2061)))
    with pytest.raises(InconsistentCountsError):
        lpoly_from_counts(ExtensionCounts(47, 1, (100,)))
    with pytest.raises(InconsistentCountsError):
        lpoly_from_counts(ExtensionCounts(47, 1, (61, 2136)))
    with pytest.raises(ValueError):
        lpoly_from_counts(ExtensionCounts(47, 3, (87,)))


def test_point_counts_from_lpoly():
    L = optimal_lpoly(F47, 3, 'max')
    assert point_counts_from_lpoly(L, 3) == [87, 1985, 104916]
    assert point_counts_from_lpoly(optimal_lpoly(F47, 1, 'max'), 2) == [
        61, 2135]


def test_is_optimal_lpoly():
    plus, minus = [1, 13, 47], [1, -13, 47]
    cube = LPolynomial(47, polymul(polymul(plus, plus), plus))
    assert is_optimal_lpoly(cube, F47, 3, 'max')
    assert not is_optimal_lpoly(cube, F47, 3, 'min')
    neg = LPolynomial(47, polymul(polymul(minus, minus), minus))
    assert not is_optimal_lpoly(neg, F47, 3, 'max')
    mixed = LPolynomial(47, polymul(polymul(plus, plus), minus))
    for kind in util.KINDS:
        assert not is_optimal_lpoly(mixed, F47, 3, kind)
    assert not is_optimal_lpoly(cube, F47, 2, 'max')


def test_lpolynomial_format():
    L = LPolynomial(47, [1, 13, 47])
    assert str(L) == '1+13t+47t^2'
    assert str(LPolynomial(47, [1, -13, 47])) == '1-13t+47t^2'
    assert L.power_sums(2) == [-13, 75]
    with pytest.raises(ValueError):
        LPolynomial(47, [1, 13])


@pytest.mark.parametrize('q,a,b', [(47, 1, 38), (61, 6, 29), (61, 32, 57)])
def test_genus1_round_trip(q, a, b):
    E = EllipticCurve(Disc19Field.from_q(q), a, b)
    counts = extension_counts(E, r_max=3)
    L = lpoly_from_counts(ExtensionCounts(q, 1, counts.N[:1]))
    assert point_counts_from_lpoly(L, 3) == list(counts.N)


@pytest.mark.slow
def test_genus1_round_trip_q137():
    E = EllipticCurve(Disc19Field.from_q(137), 1, 36)
    counts = extension_counts(E, r_max=3)
    L = lpoly_from_counts(ExtensionCounts(137, 1, counts.N[:1]))
    assert point_counts_from_lpoly(L, 3) == list(counts.N)


def test_genus2_is_optimal():
    C = construct_fibered_sextic(Genus2Recipe(E47, 1, 30))
    counts = extension_counts(C, g=2)
    assert counts.N == (74, 2060)
    assert is_optimal_lpoly(lpoly_from_counts(counts), F47, 2, 'max')


def test_genus3_second_count():
    cover = Genus3Cover(E47, [23, 19, 44], [1])
    assert count_over_extension(cover, 2) == 1985


@pytest.mark.slow
def test_genus3_is_optimal():
    cover = Genus3Cover(E47, [23, 19, 44], [1])
    counts = extension_counts(cover)
    assert counts.N == (87, 1985, 104916)
    assert is_optimal_lpoly(lpoly_from_counts(counts), F47, 3, 'max')


def test_even_zeros_over_extension_unsupported():
    x0, c = 1, 2
    u = Poly([-x0, 1], 47) ** 2 * Poly([-c, 1], 47)
    cover = Genus3Cover(E47, list(u.coeffs), [0])
    with pytest.raises(UnsupportedError):
        count_over_extension(cover, 2)


def test_non_optimal_row_second_count():
    cover = Genus3Cover(E47, [39, 46, 10], [1])
    assert cover.count == 57
    assert count_over_extension(cover, 2) == 2109
