import math
import random

import numpy as np
import pytest

from pyoptcurve.fparith import (FieldCtx, Poly, ext_chi, extension_field,
                                format_poly, legendre_chi, poly_eval,
                                poly_gcd_sqfree, prime_field,
                                smallest_irreducible)

from oracles import legendre


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        FieldCtx(45)
    with pytest.raises(ValueError):
        FieldCtx(2)


def test_prime_field_is_shared():
    assert prime_field(47) is prime_field(47)


@pytest.mark.parametrize('q', [5, 7, 47, 61])
def test_legendre_chi_matches_euler(q):
    ctx = prime_field(q)
    for x in range(q):
        assert legendre_chi(x, ctx) == legendre(x, q)


def test_legendre_chi_rejects_unreduced():
    with pytest.raises(ValueError):
        legendre_chi(47, prime_field(47))
    with pytest.raises(ValueError):
        legendre_chi(-1, prime_field(47))


def test_chi_table_balance():
    chi = prime_field(61).chi
    assert chi[0] == 0
    assert (chi == 1).sum() == 30
    assert (chi == -1).sum() == 30


def test_smallest_irreducible():
    # -1 is a nonsquare modulo 47 but a square modulo 5
    assert smallest_irreducible(47, 2) == (1, 0, 1)
    assert smallest_irreducible(5, 2) == (2, 0, 1)
    modulus = smallest_irreducible(7, 3)
    assert len(modulus) == 4 and modulus[-1] == 1
    assert all(poly_eval(Poly(modulus, 7), x) != 0 for x in range(7))


def test_extension_rejects_reducible_modulus():
    with pytest.raises(ValueError):
        FieldCtx(5, (1, 0, 1))


def test_extension_arithmetic():
    ctx = extension_field(47, 2)
    t = (0, 1)
    assert ctx.mul(t, t) == ctx.embed(-1)
    x = (3, 5)
    assert ctx.pow(x, ctx.size - 1) == ctx.one
    assert ctx.add(x, ctx.sub(ctx.zero, x)) == ctx.zero


@pytest.mark.parametrize('q,r', [(5, 2), (7, 3), (47, 2)])
def test_vectorized_matches_scalar(q, r):
    ctx = extension_field(q, r)
    rng = random.Random(q * r)
    codes = [rng.randrange(ctx.size) for _ in range(40)]
    A = ctx.decode(codes)
    B = ctx.decode(codes[::-1])
    prod = ctx.vmul(A, B)
    chis = ctx.vchi(A)
    for k in range(len(codes)):
        a = tuple(int(c) for c in A[:, k])
        b = tuple(int(c) for c in B[:, k])
        assert tuple(int(c) for c in prod[:, k]) == ctx.mul(a, b)
        assert int(chis[k]) == ext_chi(a, ctx)
    assert list(ctx.encode(A)) == codes


def test_base_field_elements_are_squares_in_quadratic_extension():
    ctx = extension_field(47, 2)
    for c in range(1, 47):
        assert ext_chi(ctx.embed(c), ctx) == 1


def test_extension_character_balance():
    ctx = extension_field(7, 3)
    chis = ctx.vchi(ctx.elements())
    assert (chis == 1).sum() == (ctx.size - 1) // 2
    assert (chis == 0).sum() == 1


def test_ext_chi_rejects_unreduced():
    ctx = extension_field(47, 2)
    with pytest.raises(ValueError):
        ext_chi((47, 0), ctx)
    with pytest.raises(ValueError):
        ext_chi((1, 2, 3), ctx)


def test_sqrt_table():
    ctx = extension_field(5, 2)
    roots = ctx.sqrt_table()
    for code, root in enumerate(roots):
        x = ctx.decode([code])
        if root < 0:
            assert ctx.vchi(x)[0] == -1
        else:
            y = ctx.decode([root])
            assert ctx.encode(ctx.vmul(y, y))[0] == code


def test_poly_basics():
    p = Poly([38, 1, 0, 1], 47)
    assert p.degree == 3
    assert Poly([0, 0], 47).degree == -math.inf
    assert str(p) == 'x^3+x+38'
    assert p(2) == (8 + 2 + 38) % 47
    assert p + (-p) == 0
    assert Poly([1, 1], 47) ** 2 == Poly([1, 2, 1], 47)


def test_poly_division():
    rng = random.Random(7)
    q = 61
    for _ in range(20):
        a = Poly([rng.randrange(q) for _ in range(7)], q)
        b = Poly([rng.randrange(q) for _ in range(3)] + [1], q)
        quot, rem = divmod(a, b)
        assert quot * b + rem == a
        assert rem.degree < b.degree
    with pytest.raises(ZeroDivisionError):
        divmod(Poly([1], q), Poly([], q))


def test_poly_gcd_is_monic():
    q = 47
    common = Poly([3, 1], q)
    a = common * Poly([5, 0, 2], q)
    b = common * Poly([1, 9], q) * 4
    assert a.gcd(b) == common
    assert Poly([], q).gcd(Poly([], q)).is_zero()


def test_multiplicity_and_deflate():
    q = 7
    p = Poly([5, 1], q) * Poly([5, 1], q) * Poly([1, 1], q)
    assert p.multiplicity(2) == 2
    assert p.multiplicity(6) == 1
    assert p.multiplicity(0) == 0
    assert p.deflate(2, 2) == Poly([1, 1], q)
    with pytest.raises(ValueError):
        p.deflate(3)
    assert Poly([], q).multiplicity(1) == math.inf


def test_roots():
    p = Poly([6, 0, 1], 7) * Poly([3, 1], 7)
    assert p.roots() == [1, 4, 6]


def test_compose():
    q = 47
    f = Poly([38, 1, 0, 1], q)
    g = Poly([17, 0, 1], q)
    h = f.compose(g)
    assert h.degree == 6
    for x in range(q):
        assert h(x) == f(g(x))


def test_sqff_characteristic_p():
    p = Poly([1, 0, 0, 0, 0, 0, 1], 3)
    radical, parts = poly_gcd_sqfree(p)
    assert radical == Poly([1, 0, 1], 3)
    assert parts == [(Poly([1, 0, 1], 3), 3)]


def test_sqff_reconstructs():
    q = 47
    a = Poly([1, 1], q)
    b = Poly([5, 0, 1], q)
    c = Poly([2, 1], q)
    p = a * b * b * c * c * c * 5
    radical, parts = poly_gcd_sqfree(p)
    assert radical == (a * b * c)
    assert [k for _, k in parts] == [1, 2, 3]
    product = Poly([1], q)
    for s, k in parts:
        product = product * s ** k
    assert product == p.monic()
    assert not p.is_squarefree()
    assert (a * b * c).is_squarefree()


def test_eval_array():
    p = Poly([38, 1, 0, 1], 47)
    xs = np.arange(47)
    assert list(p.eval_array(xs)) == [p(int(x)) for x in xs]


def test_format_poly():
    assert format_poly([38, 1, 0, 1]) == 'x^3+x+38'
    assert format_poly([39, 46, 10]) == '10x^2+46x+39'
    assert format_poly([]) == '0'
    assert format_poly([0, 1], 's') == 's'
