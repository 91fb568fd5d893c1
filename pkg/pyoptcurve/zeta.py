#!/usr/bin/env python3
"""
Point counts over F_{q^r} and the L-polynomials they determine.
"""

import logging
from typing import NamedTuple

import numpy as np

from . import util
from .curves1 import EllipticCurve
from .curves2 import Genus2Curve
from .curves3 import Genus3Cover, _pole_order
from .disc19 import weil_ok
from .errors import InconsistentCountsError, UnsupportedError
from .fparith import extension_field, poly_eval_vec, poly_gcd_sqfree

__all__ = ['ExtensionCounts', 'LPolynomial', 'count_over_extension',
           'extension_counts', 'lpoly_from_counts', 'is_optimal_lpoly',
           'point_counts_from_lpoly', 'optimal_lpoly', 'EXTENSION_LIMIT']

logger = logging.getLogger(__name__)

# Larger extension fields need allow_large.
EXTENSION_LIMIT = 1 << 24

CHUNK = 1 << 20


def genus_of(curve):
    if isinstance(curve, EllipticCurve):
        return 1
    if isinstance(curve, Genus2Curve):
        return 2
    if isinstance(curve, Genus3Cover):
        return 3
    raise TypeError('Cannot count points on %r.' % (curve,))


def _base_count(curve):
    return curve.count


def _ext_chi_of_base(c, ctx):
    return int(ctx.vchi(ctx.constant(c, 1))[0])


def _chi_sum(p, ctx):
    total = 0
    for start in range(0, ctx.size, CHUNK):
        X = ctx.elements(start, start + CHUNK)
        total += int(ctx.vchi(poly_eval_vec(p, X, ctx)).sum(dtype=np.int64))
    return total


def _count_cover(cover, ctx):
    # Affine points of E over the extension from the square root table.
    E = cover.E
    roots = ctx.sqrt_table()
    X = ctx.elements()
    fx = ctx.encode(poly_eval_vec(E.f, X, ctx))
    r = roots[fx]
    square = r >= 0
    split = square & (fx != 0)
    PX = np.concatenate([X[:, square], X[:, split]], axis=1)
    Y = ctx.decode(r[square])
    Ybar = ctx.decode(r[split])
    Ybar = (-Ybar) % ctx.q
    PY = np.concatenate([Y, Ybar], axis=1)
    W = ctx.vadd(poly_eval_vec(cover.u, PX, ctx),
                 ctx.vmul(poly_eval_vec(cover.v, PX, ctx), PY))
    count = PX.shape[1] + int(ctx.vchi(W).sum(dtype=np.int64))
    vanish = ~W.any(axis=0)
    if vanish.any():
        _check_odd_zeros(cover, PX[:, vanish], ctx)
    n = _pole_order(cover)
    if n % 2:
        return count + 1
    return count + (2 if _ext_chi_of_base(cover.u.lc, ctx) == 1 else 0)


def _check_odd_zeros(cover, Z, ctx):
    # Order of w at a zero over x0: the multiplicity of x0 in R when v != 0,
    # that of u (doubled at 2-torsion) when v = 0.
    f = cover.E.f
    torsion = ~poly_eval_vec(f, Z, ctx).any(axis=0)
    source = cover.R if cover.v else cover.u
    for part, k in poly_gcd_sqfree(source)[1]:
        on_part = ~poly_eval_vec(part, Z, ctx).any(axis=0)
        if cover.v:
            even = on_part & (k % 2 == 0)
        else:
            even = on_part & ((k % 2 == 0) | torsion)
        if even.any():
            raise UnsupportedError(
                'w has even order zeros over F_%d^%d.' % (ctx.q, ctx.degree))


def count_over_extension(curve, r, allow_large=False):
    """
    Counts points over F_{q^r} with the same formulas as over F_q.

    Parameters
    ----------
    curve : EllipticCurve, Genus2Curve or Genus3Cover
        The curve.
    r : int
        Extension degree, 1, 2 or 3.
    allow_large : bool
        Permit fields with more than EXTENSION_LIMIT elements.

    Returns
    -------
    int
    """
    if r not in (1, 2, 3):
        raise UnsupportedError('Extension degree %r not in 1..3.' % (r,))
    if r == 1:
        return _base_count(curve)
    q = curve.q
    if q ** r > EXTENSION_LIMIT and not allow_large:
        raise UnsupportedError('F_%d^%d has more than %d elements, pass '
                               'allow_large to count over it.'
                               % (q, r, EXTENSION_LIMIT))
    ctx = extension_field(q, r)
    logger.info('Counting %r over F_%d^%d.', curve, q, r)
    if isinstance(curve, EllipticCurve):
        return ctx.size + 1 + _chi_sum(curve.f, ctx)
    if isinstance(curve, Genus2Curve):
        at_infinity = 2 if _ext_chi_of_base(curve.sextic.lc, ctx) == 1 else 0
        return ctx.size + _chi_sum(curve.sextic, ctx) + at_infinity
    if isinstance(curve, Genus3Cover):
        # degenerate covers are rejected before counting
        curve.branch
        return _count_cover(curve, ctx)
    raise TypeError('Cannot count points on %r.' % (curve,))


class ExtensionCounts(NamedTuple):
    q: int
    g: int
    N: tuple

    def check(self):
        """
        Raises InconsistentCountsError unless every N_r obeys the Weil bound.
        """
        for r, n in enumerate(self.N, 1):
            if n < 0 or not weil_ok(n, self.q ** r, self.g):
                raise InconsistentCountsError(
                    'N_%d = %d violates the Weil bound for genus %d over '
                    'F_%d^%d.' % (r, n, self.g, self.q, r))
        return self


def extension_counts(curve, g=None, r_max=None, allow_large=False):
    """
    Returns ExtensionCounts with N_1..N_r_max, r_max defaulting to g.
    """
    g = genus_of(curve) if g is None else g
    r_max = g if r_max is None else r_max
    N = tuple(count_over_extension(curve, r, allow_large)
              for r in range(1, r_max + 1))
    return ExtensionCounts(curve.q, g, N)


class LPolynomial:
    """
    L(t) = 1 + a_1 t + ... + q^g t^2g with integer coefficients.

    Parameters
    ----------
    q : int
        The field size.
    coeffs : sequence of int
        a_0 = 1, ..., a_2g.
    """
    def __init__(self, q, coeffs):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) % 2 == 0 or coeffs[0] != 1:
            raise ValueError('L-polynomial must have odd length and a_0 = 1.')
        self.q = q
        self.coeffs = coeffs

    @property
    def g(self):
        return (len(self.coeffs) - 1) // 2

    def satisfies_functional_equation(self):
        g = self.g
        return all(self.coeffs[2 * g - i] == self.q ** (g - i) *
                   self.coeffs[i] for i in range(g + 1))

    def power_sums(self, r_max):
        """
        Returns p_1..p_r_max, the power sums of the inverse roots.
        """
        a = list(self.coeffs) + [0] * max(0, r_max + 1 - len(self.coeffs))
        p = [0]
        for k in range(1, r_max + 1):
            p.append(-k * a[k] - sum(p[i] * a[k - i] for i in range(1, k)))
        return p[1:]

    def __eq__(self, other):
        if not isinstance(other, LPolynomial):
            return NotImplemented
        return self.q == other.q and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        return 'LPolynomial(%d, %r)' % (self.q, list(self.coeffs))

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = '' if k == 0 else ('t' if k == 1 else 't^%d' % k)
            body = str(abs(c)) if (abs(c) != 1 or k == 0) else ''
            sign = '-' if c < 0 else '+'
            terms.append((sign, body + mono))
        out = ''.join(s + t for s, t in terms)
        return out[1:] if out.startswith('+') else out


def _polymul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lpoly_from_counts(counts):
    """
    Recovers L(t) from N_1..N_g by Newton's identities.

    With p_r = q^r + 1 - N_r, k a_k = -sum_{i=1..k} p_i a_{k-i}; the upper
    half follows from a_{2g-i} = q^{g-i} a_i.

    Raises
    ------
    InconsistentCountsError
        If a division is not exact or a count breaks the Weil bound.
    """
    q, g, N = counts
    if g not in (1, 2, 3):
        raise ValueError('Genus must be 1, 2 or 3, got %r.' % (g,))
    if len(N) < g:
        raise ValueError('Need %d counts, got %d.' % (g, len(N)))
    counts.check()
    p = [q ** r + 1 - N[r - 1] for r in range(1, g + 1)]
    a = [1]
    for k in range(1, g + 1):
        num = -sum(p[i - 1] * a[k - i] for i in range(1, k + 1))
        if num % k:
            raise InconsistentCountsError(
                'Newton division %d / %d is not exact for counts %r.'
                % (num, k, list(N)))
        a.append(num // k)
    upper = [q ** (g - i) * a[i] for i in reversed(range(g))]
    L = LPolynomial(q, a + upper)
    # counts beyond g must be consistent with the reconstructed L
    predicted = point_counts_from_lpoly(L, len(N))
    if list(N) != predicted:
        raise InconsistentCountsError('Counts %r disagree with %s (%r).'
                                      % (list(N), L, predicted))
    return L


def point_counts_from_lpoly(L, r_max):
    """Returns the predicted N_1..N_r_max."""
    q = L.q
    return [q ** r + 1 - p for r, p in enumerate(L.power_sums(r_max), 1)]


def optimal_lpoly(field, g, kind):
    """Returns (1 + m t + q t^2)^g for maximal, (1 - m t + q t^2)^g else."""
    factor = [1, util.kind_sign(kind) * field.m, field.q]
    coeffs = [1]
    for _ in range(g):
        coeffs = _polymul(coeffs, factor)
    return LPolynomial(field.q, coeffs)


def is_optimal_lpoly(L, field, g, kind):
    """True iff L is the optimal L-polynomial of the genus and kind."""
    return L.g == g and L == optimal_lpoly(field, g, kind)
