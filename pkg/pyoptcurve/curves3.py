#!/usr/bin/env python3
"""
Genus 3 curves as double covers z^2 = u(x) + v(x) y of an elliptic curve
E: y^2 = f(x), with deg u <= 3 and deg v <= 1.

Write w = u + v y and R = u^2 - v^2 f = w * conj(w). The cover ramifies
exactly at the places of E where w has odd valuation, and the genus is
1 + B/2 for B ramified places.
"""

import logging
import math
from typing import NamedTuple

import numpy as np

from . import util
from . import kernels
from .curves1 import EllipticCurve, trace_and_kind
from .disc19 import nonsquare, serre_bound_count
from .errors import DegenerateCoverError
from .fparith import Poly, format_poly, poly_gcd_sqfree, prime_field

__all__ = ['Genus3Cover', 'InfinityFiber', 'BranchReport', 'EvenZero',
           'HermitianGram', 'PROJECTION_GRAM', 'infinity_fiber', 'branch_count',
           'count_points_cover', 'even_order_zeros', 'verify_optimal_genus3',
           'normalize', 'hermitian_projection_degree',
           'hermitian_determinant']

logger = logging.getLogger(__name__)


def _as_poly(p, q, max_degree, name):
    if not isinstance(p, Poly):
        p = Poly(p, q)
    if p.degree > max_degree:
        raise ValueError('deg %s = %d exceeds %d.' % (name, p.degree,
                                                       max_degree))
    return p


def _padded(p, n):
    return list(p.coeffs) + [0] * (n - len(p.coeffs))


class Genus3Cover:
    """
    The double cover z^2 = u(x) + v(x) y of E.

    Parameters
    ----------
    E : EllipticCurve
        The base curve.
    u : Poly or sequence of int
        Degree <= 3, coefficients alpha_0..alpha_3.
    v : Poly or sequence of int
        Degree <= 1, coefficients beta_0, beta_1.

    Raises
    ------
    DegenerateCoverError
        If u and v are both zero.
    """
    def __init__(self, E, u, v):
        self.E = E
        self.u = _as_poly(u, E.q, 3, 'u')
        self.v = _as_poly(v, E.q, 1, 'v')
        if self.u.is_zero() and self.v.is_zero():
            raise DegenerateCoverError('u and v are both zero.')
        self._branch = None
        self._count = None

    @classmethod
    def from_table(cls, E, u, v, ysq_coeff=1):
        """
        Builds a cover from a row printed over d^2 y^2 = f(x).

        Substituting Y = d y puts E in the form Y^2 = f(x) and turns v y into
        (v / d) Y.

        Parameters
        ----------
        E : EllipticCurve
            The curve Y^2 = f(x).
        u, v : sequence of int
            The printed polynomials, lowest degree first.
        ysq_coeff : int
            The printed coefficient d^2 of y^2, a perfect square.
        """
        d = math.isqrt(ysq_coeff)
        if ysq_coeff < 1 or d * d != ysq_coeff:
            raise ValueError('y^2 coefficient %r is not a perfect square.'
                             % (ysq_coeff,))
        dinv = util.inverse_mod(d, E.q)
        return cls(E, u, [c * dinv for c in v])

    @property
    def q(self):
        return self.E.q

    @property
    def form(self):
        """
        1, 2 or 3 when (deg u, deg v) matches one of the normal forms,
        else None.
        """
        du, dv = self.u.degree, self.v.degree
        if du == 3:
            return 3
        if dv == 0:
            return 1
        if dv == 1:
            return 2
        return None

    @property
    def R(self):
        """The norm u^2 - v^2 f of w."""
        return self.u * self.u - self.v * self.v * self.E.f

    @property
    def branch(self):
        if self._branch is None:
            self._branch = branch_count(self)
        return self._branch

    @property
    def count(self):
        if self._count is None:
            self._count = count_points_cover(self)
        return self._count

    def w_values(self, X, Y):
        """Returns u(X) + v(X) Y mod q for coordinate arrays."""
        q = self.q
        return (self.u.eval_array(X) + self.v.eval_array(X) * Y) % q

    def scaled(self, lam2):
        """Returns the cover with w replaced by lam2 * w."""
        return Genus3Cover(self.E, self.u * lam2, self.v * lam2)

    def key(self):
        u = _padded(self.u, 4)
        v = _padded(self.v, 2)
        return (self.form or 0, v[1], v[0], u[3], u[2], u[1], u[0])

    def __eq__(self, other):
        if not isinstance(other, Genus3Cover):
            return NotImplemented
        return (self.E, self.u, self.v) == (other.E, other.u, other.v)

    def __hash__(self):
        return hash((self.E, self.u, self.v))

    def __repr__(self):
        return 'Genus3Cover(%r, u=%r, v=%r)' % (self.E, list(self.u.coeffs),
                                                list(self.v.coeffs))

    def __str__(self):
        w = format_poly(self.u.coeffs)
        if self.v:
            vy = format_poly(self.v.coeffs)
            vy = 'y' if vy == '1' else ('(%s)y' % vy if self.v.degree > 0
                                        else '%sy' % vy)
            w = vy if self.u.is_zero() else '%s+%s' % (w, vy)
        return 'z^2=%s' % w

    def to_dict(self):
        return {'E': self.E.to_dict(), 'u': _padded(self.u, 4),
                'v': _padded(self.v, 2)}


class InfinityFiber(NamedTuple):
    pole_order: int
    count: int


class BranchReport(NamedTuple):
    R: Poly
    affine: int
    infinity_ramified: bool
    B: int
    genus: int

    def to_dict(self):
        return {'R': list(self.R.coeffs), 'affine': self.affine,
                'infinity_ramified': self.infinity_ramified,
                'B': self.B, 'genus': self.genus}


class EvenZero(NamedTuple):
    """A rational point where w vanishes to even order 2k."""
    x: int
    y: int
    order: int
    unit_chi: int


def _pole_order(cover):
    # x has a pole of order 2 at infinity and y one of order 3.
    n = max(2 * cover.u.degree, 2 * cover.v.degree + 3)
    if n == -math.inf:
        raise DegenerateCoverError('u and v are both zero.')
    return int(n)


def infinity_fiber(cover):
    """
    Returns the pole order n of w at infinity and the number of rational
    points of the cover above it.

    One ramified point when n is odd. Otherwise the leading term of u
    decides: two points when it is a nonzero square, none if not.
    """
    n = _pole_order(cover)
    if n % 2 == 1:
        return InfinityFiber(n, 1)
    chi = prime_field(cover.q).chi
    return InfinityFiber(n, 2 if chi[cover.u.lc] == 1 else 0)


def _strip_common(g, f):
    # Removes from g every factor it shares with the squarefree f.
    while g.degree > 0:
        h = g.gcd(f)
        if h.degree <= 0:
            break
        g = g // h
    return g


def branch_count(cover):
    """
    Certifies the genus of the cover by counting ramified places.

    Parameters
    ----------
    cover : Genus3Cover
        The cover.

    Returns
    -------
    BranchReport
        R, the number of ramified affine places, whether infinity ramifies,
        B and the genus 1 + B/2.

    Raises
    ------
    DegenerateCoverError
        If u and v share a root away from the 2-torsion of E, or no place
        ramifies.
    """
    q = cover.q
    f = cover.E.f
    u, v = cover.u, cover.v
    R = cover.R
    if v:
        # gcd(0, v) is v itself, so u = 0 shares every root of v
        shared = _strip_common(u.gcd(v), f)
        if shared.degree > 0:
            raise DegenerateCoverError(
                'u and v share the root(s) of %s off the 2-torsion.'
                % shared)
        # ord_P(w) = mult_R(x0) at every affine place where w vanishes
        affine = sum(s.degree for s, k in poly_gcd_sqfree(R)[1] if k % 2)
    else:
        # both places over x0 share the order of u; at 2-torsion it doubles
        affine = 2 * sum(_strip_common(s, f).degree
                         for s, k in poly_gcd_sqfree(u)[1] if k % 2)
    infinity_ramified = _pole_order(cover) % 2 == 1
    B = affine + int(infinity_ramified)
    if B % 2:
        raise ArithmeticError('Odd branch number %d for %r.' % (B, cover))
    if B == 0:
        raise DegenerateCoverError('%r is unramified or split.' % cover)
    return BranchReport(R, affine, infinity_ramified, B, 1 + B // 2)


def even_order_zeros(cover, points=None):
    """
    Lists the rational points where w vanishes to positive even order.

    Each entry carries chi of the leading unit of w in a rational local
    parameter, which decides whether the two points above are rational.

    Raises
    ------
    DegenerateCoverError
        As branch_count.
    """
    cover.branch
    q = cover.q
    E = cover.E
    chi = prime_field(q).chi
    f, u, v = E.f, cover.u, cover.v
    if points is None:
        points = kernels.affine_points(q, E.a, E.b)
    X, Y = points
    zeros = np.flatnonzero(cover.w_values(X, Y) == 0)
    out = []
    for i in zeros:
        x0, y0 = int(X[i]), int(Y[i])
        if f(x0) == 0:
            mu = u.multiplicity(x0)
            mv = v.multiplicity(x0)
            order = min(2 * mu, 2 * mv + 1)
            if order % 2:
                continue
            # x - x0 = y^2 / g(x) with g = f / (x - x0)
            g0 = f.deflate(x0, 1)(x0)
            unit = int(chi[u.deflate(x0, mu)(x0)]) * int(chi[g0]) ** mu
        elif v:
            order = cover.R.multiplicity(x0)
            if order % 2:
                continue
            conj = (u(x0) - v(x0) * y0) % q
            unit = (int(chi[cover.R.deflate(x0, order)(x0)]) *
                    int(chi[conj]))
        else:
            order = u.multiplicity(x0)
            if order % 2:
                continue
            unit = int(chi[u.deflate(x0, order)(x0)])
        out.append(EvenZero(x0, y0, order, unit))
    return out


def count_points_cover(cover):
    """
    Counts the rational points of the smooth model of the cover.

    Sums 1 + chi(w(P)) over the affine rational points P of E, adds the
    infinity fiber, and replaces the term 1 at each even order zero of w by
    2 or 0 according to the leading unit.

    Raises
    ------
    DegenerateCoverError
        As branch_count.
    """
    # degenerate covers are rejected before counting
    cover.branch
    q = cover.q
    E = cover.E
    chi = prime_field(q).chi
    points = kernels.affine_points(q, E.a, E.b)
    values = cover.w_values(*points)
    count = values.size + int(chi[values].sum(dtype=np.int64))
    for zero in even_order_zeros(cover, points):
        count += 1 if zero.unit_chi == 1 else -1
    return count + infinity_fiber(cover).count


def normalize(cover):
    """
    Scales w by a square so the leading coefficient of v, or of u when
    v = 0, is 1 or the smallest nonsquare.
    """
    q = cover.q
    lead = cover.v.lc if cover.v else cover.u.lc
    chi = prime_field(q).chi
    target = 1 if chi[lead] == 1 else nonsquare(q)
    return cover.scaled(target * util.inverse_mod(lead, q) % q)


def verify_optimal_genus3(cover, kind):
    """
    Checks a cover against the genus 3 bound.

    Parameters
    ----------
    cover : Genus3Cover
        The cover to check.
    kind : str
        The claimed kind.

    Returns
    -------
    dict
        Keys q, m, kind, form, E, u, v, E_kind, count, target, branch_B,
        genus, failure (None, 'E-kind', 'genus' or 'count', checked in that
        order) and pass.
    """
    kind = util.parse_kind(kind)
    field = cover.E.field
    report = {'q': field.q, 'm': field.m, 'kind': kind, 'form': cover.form}
    report.update(cover.to_dict())
    report['E_kind'] = trace_and_kind(cover.E).kind
    report['target'] = serre_bound_count(field, 3, kind)
    try:
        branch = cover.branch
        report['branch_B'] = branch.B
        report['genus'] = branch.genus
        report['count'] = cover.count
        report['infinity'] = infinity_fiber(cover).count
    except DegenerateCoverError as e:
        report.update({'branch_B': None, 'genus': None, 'count': None,
                       'infinity': None, 'error': str(e),
                       'failure': 'genus', 'pass': False})
        return report
    if report['E_kind'] != kind:
        failure = 'E-kind'
    elif branch.genus != 3:
        failure = 'genus'
    elif report['count'] != report['target']:
        failure = 'count'
    else:
        failure = None
    report['failure'] = failure
    report['pass'] = failure is None
    return report


class HermitianGram:
    """
    A 3x3 Hermitian matrix over Z[(1 + sqrt(-19))/2].

    Entries are pairs (a, b) standing for (a + b sqrt(-19))/2 with
    a = b mod 2.

    Raises
    ------
    ValueError
        If an entry is not integral or the matrix is not Hermitian.
    """
    D = 19

    def __init__(self, entries):
        rows = tuple(tuple((int(a), int(b)) for a, b in row)
                     for row in entries)
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise ValueError('Gram matrix must be square.')
        for i in range(n):
            for j in range(n):
                a, b = rows[i][j]
                if (a - b) % 2:
                    raise ValueError('Entry (%d, %d) is not integral.'
                                     % (i + 1, j + 1))
                if rows[j][i] != (a, -b):
                    raise ValueError('Gram matrix is not Hermitian at '
                                     '(%d, %d).' % (i + 1, j + 1))
        self.entries = rows

    @classmethod
    def identity(cls, n=3):
        return cls([[(2, 0) if i == j else (0, 0) for j in range(n)]
                    for i in range(n)])

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def minor(self, k):
        keep = [i for i in range(len(self)) if i != k]
        return HermitianGram([[self.entries[i][j] for j in keep]
                              for i in keep])

    def _mul(self, x, y):
        (a, b), (c, d) = x, y
        return ((a * c - self.D * b * d) // 2, (a * d + b * c) // 2)

    def _det(self, rows):
        if len(rows) == 1:
            return rows[0][0]
        total = (0, 0)
        for j, entry in enumerate(rows[0]):
            sub = [row[:j] + row[j + 1:] for row in rows[1:]]
            term = self._mul(entry, self._det(sub))
            sign = -1 if j % 2 else 1
            total = (total[0] + sign * term[0], total[1] + sign * term[1])
        return total

    def determinant(self):
        a, b = self._det(self.entries)
        if b != 0 or a % 2:
            raise ArithmeticError('Determinant (%d + %d sqrt(-19))/2 is not '
                                  'a rational integer.' % (a, b))
        return a // 2


# The unimodular Gram matrix whose 2x2 minors give the projection degrees.
PROJECTION_GRAM = HermitianGram([
    [(4, 0), (2, 0), (-2, 0)],
    [(2, 0), (6, 0), (-3, 1)],
    [(-2, 0), (-3, -1), (6, 0)],
])


def hermitian_projection_degree(G, k):
    """
    Returns the determinant of G with row and column k (1-based) removed.
    """
    if not isinstance(G, HermitianGram):
        G = HermitianGram(G)
    if k not in range(1, len(G) + 1):
        raise ValueError('k must be in 1..%d, got %r.' % (len(G), k))
    return G.minor(k - 1).determinant()


def hermitian_determinant(G):
    """Returns det G, which is 1 for a unimodular Gram matrix."""
    if not isinstance(G, HermitianGram):
        G = HermitianGram(G)
    return G.determinant()
