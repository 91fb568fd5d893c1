#!/usr/bin/env python3
"""
Elliptic curves y^2 = x^3 + ax + b over F_q: point counts, Frobenius
traces, twists and the search for optimal curves.
"""

import functools
import logging
from typing import NamedTuple

import numpy as np

from . import util
from . import kernels
from . import workers
from .disc19 import Disc19Field, nonsquare, serre_bound_count
from .errors import NotFoundError, SingularCurveError, UnsupportedError
from .fparith import Poly, prime_field

__all__ = ['EllipticCurve', 'TraceReport', 'count_points_elliptic',
           'trace_and_kind', 'quadratic_twist', 'nonsquare_twist',
           'is_isomorphic_scaling', 'find_optimal_elliptic',
           'optimal_curves', 'verify_elliptic']

logger = logging.getLogger(__name__)

# Number of candidate (a, b) pairs handed to a worker at once.
CHUNK_CANDIDATES = 1 << 18


class EllipticCurve:
    """
    Short Weierstrass curve y^2 = x^3 + ax + b over F_q.

    Parameters
    ----------
    q : int or Disc19Field
        The base field.
    a, b : int
        Coefficients, reduced modulo q.

    Raises
    ------
    SingularCurveError
        If 4a^3 + 27b^2 = 0 in F_q.
    """
    def __init__(self, q, a, b):
        self._field = q if isinstance(q, Disc19Field) else None
        self.q = int(q.q if isinstance(q, Disc19Field) else q)
        self.a = int(a) % self.q
        self.b = int(b) % self.q
        if self.discriminant() == 0:
            raise SingularCurveError('y^2 = %s is singular over F_%d.'
                                     % (self.f, self.q))
        self._count = None

    def discriminant(self):
        """Returns 4a^3 + 27b^2 in F_q."""
        return (4 * pow(self.a, 3, self.q) + 27 * self.b * self.b) % self.q

    @property
    def field(self):
        if self._field is None:
            self._field = Disc19Field.from_q(self.q)
        return self._field

    @property
    def ctx(self):
        return prime_field(self.q)

    @property
    def f(self):
        return Poly([self.b, self.a, 0, 1], self.q)

    @property
    def count(self):
        if self._count is None:
            self._count = count_points_elliptic(self)
        return self._count

    def __eq__(self, other):
        if not isinstance(other, EllipticCurve):
            return NotImplemented
        return (self.q, self.a, self.b) == (other.q, other.a, other.b)

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    def __repr__(self):
        return 'EllipticCurve(q=%d, a=%d, b=%d)' % (self.q, self.a, self.b)

    def __str__(self):
        return 'y^2=%s' % self.f

    def to_dict(self):
        return {'a': self.a, 'b': self.b}


class TraceReport(NamedTuple):
    count: int
    trace: int
    kind: str


def count_points_elliptic(E):
    """
    Returns #E(F_q) = q + 1 + sum_x chi(x^3 + ax + b).

    The point at infinity and the 1 + chi convention are included, so a root
    of f contributes its single point (x, 0).
    """
    ctx = E.ctx
    if ctx.chi is None:
        raise UnsupportedError('No character table for q = %d.' % E.q)
    values = E.f.eval_array(np.arange(E.q, dtype=np.int64))
    return E.q + 1 + int(ctx.chi[values].sum(dtype=np.int64))


def trace_and_kind(E):
    """
    Returns the count, the trace t = q + 1 - #E and the optimality kind.

    Parameters
    ----------
    E : EllipticCurve
        A curve over a field of discriminant -19.

    Returns
    -------
    TraceReport
        kind is maximal iff t = -m, minimal iff t = m, neither otherwise.
    """
    m = E.field.m
    count = E.count
    t = E.q + 1 - count
    if t == -m:
        kind = util.MAXIMAL
    elif t == m:
        kind = util.MINIMAL
    else:
        kind = util.NEITHER
    return TraceReport(count, t, kind)


def quadratic_twist(E, c):
    """
    Returns (a c^2, b c^3). Isomorphic to E for square c, trace negated for
    nonsquare c.
    """
    c = int(c) % E.q
    if c == 0:
        raise ValueError('Twist parameter must be nonzero.')
    q = E.q
    return EllipticCurve(E._field or q, E.a * c * c, E.b * pow(c, 3, q))


def nonsquare_twist(E):
    """Returns the twist by the smallest nonsquare of F_q."""
    return quadratic_twist(E, nonsquare(E.q))


def is_isomorphic_scaling(E1, E2):
    """
    Returns the smallest c with (a2, b2) = (a1 c^4, b1 c^6), or None.
    """
    if E1.q != E2.q:
        return None
    q = E1.q
    c = np.arange(1, q, dtype=np.int64)
    c2 = c * c % q
    c4 = c2 * c2 % q
    c6 = c4 * c2 % q
    hits = np.flatnonzero((E1.a * c4 % q == E2.a) & (E1.b * c6 % q == E2.b))
    return int(c[hits[0]]) if hits.size else None


def _elliptic_chunk(task):
    # Scans a values [start, stop) against all b, returns lex-first hit.
    q, start, stop, target = task
    A = np.arange(start, stop, dtype=np.int64)[:, None]
    xs = np.arange(q, dtype=np.int64)[None, :]
    f0 = ((xs * xs % q) * xs + A * xs) % q
    counts = q + 1 + kernels.shifted_character_sums(f0, q)
    bs = np.arange(q, dtype=np.int64)[None, :]
    disc = (4 * (A * A % q) * A + 27 * bs * bs) % q
    hits = np.flatnonzero((counts == target) & (disc != 0))
    if hits.size == 0:
        return None
    row, b = divmod(int(hits[0]), q)
    return start + row, b


def _chunks(q, target):
    rows = util.clip(CHUNK_CANDIDATES // q, 1, q)
    for start in range(0, q, rows):
        yield q, start, min(start + rows, q), target


def find_optimal_elliptic(field, kind, threads=None):
    """
    Returns the lexicographically first (a, b) curve of the requested kind.

    Parameters
    ----------
    field : Disc19Field
        The base field.
    kind : str
        'maximal' or 'minimal' (or 'max' / 'min').
    threads : int, optional
        Worker count; the result does not depend on it.

    Raises
    ------
    NotFoundError
        If the scan completes without a hit.
    """
    kind = util.parse_kind(kind)
    target = serre_bound_count(field, 1, kind)
    hit = workers.first_hit(_elliptic_chunk, _chunks(field.q, target),
                            threads)
    if hit is None:
        raise NotFoundError('No %s elliptic curve over F_%d.'
                            % (kind, field.q))
    logger.info('Lex-first %s elliptic curve over F_%d: (a, b) = %r.',
                kind, field.q, hit)
    return EllipticCurve(field, *hit)


@functools.lru_cache(maxsize=64)
def _cached_optimal(field, kind):
    return find_optimal_elliptic(field, kind)


def optimal_curves(field, threads=None):
    """
    Returns {kind: curve}, one representative of each optimal class.
    """
    if threads is None:
        return {kind: _cached_optimal(field, kind) for kind in util.KINDS}
    return {kind: find_optimal_elliptic(field, kind, threads)
            for kind in util.KINDS}


def verify_elliptic(E, kind=None):
    """
    Returns a verification report for E, optionally against a claimed kind.
    """
    field = E.field
    report = trace_and_kind(E)
    out = {'q': field.q, 'm': field.m, 'a': E.a, 'b': E.b,
           'count': report.count, 'trace': report.trace,
           'kind': report.kind}
    if kind is not None:
        kind = util.parse_kind(kind)
        out['expect'] = kind
        out['target'] = serre_bound_count(field, 1, kind)
        out['pass'] = report.kind == kind
    else:
        out['pass'] = report.kind != util.NEITHER
    return out
