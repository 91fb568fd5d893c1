#!/usr/bin/env python3
"""
Exhaustive search for optimal genus 3 covers z^2 = u + v y in the three
normal forms.

w is only defined up to squares, so the leading coefficient of v (of u when
v = 0) is fixed to 1 or the smallest nonsquare nu. The remaining parameter
space is cut into slices (form, beta1, beta0, alpha3, alpha2), each holding
the q^2 candidates (alpha1, alpha0). Slices are numbered in the canonical
order of the key (form, beta1, beta0, alpha3, alpha2, alpha1, alpha0), so a
slice index is a resumable cursor.

Inside a slice all uncorrected counts come from one histogram product: with
vals[alpha1, P] = w(P) - alpha0 over the affine points P of E,

    sum_P chi(w(P)) = sum_c H[alpha1, c] chi(c + alpha0) = (H @ C)[alpha1, alpha0]

Only the zeros of w can move the exact count away from this value, by one
each, so candidates further than that from the target are dropped before
the exact certificate is computed.
"""

import logging
import math
from typing import NamedTuple

import numpy as np

from . import util
from . import kernels
from . import workers
from .curves1 import EllipticCurve, find_optimal_elliptic
from .curves3 import Genus3Cover, verify_optimal_genus3
from .disc19 import nonsquare, serre_bound_count
from .errors import DegenerateCoverError, UnsupportedError
from .fparith import prime_field

__all__ = ['Slice', 'SliceSpace', 'Genus3SearchResult', 'find_optimal_genus3',
           'exhaust_genus3', 'LARGE_SEARCH_LIMIT', 'SHARD_CANDIDATES']

logger = logging.getLogger(__name__)

# Searches examining more candidates need allow_large.
LARGE_SEARCH_LIMIT = 2 * 10 ** 9

# Candidates per worker task; shard boundaries never depend on the pool.
SHARD_CANDIDATES = 1 << 22

EXHAUSTED = 'exhausted'
BUDGET = 'budget'
HIT_LIMIT = 'hit-limit'

ALL_FORMS = (1, 2, 3)


class Slice(NamedTuple):
    form: int
    beta1: int
    beta0: int
    alpha3: int
    alpha2: int


class SliceSpace:
    """
    The normalized slices of the requested forms in canonical order.

    Parameters
    ----------
    q : int
        The prime.
    forms : iterable of int
        Subset of {1, 2, 3}.
    """
    def __init__(self, q, forms=ALL_FORMS):
        forms = tuple(sorted(set(int(f) for f in forms)))
        if not forms or any(f not in ALL_FORMS for f in forms):
            raise ValueError('Forms must be a nonempty subset of {1, 2, 3}, '
                             'got %r.' % (forms,))
        self.q = q
        self.forms = forms
        nu = nonsquare(q)
        classes = [1, nu]
        every = range(q)
        nonzero = range(1, q)
        # (form, beta1s, beta0s, alpha3s, alpha2s)
        blocks = []
        if 1 in forms:
            blocks.append((1, [0], classes, [0], every))
        if 2 in forms:
            blocks.append((2, classes, every, [0], every))
        if 3 in forms:
            blocks.append((3, [0], [0], classes, every))
            blocks.append((3, [0], classes, nonzero, every))
            blocks.append((3, classes, every, nonzero, every))
        self._blocks = blocks
        self._sizes = [math.prod(len(r) for r in block[1:])
                       for block in blocks]

    def __len__(self):
        return sum(self._sizes)

    @property
    def candidates(self):
        return len(self) * self.q * self.q

    def __getitem__(self, i):
        if not 0 <= i < len(self):
            raise IndexError('Slice index %d out of range.' % i)
        for block, size in zip(self._blocks, self._sizes):
            if i < size:
                break
            i -= size
        form, *ranges = block
        coords = []
        for r in reversed(ranges):
            i, k = divmod(i, len(r))
            coords.append(r[k])
        return Slice(form, *reversed(coords))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


def _infinity_count(s, chi):
    # Pole order of w at infinity is constant on a slice.
    if s.form == 1:
        if s.alpha2:
            return 2 if chi[s.alpha2] == 1 else 0
        return 1
    if s.form == 2:
        return 1
    return 2 if chi[s.alpha3] == 1 else 0


def _scan_slice(s, X, Y, target, q):
    # Returns the (alpha1, alpha0) whose count can still reach the target.
    chi = prime_field(q).chi
    xx = X * X % q
    base = (s.alpha3 * xx % q * X + s.alpha2 * xx +
            s.beta0 * Y + s.beta1 * (X * Y % q)) % q
    rows = np.arange(q, dtype=np.int64)[:, None]
    vals = (base[None, :] + rows * X[None, :]) % q
    H = kernels.row_histograms(vals, q)
    S = kernels.character_sums(H, q)
    zeros = H[:, (-np.arange(q)) % q]
    uncorrected = X.size + S + _infinity_count(s, chi)
    return np.argwhere(np.abs(uncorrected - target) <= zeros)


def _genus_filter(U, V, forms, f, q):
    """
    Keeps candidates whose norm R = u^2 - v^2 f can give B = 4.

    In form 1 that needs R squarefree; in forms 2 and 3 the degree of R
    forces a repeated root.
    """
    R = kernels.batch_polymul(U, U, q)
    vvf = kernels.batch_polymul(kernels.batch_polymul(V, V, q),
                                np.broadcast_to(f, (len(U), 4)), q)
    R[:, :vvf.shape[1]] = (R[:, :vvf.shape[1]] - vvf) % q
    nonzero = R != 0
    degree = R.shape[1] - 1 - np.argmax(nonzero[:, ::-1], axis=1)
    keep = np.zeros(len(U), dtype=bool)
    for d in np.unique(degree):
        rows = np.flatnonzero(degree == d)
        repeated = kernels.has_repeated_root(R[rows, :d + 1], q)
        keep[rows] = np.where(forms[rows] == 1, ~repeated, repeated)
    return keep


def _search_shard(task):
    q, a, b, target, forms, start, stop = task
    E = EllipticCurve(q, a, b)
    X, Y = kernels.affine_points(q, a, b)
    space = SliceSpace(q, forms)
    found = []
    for i in range(start, stop):
        s = space[i]
        for alpha1, alpha0 in _scan_slice(s, X, Y, target, q):
            found.append((i, s.form, int(alpha0), int(alpha1), s.alpha2,
                          s.alpha3, s.beta0, s.beta1))
    if not found:
        return start, stop, []
    cand = np.array(found, dtype=np.int64)
    keep = _genus_filter(cand[:, 2:6], cand[:, 6:8], cand[:, 1],
                         np.array(E.f.coeffs, dtype=np.int64), q)
    hits = []
    for row in cand[keep]:
        i, _, a0, a1, a2, a3, b0, b1 = (int(c) for c in row)
        cover = Genus3Cover(E, [a0, a1, a2, a3], [b0, b1])
        try:
            if cover.branch.genus != 3:
                continue
        except DegenerateCoverError as e:
            logger.debug('Skipping %r: %s', cover, e)
            continue
        if cover.count == target:
            hits.append((i, list(cover.u.coeffs), list(cover.v.coeffs)))
    return start, stop, hits


class Genus3SearchResult:
    """
    Hits of a genus 3 search with the state needed to resume it.

    Iterating yields (cover, report) pairs in canonical order.

    Attributes
    ----------
    examined : int
        Candidates examined by this run.
    total : int
        Candidates in the normalized space of the requested forms.
    cursor : int
        First slice not yet examined.
    status : str
        'exhausted', 'budget' or 'hit-limit'.
    """
    def __init__(self, q, kind, forms, curve, hits, examined, total,
                 cursor, status):
        self.q = q
        self.kind = kind
        self.forms = forms
        self.curve = curve
        self.hits = hits
        self.examined = examined
        self.total = total
        self.cursor = cursor
        self.status = status

    def __iter__(self):
        return iter(self.hits)

    def __len__(self):
        return len(self.hits)

    def __bool__(self):
        return bool(self.hits)

    def __repr__(self):
        return ('Genus3SearchResult(q=%d, kind=%s, forms=%r, hits=%d, '
                'status=%s)' % (self.q, self.kind, self.forms,
                                len(self.hits), self.status))

    def to_dict(self):
        return {'q': self.q, 'kind': self.kind, 'forms': list(self.forms),
                'E': self.curve.to_dict(),
                'hits': [report for _, report in self.hits],
                'examined': self.examined, 'total': self.total,
                'cursor': self.cursor, 'status': self.status}


def find_optimal_genus3(field, kind, forms=(1,), budget=None, cursor=0,
                        max_hits=None, threads=None, allow_large=False,
                        curve=None):
    """
    Searches the normalized forms for optimal genus 3 covers.

    Parameters
    ----------
    field : Disc19Field
        The base field.
    kind : str
        'maximal' or 'minimal'. Covers are searched over an optimal E of
        the same kind.
    forms : iterable of int
        Normal forms to search, subset of {1, 2, 3}.
    budget : int, optional
        Stop after this many candidates, rounded up to whole slices.
    cursor : int
        Slice index to resume from.
    max_hits : int, optional
        Stop after the slice holding the max_hits-th hit.
    threads : int, optional
        Worker count; results do not depend on it.
    allow_large : bool
        Permit runs of more than LARGE_SEARCH_LIMIT candidates.
    curve : EllipticCurve, optional
        Search over this E instead of the lex-first optimal one.

    Returns
    -------
    Genus3SearchResult
    """
    kind = util.parse_kind(kind)
    q = field.q
    E = curve if curve is not None else find_optimal_elliptic(field, kind,
                                                              threads)
    space = SliceSpace(q, forms)
    per_slice = q * q
    if cursor < 0 or cursor > len(space):
        raise ValueError('Cursor %d outside 0..%d.' % (cursor, len(space)))
    if max_hits is not None and max_hits < 1:
        raise ValueError('max_hits must be positive.')
    stop = len(space)
    if budget is not None:
        stop = min(stop, cursor + max(1, -(-int(budget) // per_slice)))
    planned = max(stop - cursor, 0) * per_slice
    if planned > LARGE_SEARCH_LIMIT and not allow_large:
        raise UnsupportedError(
            'Search of %d candidates exceeds %d, pass allow_large to run it.'
            % (planned, LARGE_SEARCH_LIMIT))
    target = serre_bound_count(field, 3, kind)
    logger.info('Genus 3 %s search over %r, forms %r, slices %d..%d of %d.',
                kind, E, space.forms, cursor, stop, len(space))

    step = max(1, SHARD_CANDIDATES // per_slice)
    tasks = ((q, E.a, E.b, target, space.forms, s, min(s + step, stop))
             for s in range(cursor, stop, step))
    found = []
    reached = cursor
    status = EXHAUSTED if stop == len(space) else BUDGET
    results = workers.ordered_map(_search_shard, tasks, threads)
    try:
        for start, shard_stop, hits in results:
            found.extend(hits)
            reached = shard_stop
            logger.debug('Slices %d..%d done, %d hits so far.',
                         start, shard_stop, len(found))
            if max_hits is not None and len(found) >= max_hits:
                last = found[max_hits - 1][0]
                found = [h for h in found if h[0] <= last]
                reached = last + 1
                if reached < len(space):
                    status = HIT_LIMIT
                else:
                    status = EXHAUSTED
                break
    finally:
        results.close()

    hits = []
    for _, u, v in found:
        cover = Genus3Cover(E, u, v)
        hits.append((cover, verify_optimal_genus3(cover, kind)))
    examined = (reached - cursor) * per_slice
    logger.info('Genus 3 %s search over F_%d: %d hits, status %s.',
                kind, q, len(hits), status)
    return Genus3SearchResult(q, kind, space.forms, E, hits, examined,
                              space.candidates, reached, status)


def exhaust_genus3(field, forms=ALL_FORMS, threads=None, allow_large=False):
    """
    Runs both kinds exhaustively over the requested forms.

    Returns
    -------
    dict
        The two search results and whether exactly one kind has hits.
    """
    results = {kind: find_optimal_genus3(field, kind, forms=forms,
                                         threads=threads,
                                         allow_large=allow_large)
               for kind in util.KINDS}
    exclusive = (bool(results[util.MAXIMAL]) !=
                 bool(results[util.MINIMAL]))
    return {'q': field.q, 'forms': list(results[util.MAXIMAL].forms),
            'results': results, 'exclusive': exclusive}
