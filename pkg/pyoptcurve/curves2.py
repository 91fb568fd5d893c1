#!/usr/bin/env python3
"""
Genus 2 optimal curves as fibered products over P^1 of two optimal
elliptic curves y^2 = f(x) and y^2 = f(x)(alpha x + beta).

Substituting x = (s^2 - beta)/alpha into y^2 = f(x) gives the even sextic
model z^2 = h(s) of the product.
"""

import logging

import numpy as np

from . import util
from . import kernels
from . import workers
from .curves1 import EllipticCurve, find_optimal_elliptic, trace_and_kind
from .disc19 import serre_bound_count
from .errors import (DegenerateRecipeError, NotFoundError,
                     SingularCurveError, UnsupportedError)
from .fparith import Poly, format_poly, prime_field

__all__ = ['Genus2Recipe', 'Genus2Curve', 'construct_fibered_sextic',
           'count_points_hyperelliptic', 'count_points_quartic',
           'find_optimal_genus2', 'verify_genus2']

logger = logging.getLogger(__name__)

CHUNK_CANDIDATES = 1 << 18


class Genus2Recipe:
    """
    The data (E1, alpha, beta) of a fibered product.

    Parameters
    ----------
    E1 : EllipticCurve
        The curve y^2 = f(x).
    alpha, beta : int
        The linear factor alpha x + beta of E2: y^2 = f(x)(alpha x + beta).

    Raises
    ------
    DegenerateRecipeError
        If alpha = 0 or alpha x + beta divides f.
    """
    def __init__(self, E1, alpha, beta):
        q = E1.q
        self.E1 = E1
        self.alpha = int(alpha) % q
        self.beta = int(beta) % q
        if self.alpha == 0:
            raise DegenerateRecipeError('alpha must be nonzero.')
        if E1.f(self.root) == 0:
            raise DegenerateRecipeError(
                '%dx+%d divides %s over F_%d.'
                % (self.alpha, self.beta, E1.f, q))

    @property
    def q(self):
        return self.E1.q

    @property
    def root(self):
        """The root -beta/alpha of the linear factor."""
        return -self.beta * util.inverse_mod(self.alpha, self.q) % self.q

    @property
    def linear(self):
        return Poly([self.beta, self.alpha], self.q)

    @property
    def e2_model(self):
        """The quartic f(x)(alpha x + beta)."""
        return self.E1.f * self.linear

    def __eq__(self, other):
        if not isinstance(other, Genus2Recipe):
            return NotImplemented
        return (self.E1, self.alpha, self.beta) == (other.E1, other.alpha,
                                                    other.beta)

    def __repr__(self):
        return 'Genus2Recipe(%r, alpha=%d, beta=%d)' % (self.E1, self.alpha,
                                                        self.beta)

    def to_dict(self):
        return {'E': self.E1.to_dict(), 'alpha': self.alpha,
                'beta': self.beta}


class Genus2Curve:
    """
    Hyperelliptic curve z^2 = h(x) with h of degree 6.

    Parameters
    ----------
    q : int
        The base prime.
    sextic : Poly or sequence of int
        h, lowest degree first.
    kind : str, optional
        The optimality kind this curve is claimed to have.
    recipe : Genus2Recipe, optional
        The recipe that produced it.
    """
    def __init__(self, q, sextic, kind=None, recipe=None):
        self.q = int(q)
        if not isinstance(sextic, Poly):
            sextic = Poly(sextic, self.q)
        if sextic.degree != 6:
            raise ValueError('Expected a degree 6 polynomial, got %s.'
                             % sextic)
        self.sextic = sextic
        self.kind = kind
        self.recipe = recipe
        self._count = None

    @property
    def count(self):
        if self._count is None:
            self._count = count_points_hyperelliptic(self)
        return self._count

    def is_even(self):
        return not any(self.sextic[k] for k in (1, 3, 5))

    def __repr__(self):
        return 'Genus2Curve(q=%d, sextic=%r)' % (self.q,
                                                 list(self.sextic.coeffs))

    def __str__(self):
        return 'z^2=%s' % format_poly(self.sextic.coeffs)


def construct_fibered_sextic(recipe, kind=None):
    """
    Returns the even sextic model z^2 = f((s^2 - beta)/alpha).

    Coefficients stay in F_q, no denominators are cleared, so the leading
    coefficient is alpha^-3.

    Raises
    ------
    DegenerateRecipeError
        If the sextic is not squarefree.
    """
    q = recipe.q
    ainv = util.inverse_mod(recipe.alpha, q)
    x_of_s = Poly([-recipe.beta * ainv, 0, ainv], q)
    sextic = recipe.E1.f.compose(x_of_s)
    if not sextic.is_squarefree():
        raise DegenerateRecipeError('Sextic %s from %r is not squarefree.'
                                    % (sextic, recipe))
    return Genus2Curve(q, sextic, kind=kind, recipe=recipe)


def count_points_hyperelliptic(C, check=True):
    """
    Counts the smooth model of z^2 = h(x), h of degree 6.

    Parameters
    ----------
    C : Genus2Curve
        The curve.
    check : bool
        Reject non-squarefree h. With False the same formula is applied to
        the singular model.

    Returns
    -------
    int
        sum_x (1 + chi(h(x))) plus 2 points at infinity when the leading
        coefficient is a square.
    """
    ctx = prime_field(C.q)
    if ctx.chi is None:
        raise UnsupportedError('No character table for q = %d.' % C.q)
    if check and not C.sextic.is_squarefree():
        raise SingularCurveError('%s is not squarefree over F_%d.'
                                 % (C.sextic, C.q))
    values = C.sextic.eval_array(np.arange(C.q, dtype=np.int64))
    affine = C.q + int(ctx.chi[values].sum(dtype=np.int64))
    at_infinity = 2 if ctx.chi[C.sextic.lc] == 1 else 0
    return affine + at_infinity


def count_points_quartic(recipe):
    """
    Counts E2: y^2 = f(x)(alpha x + beta) on its smooth quartic model.
    """
    q = recipe.q
    chi = prime_field(q).chi
    values = recipe.e2_model.eval_array(np.arange(q, dtype=np.int64))
    at_infinity = 2 if chi[recipe.alpha] == 1 else 0
    return q + int(chi[values].sum(dtype=np.int64)) + at_infinity


def _e2_kind(recipe, field):
    count = count_points_quartic(recipe)
    t = field.q + 1 - count
    if t == -field.m:
        return count, util.MAXIMAL
    if t == field.m:
        return count, util.MINIMAL
    return count, util.NEITHER


def _genus2_chunk(task):
    # All (alpha, beta) with alpha in [start, stop) whose E2 count is target.
    q, a, b, start, stop, target = task
    chi = prime_field(q).chi
    f = Poly([b, a, 0, 1], q)
    xs = np.arange(q, dtype=np.int64)
    chi_f = chi[f.eval_array(xs)].astype(np.float64)
    alphas = np.arange(start, stop, dtype=np.int64)[:, None]
    sums = kernels.shifted_character_sums(alphas * xs[None, :] % q, q,
                                          weights=chi_f)
    at_infinity = np.where(chi[alphas] == 1, 2, 0)
    counts = q + sums + at_infinity
    # alpha x + beta must not vanish at a root of f
    betas = np.arange(q, dtype=np.int64)[None, :]
    smooth = np.ones(counts.shape, dtype=bool)
    for r in f.roots():
        smooth &= (alphas * r + betas) % q != 0
    rows, cols = np.nonzero((counts == target) & smooth)
    return [(start + int(i), int(j)) for i, j in zip(rows, cols)]


def _chunks(q, a, b, target):
    rows = util.clip(CHUNK_CANDIDATES // q, 1, q - 1)
    for start in range(1, q, rows):
        yield q, a, b, start, min(start + rows, q), target


def find_optimal_genus2(field, kind, threads=None, curve=None):
    """
    Returns the first recipe over the optimal E1 giving an optimal sextic.

    E1 is the lex-first optimal elliptic curve of the kind unless curve is
    given. (alpha, beta) run lexicographically with alpha != 0.

    Returns
    -------
    (Genus2Recipe, Genus2Curve)

    Raises
    ------
    NotFoundError
        If no recipe works.
    """
    kind = util.parse_kind(kind)
    E1 = curve if curve is not None else find_optimal_elliptic(
        field, kind, threads)
    q = field.q
    e2_target = serre_bound_count(field, 1, kind)
    target = serre_bound_count(field, 2, kind)
    tasks = _chunks(q, E1.a, E1.b, e2_target)
    results = workers.ordered_map(_genus2_chunk, tasks, threads)
    try:
        for hits in results:
            for alpha, beta in hits:
                recipe = Genus2Recipe(E1, alpha, beta)
                try:
                    C = construct_fibered_sextic(recipe, kind=kind)
                except DegenerateRecipeError as e:
                    logger.debug('Skipping %r: %s', recipe, e)
                    continue
                if C.count == target:
                    logger.info('Genus 2 %s curve over F_%d: %s.',
                                kind, q, C)
                    return recipe, C
                logger.debug('%r counts %d, expected %d.',
                             recipe, C.count, target)
    finally:
        results.close()
    raise NotFoundError('No %s genus 2 recipe over %r.' % (kind, E1))


def verify_genus2(recipe, kind, expected_sextic=None):
    """
    Builds and checks the fibered product of a recipe.

    Parameters
    ----------
    recipe : Genus2Recipe
        The recipe to check.
    kind : str
        The claimed kind.
    expected_sextic : sequence of int, optional
        Printed coefficients, lowest degree first, to compare against.

    Returns
    -------
    dict
        E1 and E2 kinds, the sextic, whether it matches the expected one,
        the count, the target and the overall pass flag.
    """
    kind = util.parse_kind(kind)
    E1 = recipe.E1
    field = E1.field
    target = serre_bound_count(field, 2, kind)
    e2_count, e2_kind = _e2_kind(recipe, field)
    report = {'q': field.q, 'm': field.m, 'kind': kind,
              'E': E1.to_dict(), 'alpha': recipe.alpha, 'beta': recipe.beta,
              'E1_kind': trace_and_kind(E1).kind, 'E2_kind': e2_kind,
              'E2_count': e2_count, 'target': target}
    try:
        C = construct_fibered_sextic(recipe, kind=kind)
    except DegenerateRecipeError as e:
        report.update(sextic=None, count=None, error=str(e))
        report['pass'] = False
        return report
    report['sextic'] = list(C.sextic.coeffs)
    report['count'] = C.count
    match = None
    if expected_sextic is not None:
        match = Poly(expected_sextic, field.q) == C.sextic
    report['construction_match'] = match
    report['pass'] = (C.count == target and
                      report['E1_kind'] == kind and
                      e2_kind == kind and
                      match is not False)
    return report
