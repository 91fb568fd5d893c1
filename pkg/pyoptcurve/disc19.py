#!/usr/bin/env python3
"""
Prime fields of discriminant -19 and the Hasse-Weil-Serre bound.
"""

import math
from typing import NamedTuple

from . import util
from .fparith import prime_field

__all__ = ['Disc19Field', 'enumerate_disc19_primes', 'serre_bound_count',
           'nonsquare', 'hasse_interval', 'weil_ok', 'weil_window']

DISCRIMINANT = -19

# For m <= 9 the prime (m^2 + 19)/4 has [2 sqrt(q)] != m.
FIRST_M = 11


class Disc19Field(NamedTuple):
    """
    A prime q with m = [2 sqrt(q)] and m^2 - 4q = -19.
    """
    q: int
    m: int

    @classmethod
    def from_q(cls, q):
        """
        Validates q and returns its field.

        Raises
        ------
        ValueError
            If q is not prime or does not have discriminant -19.
        """
        q = int(q)
        if not util.is_prime(q):
            raise ValueError('%d is not prime.' % q)
        m = util.floor_two_sqrt(q)
        if m * m - 4 * q != DISCRIMINANT:
            raise ValueError('F_%d does not have discriminant -19 '
                             '([2 sqrt(q)]^2 - 4q = %d).' % (q, m * m - 4 * q))
        return cls(q, m)

    @property
    def ctx(self):
        return prime_field(self.q)

    def check(self):
        """
        Returns True when both characterizations of m agree.
        """
        q, m = self.q, self.m
        return (m % 2 == 1 and m * m < 4 * q < (m + 1) ** 2 and
                4 * q - m * m == 19 and m == util.floor_two_sqrt(q))


def enumerate_disc19_primes(bound):
    """
    Returns every prime q <= bound of discriminant -19, ascending.

    Iterates odd m starting at 11, tests q = (m^2 + 19)/4 for primality
    and stops once q exceeds the bound.

    Parameters
    ----------
    bound : int
        Inclusive upper bound on q, at least 2.

    Returns
    -------
    list of Disc19Field
    """
    if bound < 2:
        raise ValueError('Bound must be at least 2.')
    fields = []
    m = FIRST_M
    while True:
        q = (m * m + 19) // 4
        if q > bound:
            break
        if util.is_prime(q):
            fields.append(Disc19Field(q, m))
        m += 2
    return fields


def serre_bound_count(field, g, kind):
    """
    Returns q + 1 + g*m for maximal curves and q + 1 - g*m for minimal ones.
    """
    if g not in (1, 2, 3):
        raise ValueError('Genus must be 1, 2 or 3, got %r.' % (g,))
    return field.q + 1 + util.kind_sign(kind) * g * field.m


def hasse_interval(field, g):
    """
    Returns (low, high), the range of point counts allowed by the bound.
    """
    return (serre_bound_count(field, g, util.MINIMAL),
            serre_bound_count(field, g, util.MAXIMAL))


def nonsquare(q):
    """
    Returns the smallest quadratic non-residue modulo the odd prime q.
    """
    q = q.q if isinstance(q, Disc19Field) else q
    chi = prime_field(q).chi
    for c in range(2, q):
        if chi[c] == -1:
            return c
    raise ArithmeticError('No nonsquare modulo %d.' % q)


def weil_ok(count, q, g):
    """
    Returns True when (count - q - 1)^2 <= 4 g^2 q, the integer Weil bound.
    """
    dev = count - q - 1
    return dev * dev <= 4 * g * g * q


def weil_window(q, g):
    """
    Returns g * [2 sqrt(q)].
    """
    return g * math.isqrt(4 * q)
