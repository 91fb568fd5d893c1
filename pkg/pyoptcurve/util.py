#!/usr/bin/env python3

import math

MAXIMAL = 'maximal'
MINIMAL = 'minimal'
NEITHER = 'neither'

KINDS = (MAXIMAL, MINIMAL)

_KIND_ALIASES = {
    'max': MAXIMAL,
    'maximal': MAXIMAL,
    'min': MINIMAL,
    'minimal': MINIMAL,
}

# Deterministic Miller-Rabin bases, sufficient for n < 3,215,031,751.
_MR_BASES = (2, 3, 5, 7)


def clip(val, minval, maxval):
    """
    Returns val, not to exceed minval or maxval.

    Parameters
    ----------
    val : number
        The input value to clamp.
    minval : number
        Lower value to clamp to.
    maxval : number
        Upper value to clamp to.

    Returns
    -------
    number
        The clamped value.
    """
    if val < minval:
        return minval
    if val > maxval:
        return maxval
    return val


def is_prime(n):
    """
    Deterministic primality test for n < 2**31.

    Trial division by the Miller-Rabin bases followed by one strong
    probable-prime round per base.

    Parameters
    ----------
    n : int
        The candidate.

    Returns
    -------
    bool
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n >= 3215031751:
        raise ValueError('is_prime only supports n < 3215031751.')
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def floor_two_sqrt(q):
    """
    Returns [2 sqrt(q)] computed with exact integer arithmetic.
    """
    return math.isqrt(4 * q)


def inverse_mod(a, q):
    """
    Returns the inverse of a modulo the prime q.
    """
    a %= q
    if a == 0:
        raise ZeroDivisionError('0 has no inverse modulo %d.' % q)
    return pow(a, q - 2, q)


def parse_kind(kind):
    """
    Normalizes 'max', 'min', 'maximal' or 'minimal' to MAXIMAL or MINIMAL.
    """
    try:
        return _KIND_ALIASES[str(kind).strip().lower()]
    except KeyError:
        raise ValueError('Invalid kind %r, must be max or min.' % (kind,))


def kind_sign(kind):
    """
    Returns +1 for maximal and -1 for minimal, the sign of the deviation
    #C - q - 1 of an optimal curve.
    """
    return 1 if parse_kind(kind) == MAXIMAL else -1
