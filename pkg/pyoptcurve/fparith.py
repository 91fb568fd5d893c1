#!/usr/bin/env python3
"""
Exact arithmetic in prime fields F_q, their degree 2 and 3 extensions, and
dense univariate polynomials over F_q.

Scalar elements of F_q are ints in [0, q). Elements of F_{q^r} are tuples of
r ints, lowest power of the generator first. The vectorized routines work on
int64 arrays of shape (r, n), one column per element.
"""

import functools
import itertools
import math

import numpy as np

from . import util

__all__ = ['FieldCtx', 'Poly', 'prime_field', 'extension_field',
           'legendre_chi', 'ext_chi', 'poly_eval', 'poly_gcd_sqfree',
           'format_poly', 'NEG_INF', 'TABLE_LIMIT']

# Degree of the zero polynomial.
NEG_INF = -math.inf

# Largest q that gets a precomputed character table.
TABLE_LIMIT = 1 << 24

# Vectorized products stay inside int64 below this modulus.
VECTOR_LIMIT = 1 << 20


def _character_table(q):
    chi = np.full(q, -1, dtype=np.int8)
    y = np.arange(q, dtype=np.int64)
    chi[(y * y) % q] = 1
    chi[0] = 0
    return chi


def _has_root(coeffs, q):
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % q
    return bool(np.any(acc == 0))


def smallest_irreducible(q, r):
    """
    Returns the smallest monic irreducible polynomial of degree r over F_q.

    Candidates x^r + c_{r-1}x^{r-1} + ... + c_0 are scanned in lexicographic
    order of (c_{r-1}, ..., c_0). For r <= 3 irreducible means root-free.

    Parameters
    ----------
    q : int
        Prime modulus.
    r : int
        Degree, 2 or 3.

    Returns
    -------
    tuple of int
        Coefficients, lowest degree first, ending with the leading 1.
    """
    if r not in (2, 3):
        raise ValueError('Only degree 2 and 3 extensions are supported.')
    for high_first in itertools.product(range(q), repeat=r):
        coeffs = tuple(reversed(high_first)) + (1,)
        if coeffs[0] != 0 and not _has_root(coeffs, q):
            return coeffs
    raise ArithmeticError('No irreducible polynomial of degree %d over F_%d.'
                          % (r, q))


class FieldCtx:
    """
    Arithmetic context for F_q or one of its extensions F_{q^r}.

    A context never changes after construction apart from lazily filled
    caches, so it can be shared freely between workers.

    Parameters
    ----------
    q : int
        Odd prime modulus.
    modulus : sequence of int, optional
        Monic irreducible polynomial of degree r in {2, 3}, lowest degree
        first, defining F_{q^r} = F_q[t]/(modulus). None for F_q itself.
    """

    def __init__(self, q, modulus=None):
        q = int(q)
        if q == 2 or not util.is_prime(q):
            raise ValueError('Field modulus must be an odd prime, got %d.' % q)
        self.q = q
        if modulus is None:
            self.modulus = None
            self.degree = 1
            self.chi = _character_table(q) if q <= TABLE_LIMIT else None
        else:
            modulus = tuple(int(c) % q for c in modulus)
            degree = len(modulus) - 1
            if degree not in (2, 3) or modulus[-1] != 1:
                raise ValueError('Extension modulus must be monic of degree '
                                 '2 or 3.')
            if _has_root(modulus, q):
                raise ValueError('Extension modulus %r is reducible over F_%d.'
                                 % (modulus, q))
            if q >= VECTOR_LIMIT:
                raise ValueError('Extensions are limited to q < %d.'
                                 % VECTOR_LIMIT)
            self.modulus = modulus
            self.degree = degree
            self.chi = prime_field(q).chi
        self.size = q ** self.degree
        self._frobenius = None
        self._sqrt_table = None

    def __repr__(self):
        if self.degree == 1:
            return 'FieldCtx(%d)' % self.q
        return 'FieldCtx(%d, modulus=%r)' % (self.q, self.modulus)

    @property
    def base(self):
        return prime_field(self.q)

    def extension(self, r):
        """
        Returns the context of F_{q^r} built on the smallest irreducible.
        """
        if self.degree != 1:
            raise ValueError('Towers of extensions are not supported.')
        if r == 1:
            return self
        return extension_field(self.q, r)

    # Scalar elements.

    @property
    def zero(self):
        return 0 if self.degree == 1 else (0,) * self.degree

    @property
    def one(self):
        return 1 if self.degree == 1 else (1,) + (0,) * (self.degree - 1)

    def element(self, value):
        """
        Returns value reduced into the canonical representation.
        """
        if self.degree == 1:
            return int(value) % self.q
        if isinstance(value, (int, np.integer)):
            return self.embed(value)
        value = tuple(int(c) % self.q for c in value)
        if len(value) != self.degree:
            raise ValueError('Expected %d coefficients, got %d.'
                             % (self.degree, len(value)))
        return value

    def embed(self, x):
        """
        Returns the image of the base field element x.
        """
        x = int(x) % self.q
        if self.degree == 1:
            return x
        return (x,) + (0,) * (self.degree - 1)

    def is_reduced(self, x):
        if self.degree == 1:
            return isinstance(x, (int, np.integer)) and 0 <= x < self.q
        return (isinstance(x, tuple) and len(x) == self.degree and
                all(isinstance(c, (int, np.integer)) and 0 <= c < self.q
                    for c in x))

    def is_zero(self, x):
        if self.degree == 1:
            return x % self.q == 0
        return not any(x)

    def add(self, a, b):
        q = self.q
        if self.degree == 1:
            return (a + b) % q
        return tuple((x + y) % q for x, y in zip(a, b))

    def sub(self, a, b):
        q = self.q
        if self.degree == 1:
            return (a - b) % q
        return tuple((x - y) % q for x, y in zip(a, b))

    def mul(self, a, b):
        q = self.q
        if self.degree == 1:
            return a * b % q
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self._reduce(prod)

    def scale(self, c, a):
        """
        Returns c * a for a base field scalar c.
        """
        if self.degree == 1:
            return c * a % self.q
        return tuple(c * x % self.q for x in a)

    def pow(self, a, n):
        result = self.one
        while n > 0:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def _reduce(self, prod):
        q = self.q
        r = self.degree
        m = self.modulus
        prod = [c % q for c in prod]
        for k in range(len(prod) - 1, r - 1, -1):
            c = prod[k]
            if c:
                for i in range(r):
                    prod[k - r + i] = (prod[k - r + i] - c * m[i]) % q
            prod[k] = 0
        return tuple(prod[:r])

    # Vectorized elements, int64 arrays of shape (degree, n).

    def decode(self, idx):
        """
        Returns the coefficient array of the elements with integer codes idx.
        """
        idx = np.asarray(idx, dtype=np.int64)
        out = np.empty((self.degree, idx.size), dtype=np.int64)
        rest = idx.copy()
        for i in range(self.degree):
            out[i] = rest % self.q
            rest //= self.q
        return out

    def encode(self, A):
        """
        Returns the integer codes of the coefficient array A.
        """
        idx = np.zeros(A.shape[1], dtype=np.int64)
        for i in reversed(range(self.degree)):
            idx = idx * self.q + A[i]
        return idx

    def elements(self, start=0, stop=None):
        """
        Returns the elements with codes in [start, stop) as an array.
        """
        stop = self.size if stop is None else min(stop, self.size)
        return self.decode(np.arange(start, stop, dtype=np.int64))

    def constant(self, c, n):
        A = np.zeros((self.degree, n), dtype=np.int64)
        A[0] = int(c) % self.q
        return A

    def vadd(self, A, B):
        return (A + B) % self.q

    def vmul(self, A, B):
        q = self.q
        r = self.degree
        if r == 1:
            return (A * B) % q
        prod = np.zeros((2 * r - 1, A.shape[1]), dtype=np.int64)
        for i in range(r):
            for j in range(r):
                prod[i + j] = (prod[i + j] + A[i] * B[j]) % q
        m = self.modulus
        for k in range(2 * r - 2, r - 1, -1):
            for i in range(r):
                prod[k - r + i] = (prod[k - r + i] - prod[k] * m[i]) % q
        return prod[:r]

    def frobenius_matrix(self):
        """
        Returns the matrix of x -> x^q on the basis 1, t, ..., t^(r-1).
        """
        if self._frobenius is None:
            r = self.degree
            F = np.eye(r, dtype=np.int64)
            if r > 1:
                tq = self.pow((0, 1) + (0,) * (r - 2), self.q)
                power = self.one
                for i in range(r):
                    F[:, i] = power
                    power = self.mul(power, tq)
            self._frobenius = F
        return self._frobenius

    def vnorm(self, A):
        """
        Returns the norms N(x) = x * x^q * ... in F_q of the columns of A.
        """
        if self.degree == 1:
            return A[0] % self.q
        F = self.frobenius_matrix()
        conj = A
        norm = A
        for _ in range(self.degree - 1):
            conj = (F @ conj) % self.q
            norm = self.vmul(norm, conj)
        return norm[0]

    def vchi(self, A):
        """
        Returns the quadratic character of every column of A.

        Uses chi_{q^r}(x) = chi_q(N(x)), since the exponent (q^r - 1)/2
        factors through the norm.
        """
        if self.chi is None:
            raise ValueError('No character table for q = %d.' % self.q)
        return self.chi[self.vnorm(A)]

    def sqrt_table(self):
        """
        Returns an array mapping each element code to the code of one of its
        square roots, or -1 for non-squares.
        """
        if self._sqrt_table is None:
            table = np.full(self.size, -1, dtype=np.int64)
            chunk = 1 << 20
            for start in range(0, self.size, chunk):
                Y = self.elements(start, start + chunk)
                table[self.encode(self.vmul(Y, Y))] = self.encode(Y)
            self._sqrt_table = table
        return self._sqrt_table


@functools.lru_cache(maxsize=None)
def prime_field(q):
    """
    Returns the shared FieldCtx of F_q.
    """
    return FieldCtx(q)


@functools.lru_cache(maxsize=None)
def extension_field(q, r):
    """
    Returns the shared FieldCtx of F_{q^r} on the smallest irreducible.
    """
    return FieldCtx(q, smallest_irreducible(q, r))


def legendre_chi(x, ctx):
    """
    Quadratic character of x in F_q.

    Parameters
    ----------
    x : int
        Element of F_q, 0 <= x < q.
    ctx : FieldCtx
        A prime field context.

    Returns
    -------
    int
        0 for x = 0, +1 for nonzero squares, -1 otherwise.
    """
    if ctx.degree != 1:
        raise ValueError('legendre_chi needs a prime field context.')
    if not 0 <= x < ctx.q:
        raise ValueError('%r is not a reduced element of F_%d.' % (x, ctx.q))
    if ctx.chi is not None:
        return int(ctx.chi[x])
    if x == 0:
        return 0
    return 1 if pow(x, (ctx.q - 1) // 2, ctx.q) == 1 else -1


def ext_chi(x, ctx):
    """
    Quadratic character of x in F_{q^r} by square-and-multiply.

    Parameters
    ----------
    x : tuple of int
        Reduced element of the extension.
    ctx : FieldCtx
        Extension context of degree 2 or 3.

    Returns
    -------
    int
        0, +1 or -1.
    """
    if ctx.degree not in (2, 3):
        raise ValueError('ext_chi needs an extension field context.')
    if not ctx.is_reduced(x):
        raise ValueError('%r is not a reduced element of F_%d^%d.'
                         % (x, ctx.q, ctx.degree))
    if ctx.is_zero(x):
        return 0
    y = ctx.pow(x, (ctx.size - 1) // 2)
    if y == ctx.one:
        return 1
    if y == ctx.embed(-1):
        return -1
    raise ArithmeticError('Euler criterion gave %r.' % (y,))


def poly_eval(p, x, ctx=None):
    """
    Horner evaluation of p at x, in F_q or in the extension of ctx.
    """
    if ctx is None or ctx.degree == 1:
        q = p.q
        acc = 0
        for c in reversed(p.coeffs):
            acc = (acc * x + c) % q
        return acc
    acc = ctx.zero
    for c in reversed(p.coeffs):
        acc = ctx.add(ctx.mul(acc, x), ctx.embed(c))
    return acc


def poly_eval_vec(p, X, ctx):
    """
    Horner evaluation of p at every column of X.
    """
    acc = np.zeros_like(X)
    for c in reversed(p.coeffs):
        acc = ctx.vmul(acc, X)
        acc[0] = (acc[0] + c) % ctx.q
    return acc


def poly_gcd_sqfree(p):
    """
    Squarefree decomposition p = lc * prod s_i^i.

    Parameters
    ----------
    p : Poly
        Nonzero polynomial.

    Returns
    -------
    radical : Poly
        The product of all parts, monic and squarefree.
    parts : list of (Poly, int)
        Monic, squarefree, pairwise coprime parts with their multiplicity,
        ordered by multiplicity.
    """
    if p.is_zero():
        raise ValueError('The zero polynomial has no squarefree decomposition.')
    parts = sorted(_sff(p.monic()), key=lambda part: part[1])
    radical = Poly([1], p.q)
    for s, _ in parts:
        radical = radical * s
    return radical, parts


def _sff(f):
    # Squarefree factorization over a prime field, p-th powers included.
    q = f.q
    out = []
    c = f.gcd(f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = w.gcd(c)
        fac = w // y
        if fac.degree > 0:
            out.append((fac, i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        out.extend((s, m * q) for s, m in _sff(c.pth_root()))
    return out


def format_poly(coeffs, var='x'):
    """
    Formats coefficients (lowest degree first) the way curve tables print
    them, e.g. [38, 1, 0, 1] -> 'x^3+x+38'.
    """
    terms = []
    for k in reversed(range(len(coeffs))):
        c = int(coeffs[k])
        if c == 0:
            continue
        if k == 0:
            terms.append('%d' % c)
            continue
        mono = var if k == 1 else '%s^%d' % (var, k)
        terms.append(mono if c == 1 else '%d%s' % (c, mono))
    return '+'.join(terms) if terms else '0'


class Poly:
    """
    Dense polynomial over F_q, coefficients lowest degree first.

    Polynomials are immutable; arithmetic returns new instances. The zero
    polynomial has degree NEG_INF.

    Parameters
    ----------
    coeffs : iterable of int
        Coefficients, lowest degree first. Reduced modulo q and trimmed.
    q : int
        Prime modulus.
    """
    __slots__ = ('q', 'coeffs')

    def __init__(self, coeffs, q):
        cs = [int(c) % q for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.q = q
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, q):
        return cls([0, 1], q)

    @classmethod
    def constant(cls, c, q):
        return cls([c], q)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self):
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.q == other.q and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly([other], self.q).coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.coeffs))

    def __repr__(self):
        return 'Poly(%r, %d)' % (list(self.coeffs), self.q)

    def __str__(self):
        return format_poly(self.coeffs)

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.q != self.q:
                raise ValueError('Polynomials over different fields.')
            return other
        return Poly([other], self.q)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self[k] + other[k] for k in range(n)], self.q)

    __radd__ = __add__

    def __neg__(self):
        return Poly([-c for c in self.coeffs], self.q)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return Poly([], self.q)
        prod = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    prod[i + j] += a * b
        return Poly(prod, self.q)

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly([1], self.q)
        base = self
        while n > 0:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError('Polynomial division by zero.')
        q = self.q
        rem = list(self.coeffs)
        d = len(other.coeffs) - 1
        inv = util.inverse_mod(other.lc, q)
        quot = [0] * max(len(rem) - d, 0)
        for k in range(len(rem) - 1, d - 1, -1):
            c = rem[k] * inv % q
            if c:
                quot[k - d] = c
                for i, b in enumerate(other.coeffs):
                    rem[k - d + i] = (rem[k - d + i] - c * b) % q
        return Poly(quot, q), Poly(rem[:d], q)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x, ctx=None):
        return poly_eval(self, x, ctx)

    def monic(self):
        if self.is_zero():
            return self
        return self * util.inverse_mod(self.lc, self.q)

    def derivative(self):
        return Poly([k * c for k, c in enumerate(self.coeffs)][1:], self.q)

    def gcd(self, other):
        """
        Returns the monic gcd; gcd(0, 0) is 0.
        """
        a, b = self, self._coerce(other)
        while b:
            a, b = b, a % b
        return a.monic()

    def compose(self, other):
        """
        Returns self(other(x)).
        """
        other = self._coerce(other)
        acc = Poly([], self.q)
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def pth_root(self):
        """
        Returns g with g(x)^q = self, for self a polynomial in x^q.
        """
        q = self.q
        if any(c for k, c in enumerate(self.coeffs) if k % q):
            raise ValueError('%s is not a p-th power.' % self)
        return Poly(self.coeffs[::q], q)

    def multiplicity(self, x0):
        """
        Returns the order of vanishing of self at x0 in F_q.
        """
        if self.is_zero():
            return math.inf
        k = 0
        p = self
        while p(x0) == 0:
            p = p.deflate(x0, 1)
            k += 1
        return k

    def deflate(self, x0, k=1):
        """
        Returns self / (x - x0)^k, which must be exact.
        """
        q = self.q
        p = self
        for _ in range(k):
            # synthetic division by x - x0
            out = [0] * (len(p.coeffs) - 1)
            carry = 0
            for i in reversed(range(1, len(p.coeffs))):
                carry = (carry * x0 + p.coeffs[i]) % q
                out[i - 1] = carry
            if (carry * x0 + p.coeffs[0]) % q if p.coeffs else 0:
                raise ValueError('%s does not vanish at %d.' % (p, x0))
            p = Poly(out, q)
        return p

    def eval_array(self, xs):
        """
        Evaluates at every entry of the int64 array xs of F_q elements.
        """
        xs = np.asarray(xs, dtype=np.int64)
        acc = np.zeros(xs.shape, dtype=np.int64)
        for c in reversed(self.coeffs):
            acc = (acc * xs + c) % self.q
        return acc

    def roots(self):
        """
        Returns the distinct roots in F_q, ascending.
        """
        if self.is_zero():
            raise ValueError('Every element is a root of the zero polynomial.')
        values = self.eval_array(np.arange(self.q, dtype=np.int64))
        return [int(x) for x in np.flatnonzero(values == 0)]

    def is_squarefree(self):
        if self.is_zero():
            return False
        return all(m == 1 for _, m in poly_gcd_sqfree(self)[1])
