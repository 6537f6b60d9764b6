"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element is a vector of ``phi(N)`` rationals: the coefficients of its
representative polynomial in ``zeta_N``, reduced modulo the N-th cyclotomic
polynomial.  Because the representation is canonical, equality is
coefficientwise.

>>> K = cyc_field(12)
>>> s = sqrt3(K)
>>> s * s == 3
True
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional

__all__ = [
    "CycField", "CycNumber", "FieldMismatch", "NotDivisible",
    "cyclotomic_poly", "cyc_field", "embed", "common_field", "sqrt3", "imag_unit",
    "cyc_matrix", "cyc_matmul", "cyc_matpow", "cyc_embed_matrix",
    "matrix_is_real", "matrix_as_rational", "matrix_approx",
]


class FieldMismatch(ValueError):
    pass


class NotDivisible(ValueError):
    pass


# -- integer polynomials, coefficient lists low -> high ------------------------

def _poly_divmod(num, den):
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for k in range(len(num) - len(den), -1, -1):
        c = num[k + len(den) - 1]
        if c:
            if isinstance(c, int) and isinstance(lead, int) and c % lead == 0:
                c = c // lead
            else:
                c = Fraction(c) / lead
            q[k] = c
            for i, d in enumerate(den):
                num[k + i] -= c * d
    rem = num[:len(den) - 1]
    while len(rem) > 1 and rem[-1] == 0:
        rem.pop()
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_poly(N: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_N (low degree first)."""
    if N < 1:
        raise ValueError("conductor must be positive")
    p = [-1] + [0] * (N - 1) + [1]
    for d in range(1, N):
        if N % d == 0:
            p, rem = _poly_divmod(p, cyclotomic_poly(d))
            assert all(r == 0 for r in rem)
    return tuple(int(c) for c in p)


@dataclass(frozen=True, eq=False)
class CycField:
    N: int
    modulus: tuple[int, ...]
    phi: int
    # reps[k] = coefficient vector of zeta_N**k, 0 <= k < N
    _reps: tuple = field(repr=False, compare=False)

    def __eq__(self, other):
        return isinstance(other, CycField) and other.N == self.N

    def __hash__(self):
        return hash(("CycField", self.N))

    def __reduce__(self):
        return (cyc_field, (self.N,))

    def element(self, coeffs) -> "CycNumber":
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > self.phi:
            return self._reduce(coeffs)
        return CycNumber(self, tuple(coeffs) + (Fraction(0),) * (self.phi - len(coeffs)))

    def rational(self, q) -> "CycNumber":
        return CycNumber(self, (Fraction(q),) + (Fraction(0),) * (self.phi - 1))

    def zero(self):
        return self.rational(0)

    def one(self):
        return self.rational(1)

    def zeta(self, k: int = 1) -> "CycNumber":
        """``zeta_N ** k`` for any integer ``k``."""
        return CycNumber(self, self._reps[k % self.N])

    def root_of_unity(self, order: int, k: int = 1) -> "CycNumber":
        """``exp(2 pi i k / order)``; ``order`` must divide ``N``."""
        if self.N % order:
            raise NotDivisible(f"order {order} does not divide conductor {self.N}")
        return self.zeta(k * (self.N // order))

    def _reduce(self, coeffs) -> "CycNumber":
        """Reduce a polynomial in zeta (any length) to the canonical vector."""
        out = [Fraction(0)] * self.phi
        reps = self._reps
        N = self.N
        for k, c in enumerate(coeffs):
            if c:
                r = reps[k % N]
                for i in range(self.phi):
                    if r[i]:
                        out[i] += c * r[i]
        return CycNumber(self, tuple(out))


@lru_cache(maxsize=None)
def cyc_field(N: int) -> CycField:
    modulus = cyclotomic_poly(N)
    phi = len(modulus) - 1
    reps = []
    cur = [Fraction(0)] * phi
    cur[0] = Fraction(1)
    for _ in range(N):
        reps.append(tuple(cur))
        # multiply by x, then reduce x**phi with the monic modulus
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            cur = [c - top * m for c, m in zip(cur, modulus[:-1])]
    return CycField(N, modulus, phi, tuple(reps))


class CycNumber:
    """Immutable element of Q(zeta_N)."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: CycField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    def __reduce__(self):
        return (_rebuild, (self.field.N, tuple(str(c) for c in self.coeffs)))

    # -- coercion

    def _coerce(self, other) -> Optional["CycNumber"]:
        if isinstance(other, CycNumber):
            if other.field.N != self.field.N:
                raise FieldMismatch(
                    f"operands live in Q(zeta_{self.field.N}) and Q(zeta_{other.field.N}); embed first")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.rational(other)
        return None

    # -- ring operations

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CycNumber(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return self.field.zero()
            return CycNumber(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        prod = [Fraction(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self.field._reduce(prod)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return CycNumber(self.field, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        return self.inv() * other

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inv() ** (-k)
        result = self.field.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inv(self) -> "CycNumber":
        """Multiplicative inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        s = _trim([Fraction(c) for c in self.coeffs])
        _, u = _ext_gcd(s, [Fraction(c) for c in self.field.modulus])
        return self.field.element(u)

    def conj(self) -> "CycNumber":
        """Complex conjugate: zeta -> zeta**-1."""
        N = self.field.N
        poly = [Fraction(0)] * N
        for k, c in enumerate(self.coeffs):
            if c:
                poly[(-k) % N] += c
        return self.field._reduce(poly)

    # -- predicates / views

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_real(self) -> bool:
        return self.conj() == self

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def as_rational(self) -> Optional[Fraction]:
        return self.coeffs[0] if self.is_rational() else None

    def approx(self) -> complex:
        """Double-precision value with zeta_N = exp(2 pi i / N)."""
        if self.is_zero():
            return 0j
        N = self.field.N
        z = 0j
        for k, c in enumerate(self.coeffs):
            if c:
                z += float(c) * cmath.exp(2j * math.pi * k / N)
        return z

    def __eq__(self, other):
        if isinstance(other, CycNumber):
            return other.field.N == self.field.N and other.coeffs == self.coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.field.N, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if k == 0 else f"{c}*z^{k}")
        return f"CycNumber(N={self.field.N}: {' + '.join(terms) or '0'})"

    def to_json(self) -> list:
        return [str(c) for c in self.coeffs]


def _rebuild(N, coeffs):
    return CycNumber(cyc_field(N), tuple(Fraction(c) for c in coeffs))


def _trim(p):
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _ext_gcd(a, b):
    """Return (g, u) with u*a == g (mod b), g the monic gcd (a constant here)."""
    r0, r1 = _trim(b), _trim(a)
    u0, u1 = [Fraction(0)], [Fraction(1)]
    while any(r1):
        q, r = _poly_divmod(r0, r1)
        q = [Fraction(c) for c in q]
        r = [Fraction(c) for c in r]
        r0, r1 = r1, _trim(r)
        u0, u1 = u1, _trim(_poly_sub(u0, _poly_mul(q, u1)))
    lead = r0[-1]
    return [c / lead for c in r0], [c / lead for c in u0]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def embed(a: CycNumber, M: int) -> CycNumber:
    """Image of ``a`` in Q(zeta_M) under zeta_N -> zeta_M**(M/N)."""
    N = a.field.N
    if M % N:
        raise NotDivisible(f"conductor {N} does not divide {M}")
    if M == N:
        return a
    target = cyc_field(M)
    step = M // N
    poly = [Fraction(0)] * M
    for k, c in enumerate(a.coeffs):
        if c:
            poly[(k * step) % M] += c
    return target._reduce(poly)


def common_field(*items) -> CycField:
    """Smallest field containing all given CycNumbers (rationals need Q = Q(zeta_1))."""
    N = 1
    for x in items:
        if isinstance(x, CycNumber):
            N = math.lcm(N, x.field.N)
    return cyc_field(N)


def lift(x, K: CycField) -> CycNumber:
    """Coerce an int, Fraction or CycNumber into ``K``."""
    if isinstance(x, CycNumber):
        return embed(x, K.N)
    return K.rational(x)


def imag_unit(K: CycField) -> CycNumber:
    return K.root_of_unity(4)


def sqrt3(K: CycField) -> CycNumber:
    """The positive square root of 3, as zeta_12 + zeta_12**-1."""
    return K.root_of_unity(12) + K.root_of_unity(12, -1)


# -- matrices over a cyclotomic field (tuples of rows of CycNumber) ------------

def cyc_matrix(m, K: CycField):
    return tuple(tuple(lift(e, K) for e in row) for row in m)


def cyc_embed_matrix(x, M: int):
    return tuple(tuple(embed(e, M) for e in row) for row in x)


def cyc_matmul(a, b):
    cols = tuple(zip(*b))
    out = []
    for row in a:
        r = []
        for col in cols:
            acc = row[0] * col[0]
            for x, y in zip(row[1:], col[1:]):
                acc = acc + x * y
            r.append(acc)
        out.append(tuple(r))
    return tuple(out)


def cyc_matpow(x, k: int):
    if k < 1:
        raise ValueError("exponent must be positive")
    result = None
    base = x
    while k:
        if k & 1:
            result = base if result is None else cyc_matmul(result, base)
        k >>= 1
        if k:
            base = cyc_matmul(base, base)
    return result


def matrix_is_real(x) -> bool:
    return all(e.is_real() for row in x for e in row)


def matrix_as_rational(x):
    """Rational matrix if every entry is rational, else ``None``."""
    out = []
    for row in x:
        r = []
        for e in row:
            q = e.as_rational()
            if q is None:
                return None
            r.append(int(q) if q.denominator == 1 else q)
        out.append(tuple(r))
    return tuple(out)


def matrix_approx(x):
    return [[e.approx() for e in row] for row in x]
