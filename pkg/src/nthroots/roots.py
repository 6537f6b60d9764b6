"""All n-th roots of A**n for matrices with distinct eigenvalues.

Three regimes are covered:

* integer spectra, where A = M diag(lambda) M^-1 with an integer eigenvector
  matrix M and every root is M diag(lambda_i w**j_i) M^-1 over Q(zeta_n);
* the matrix ``C = (1 -2; 2 -1)`` with eigenvalues +-i*sqrt(3) and odd n,
  built from a closed formula over Q(zeta_lcm(12, 4n));
* the even-n family Y(n, u, v) of infinitely many square-roots-and-beyond of
  ``C**n = (-3)**(n/2) I``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import exact
from .cyclotomic import (
    CycField, CycNumber, common_field, cyc_embed_matrix, cyc_field, cyc_matmul,
    cyc_matpow, imag_unit, lift, matrix_as_rational, matrix_is_real, sqrt3,
)
from .exact import DimensionMismatch, IntMatrix, RatMatrix

C = ((1, -2), (2, -1))


class NonIntegerSpectrum(ValueError):
    pass


class RepeatedEigenvalue(ValueError):
    pass


class NonSimpleKernel(ValueError):
    pass


class BadParity(ValueError):
    pass


class ZeroV(ValueError):
    pass


class VerificationFailed(AssertionError):
    pass


@dataclass(frozen=True)
class IntegerSpectrum:
    eigenvalues: tuple[int, ...]
    eigenvectors: IntMatrix  # columns are eigenvectors
    inverse: RatMatrix


@dataclass(frozen=True)
class RootSet:
    base: IntMatrix
    exponent: int
    field: CycField
    roots: tuple  # ((j, k, ...), CycMatrix) in lexicographic index order
    real_subset: tuple[int, ...]

    def __len__(self):
        return len(self.roots)

    def get(self, indices) -> tuple:
        for idx, x in self.roots:
            if idx == tuple(indices):
                return x
        raise KeyError(indices)

    def to_json(self) -> dict:
        out = []
        real = set(self.real_subset)
        for pos, (idx, x) in enumerate(self.roots):
            rec = {
                "indices": list(idx),
                "entries": [[e.to_json() for e in row] for row in x],
                "is_real": pos in real,
            }
            q = matrix_as_rational(x)
            if q is not None:
                rec["real_entries"] = exact.matrix_to_json(q)
            out.append(rec)
        return {
            "base": exact.matrix_to_json(self.base),
            "n": self.exponent,
            "conductor": self.field.N,
            "roots": out,
        }


# -- spectrum ---------------------------------------------------------------

def characteristic_polynomial(a: IntMatrix) -> list[int]:
    """Coefficients of det(xI - a), low degree first (Faddeev-LeVerrier)."""
    n = len(a)
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    m = exact.diag([0] * n)
    for k in range(1, n + 1):
        m = exact.matmul(a, m)
        c = coeffs[n - k + 1]
        m = tuple(tuple(e + (c if i == j else 0) for j, e in enumerate(row)) for i, row in enumerate(m))
        am = exact.matmul(a, m)
        tr = sum(am[i][i] for i in range(n))
        assert tr % k == 0
        coeffs[n - k] = -tr // k
    return coeffs


def _divisors(x: int):
    x = abs(x)
    small, large = [], []
    d = 1
    while d * d <= x:
        if x % d == 0:
            small.append(d)
            if d * d != x:
                large.append(x // d)
        d += 1
    return small + large[::-1]


def _synthetic_div(poly, r):
    """Divide by (x - r); return (quotient, remainder)."""
    out = []
    acc = 0
    for c in reversed(poly):
        acc = acc * r + c
        out.append(acc)
    rem = out.pop()
    return out[::-1], rem


def integer_roots(poly: list[int]) -> dict[int, int]:
    """Integer roots of an integer polynomial with multiplicities."""
    poly = list(poly)
    found: dict[int, int] = {}
    while len(poly) > 1 and poly[0] == 0:
        found[0] = found.get(0, 0) + 1
        poly = poly[1:]
    if len(poly) > 1:
        for d in _divisors(poly[0]):
            for r in (d, -d):
                while len(poly) > 1:
                    q, rem = _synthetic_div(poly, r)
                    if rem:
                        break
                    found[r] = found.get(r, 0) + 1
                    poly = q
    return found


def _rational_kernel(m) -> list[list[Fraction]]:
    """Basis of the right kernel of a rational matrix, via reduced row echelon form."""
    rows = [[Fraction(e) for e in r] for r in m]
    n_cols = len(rows[0])
    pivots = []
    r = 0
    for c in range(n_cols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        pv = rows[r][c]
        rows[r] = [e / pv for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        v = [Fraction(0)] * n_cols
        v[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][free]
        basis.append(v)
    return basis


def primitive_integer_vector(v) -> tuple[int, ...]:
    """Scale a rational vector to coprime integers with first nonzero entry positive."""
    den = math.lcm(*(Fraction(x).denominator for x in v))
    ints = [int(Fraction(x) * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def integer_spectrum(a: IntMatrix) -> IntegerSpectrum:
    a = exact.as_matrix(a)
    n = len(a)
    found = integer_roots(characteristic_polynomial(a))
    if sum(found.values()) < n:
        raise NonIntegerSpectrum("characteristic polynomial has a non-integer root")
    if any(mult > 1 for mult in found.values()):
        raise RepeatedEigenvalue(f"repeated eigenvalue: {sorted(found)} with multiplicities {found}")
    eigenvalues = tuple(sorted(found))
    columns = []
    for lam in eigenvalues:
        shifted = [[e - (lam if i == j else 0) for j, e in enumerate(row)] for i, row in enumerate(a)]
        kernel = _rational_kernel(shifted)
        if len(kernel) != 1:
            raise NonSimpleKernel(f"eigenspace of {lam} has dimension {len(kernel)}")
        columns.append(primitive_integer_vector(kernel[0]))
    vecs = exact.transpose(columns)
    return IntegerSpectrum(eigenvalues, vecs, exact.rational_inverse(vecs))


# -- root enumeration ---------------------------------------------------------

def verify_power(x, a: IntMatrix, n: int) -> bool:
    """True iff x**n == a**n exactly."""
    if len(x) != len(a) or any(len(r) != len(a) for r in x):
        raise DimensionMismatch("root and base differ in dimension")
    xn = cyc_matpow(x, n)
    an = exact.matpow(a, n)
    return all(xe == ae for xr, ar in zip(xn, an) for xe, ae in zip(xr, ar))


def _check_root_multiplicity(eigenvalues, n):
    if 0 in eigenvalues and n > 1:
        raise RepeatedEigenvalue("eigenvalue 0 has a single n-th root; roots would repeat")
    powers = [lam ** n for lam in eigenvalues]
    if len(set(powers)) < len(powers):
        raise RepeatedEigenvalue("A**n has a repeated eigenvalue; its n-th roots form an infinite family")


def _build_rootset(base, n, K, items, verify) -> RootSet:
    roots = []
    real = []
    for pos, (idx, x) in enumerate(items):
        if verify and not verify_power(x, base, n):
            raise VerificationFailed(f"X{idx}**{n} != A**{n}")
        if matrix_is_real(x):
            real.append(pos)
        roots.append((idx, x))
    return RootSet(base, n, K, tuple(roots), tuple(real))


def enumerate_roots(spec: IntegerSpectrum, n: int, base: Optional[IntMatrix] = None,
                    verify: bool = True) -> RootSet:
    """All ``n**m`` matrices M diag(lambda_i w**j_i) M^-1, w = exp(2 pi i / n)."""
    if n < 1:
        raise ValueError("exponent must be >= 1")
    _check_root_multiplicity(spec.eigenvalues, n)
    K = cyc_field(n)
    vecs, inv, lams = spec.eigenvectors, spec.inverse, spec.eigenvalues
    dim = len(lams)
    # X = sum_i w**j_i * W_i with W_i = lambda_i * (column i of M)(row i of M^-1)
    weights = [
        [[lams[i] * vecs[r][i] * inv[i][c] for c in range(dim)] for r in range(dim)]
        for i in range(dim)
    ]
    if base is None:
        base = exact.matmul(exact.matmul(vecs, exact.diag(lams)), inv)
        base = tuple(tuple(int(e) for e in row) for row in base)
    zetas = [K.zeta(j) for j in range(n)]
    items = []
    for idx in itertools.product(range(n), repeat=dim):
        x = tuple(
            tuple(sum((zetas[idx[i]] * weights[i][r][c] for i in range(dim)), K.zero())
                  for c in range(dim))
            for r in range(dim)
        )
        items.append((idx, x))
    return _build_rootset(base, n, K, items, verify)


def roots_of_power(a: IntMatrix, n: int, verify: bool = True) -> RootSet:
    """Convenience: enumerate every n-th root of ``a**n`` for integer-spectrum ``a``."""
    a = exact.as_matrix(a)
    return enumerate_roots(integer_spectrum(a), n, base=a, verify=verify)


def real_roots(rs: RootSet) -> list:
    """Real members; rational matrices where possible, otherwise the CycMatrix itself."""
    out = []
    for pos in rs.real_subset:
        x = rs.roots[pos][1]
        q = matrix_as_rational(x)
        out.append(x if q is None else q)
    return out


# -- the complex-spectrum matrix C --------------------------------------------

def c_field(n: int) -> CycField:
    return cyc_field(math.lcm(12, 4 * n))


def odd_c_roots(n: int, verify: bool = True) -> RootSet:
    """The n**2 closed-form roots X(n, j, k) of X**n = C**n, n odd."""
    if n % 2 == 0 or n < 3:
        raise BadParity("closed form needs odd n >= 3")
    K = c_field(n)
    i = imag_unit(K)
    xi = K.root_of_unity(6)
    eta = K.root_of_unity(4 * n)
    prefactor = (-1) ** ((n + 1) // 2) * i.inv()
    xi_inv, eta_inv = xi.inv(), eta.inv()
    items = []
    for j, k in itertools.product(range(n), repeat=2):
        wj = K.root_of_unity(n, j)
        wk = K.root_of_unity(n, k)
        x = (
            (-xi_inv * eta * wj + xi * eta_inv * wk, eta * wj - eta_inv * wk),
            (-eta * wj + eta_inv * wk, xi * eta * wj - xi_inv * eta_inv * wk),
        )
        items.append(((j, k), tuple(tuple(prefactor * e for e in row) for row in x)))
    return _build_rootset(C, n, K, items, verify)


def c_eigen_roots(n: int, verify: bool = True) -> RootSet:
    """Roots of X**n = C**n by direct diagonalization with eigenvalues +-i*sqrt(3)."""
    if n < 1:
        raise ValueError("exponent must be >= 1")
    K = c_field(n)
    root = imag_unit(K) * sqrt3(K)
    lams = (root, -root)
    # (C - lambda I) v = 0  =>  v = (2, 1 - lambda)
    vecs = ((K.rational(2), K.rational(2)), (1 - lams[0], 1 - lams[1]))
    d = vecs[0][0] * vecs[1][1] - vecs[0][1] * vecs[1][0]
    inv = ((vecs[1][1] / d, -vecs[0][1] / d), (-vecs[1][0] / d, vecs[0][0] / d))
    items = []
    for j, k in itertools.product(range(n), repeat=2):
        dg = ((lams[0] * K.root_of_unity(n, j), K.zero()), (K.zero(), lams[1] * K.root_of_unity(n, k)))
        items.append(((j, k), cyc_matmul(cyc_matmul(vecs, dg), inv)))
    return _build_rootset(C, n, K, items, verify)


def even_family(n: int, u, v, verify: bool = True):
    """Y(n, u, v), a root of Y**n = C**n = (-3)**(n/2) I; ``v`` must be nonzero."""
    if n % 2 or n < 2:
        raise BadParity("even family needs even n >= 2")
    if v == 0:
        raise ZeroV("parameter v must be nonzero")
    K = cyc_field(math.lcm(12, 2 * n, common_field(u, v).N))
    u, v = lift(u, K), lift(v, K)
    w = K.root_of_unity(n)
    kappa = sqrt3(K)
    if (n // 2) % 2:
        kappa = kappa * K.root_of_unity(2 * n)
    p, q = kappa * (1 + w), kappa * (1 - w)
    y = (
        ((p + 2 * u) / 2, v * (q + 2 * u) / 2),
        ((q - 2 * u) / (2 * v), (p - 2 * u) / 2),
    )
    if verify and not verify_power(y, C, n):
        raise VerificationFailed(f"Y**{n} != C**{n}")
    return y


def embed_rootset(rs: RootSet, M: int) -> list:
    return [(idx, cyc_embed_matrix(x, M)) for idx, x in rs.roots]
