"""Exact integer and rational matrix arithmetic.

Matrices are plain tuples of row tuples.  Integer matrices hold Python ints
(arbitrary precision), rational matrices hold :class:`fractions.Fraction`.
Everything here is a pure function over immutable values.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]


class Singular(ArithmeticError):
    pass


class DimensionMismatch(ValueError):
    pass


class MatrixParseError(ValueError):
    pass


def as_matrix(rows) -> IntMatrix:
    """Validate ``rows`` as a square integer matrix and freeze it."""
    rows = tuple(tuple(r) for r in rows)
    n = len(rows)
    if n == 0:
        raise DimensionMismatch("empty matrix")
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch(f"matrix is not square: row of length {len(r)} in {n}x{n}")
        for e in r:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"entry {e!r} is not an integer")
    return rows


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def diag(values: Sequence) -> tuple:
    n = len(values)
    return tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n))


def transpose(m):
    return tuple(zip(*m))


def matmul(a, b):
    if len(a[0]) != len(b):
        raise DimensionMismatch(f"cannot multiply {len(a)}x{len(a[0])} by {len(b)}x{len(b[0])}")
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def matpow(a, k: int):
    """``a**k`` by repeated squaring; ``k >= 0``."""
    if k < 0:
        raise ValueError("negative exponent")
    result = None
    base = a
    while k:
        if k & 1:
            result = base if result is None else matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return identity(len(a)) if result is None else result


def scale(c, m):
    return tuple(tuple(c * e for e in row) for row in m)


def norm(m) -> int:
    """Largest absolute entry."""
    return max(abs(e) for row in m for e in row)


def has_zero(m) -> bool:
    return any(e == 0 for row in m for e in row)


def det(m: IntMatrix) -> int:
    """Exact determinant by Bareiss fraction-free elimination."""
    n = len(m)
    a = [list(r) for r in m]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


def rational_inverse(m) -> RatMatrix:
    """Gauss-Jordan inverse over the rationals."""
    n = len(m)
    a = [[Fraction(e) for e in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            raise Singular("matrix is singular")
        a[col], a[pivot] = a[pivot], a[col]
        p = a[col][col]
        a[col] = [e / p for e in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(tuple(row[n:]) for row in a)


class Inverse(NamedTuple):
    rational: RatMatrix
    integral: Optional[IntMatrix]  # set only when the matrix is unimodular


def inverse_exact(m: IntMatrix) -> Inverse:
    d = det(m)
    if d == 0:
        raise Singular("matrix is singular")
    if d in (1, -1):
        inv = integer_inverse(m, d)
        return Inverse(tuple(tuple(Fraction(e) for e in row) for row in inv), inv)
    return Inverse(rational_inverse(m), None)


def adjugate(m: IntMatrix) -> IntMatrix:
    n = len(m)
    if n == 1:
        return ((1,),)
    cof = [[(-1) ** (i + j) * det(_minor(m, i, j)) for j in range(n)] for i in range(n)]
    return tuple(tuple(cof[j][i] for j in range(n)) for i in range(n))


def integer_inverse(m: IntMatrix, d: Optional[int] = None) -> IntMatrix:
    """Inverse of a unimodular matrix as an integer matrix."""
    if d is None:
        d = det(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det = {d})")
    return scale(d, adjugate(m))


def _minor(m, i, j):
    return tuple(r[:j] + r[j + 1:] for k, r in enumerate(m) if k != i)


def is_unimodular(m: IntMatrix) -> bool:
    return det(m) in (1, -1)


def is_zerofree(m: IntMatrix) -> bool:
    """Invertible with no zero entry in ``m`` or its inverse."""
    if has_zero(m):
        return False
    try:
        inv = inverse_exact(m).rational
    except Singular:
        return False
    return not has_zero(inv)


def concat_norm(m: IntMatrix) -> int:
    """Max absolute entry of the n x 2n block ``(m  m^-1)`` for unimodular ``m``."""
    return max(norm(m), norm(integer_inverse(m)))


@dataclass(frozen=True)
class MatrixProfile:
    determinant: int
    unimodular: bool
    zerofree: bool
    norm: int
    concat_norm: Optional[int]
    rational_concat_norm: Optional[Fraction] = None


def profile(m: IntMatrix) -> MatrixProfile:
    m = as_matrix(m)
    d = det(m)
    nm = norm(m)
    if d == 0:
        return MatrixProfile(d, False, False, nm, None)
    inv = inverse_exact(m)
    zerofree = not has_zero(m) and not has_zero(inv.rational)
    if inv.integral is not None:
        return MatrixProfile(d, True, zerofree, nm, max(nm, norm(inv.integral)))
    return MatrixProfile(d, False, zerofree, nm, None, max(Fraction(nm), norm(inv.rational)))


# -- text / json forms -------------------------------------------------------

def parse_matrix(text: str) -> IntMatrix:
    """Parse ``"a b; c d"`` (rows by ``;`` or newline) or a JSON array of arrays."""
    text = text.strip()
    if not text:
        raise MatrixParseError("empty matrix text")
    if text.startswith("["):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MatrixParseError(f"bad JSON matrix: {exc}") from None
        return _check_parsed([[_parse_int(e) for e in row] for row in data])
    rows = [r for r in text.replace("\n", ";").split(";") if r.strip()]
    return _check_parsed([[_parse_int(tok) for tok in r.replace(",", " ").split()] for r in rows])


def _parse_int(tok) -> int:
    if isinstance(tok, bool):
        raise MatrixParseError(f"not an integer: {tok!r}")
    if isinstance(tok, int):
        return tok
    try:
        return int(str(tok))
    except ValueError:
        raise MatrixParseError(f"not an integer: {tok!r}") from None


def _check_parsed(rows) -> IntMatrix:
    try:
        return as_matrix(rows)
    except (DimensionMismatch, TypeError) as exc:
        raise MatrixParseError(str(exc)) from None


def format_matrix(m) -> str:
    """Inline ``"a b; c d"`` form, the inverse of :func:`parse_matrix`."""
    return "; ".join(" ".join(str(e) for e in row) for row in m)


def matrix_to_json(m) -> list:
    """Array-of-arrays; integers too large for doubles become strings."""
    out = []
    for row in m:
        r = []
        for e in row:
            if isinstance(e, Fraction):
                r.append(str(e) if e.denominator != 1 else _json_int(e.numerator))
            else:
                r.append(_json_int(e))
        out.append(r)
    return out


def _json_int(x: int):
    return x if abs(x) < 2 ** 53 else str(x)
