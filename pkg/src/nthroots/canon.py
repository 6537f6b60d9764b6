"""Canonical forms under the signed-permutation double action M -> P M Q.

Two total orders on same-size integer matrices are supported, both comparing
row-major flattenings entry by entry:

``Order.ROW_MAJOR``
    ordinary integer order (the orbit minimum puts the most negative
    entries first);
``Order.STRUCTURAL``
    1 < 2 < 3 < ... < 0 < -1 < -2 < ...; an integer x has key (0, |x|)
    when x > 0 and (1, |x|) otherwise.

Two canonicalization methods are available.  ``exhaustive`` scans all
(2**n n!)**2 group pairs.  ``reduced`` minimizes exactly over the left action
in closed form (every row independently picks its smaller sign, then rows are
sorted) and scans only the 2**n n! column actions.  Both return the same
matrix; the second is what makes n = 4 and n = 5 cheap.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator

from .exact import DimensionMismatch, IntMatrix, as_matrix


class TooLarge(ValueError):
    pass


class Order(enum.Enum):
    ROW_MAJOR = "row-major"
    STRUCTURAL = "structural"

    @classmethod
    def parse(cls, name) -> "Order":
        if isinstance(name, Order):
            return name
        aliases = {"row-major": cls.ROW_MAJOR, "rowmajor": cls.ROW_MAJOR, "row_major": cls.ROW_MAJOR,
                   "magma": cls.ROW_MAJOR, "lex": cls.ROW_MAJOR,
                   "structural": cls.STRUCTURAL, "mathematica": cls.STRUCTURAL}
        try:
            return aliases[str(name).lower()]
        except KeyError:
            raise ValueError(f"unknown order {name!r}; use 'row-major' or 'structural'") from None


def entry_key(x: int, order: Order):
    if order is Order.ROW_MAJOR:
        return x
    return (0, x) if x > 0 else (1, -x)


def row_key(row, order: Order) -> tuple:
    if order is Order.ROW_MAJOR:
        return tuple(row)
    return tuple((0, x) if x > 0 else (1, -x) for x in row)


def matrix_key(m, order: Order) -> tuple:
    """Sort key realizing ``order`` on matrices of one size."""
    return tuple(row_key(r, order) for r in m)


def _from_key(key, order: Order) -> IntMatrix:
    if order is Order.ROW_MAJOR:
        return tuple(tuple(r) for r in key)
    return tuple(tuple(v if s == 0 else -v for s, v in r) for r in key)


# -- the hyperoctahedral group ------------------------------------------------

@dataclass(frozen=True)
class SignedPerm:
    """Matrix with ``signs[i]`` at position ``(i, perm[i])`` and zeros elsewhere."""

    perm: tuple[int, ...]
    signs: tuple[int, ...]

    def __post_init__(self):
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @property
    def n(self) -> int:
        return len(self.perm)

    @classmethod
    def identity(cls, n: int) -> "SignedPerm":
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def from_matrix(cls, m) -> "SignedPerm":
        perm, signs = [], []
        for row in m:
            nz = [(j, e) for j, e in enumerate(row) if e]
            if len(nz) != 1 or nz[0][1] not in (1, -1):
                raise ValueError("not a signed permutation matrix")
            perm.append(nz[0][0])
            signs.append(nz[0][1])
        return cls(tuple(perm), tuple(signs))

    def matrix(self) -> IntMatrix:
        n = self.n
        return tuple(tuple(self.signs[i] if j == self.perm[i] else 0 for j in range(n)) for i in range(n))

    def compose(self, other: "SignedPerm") -> "SignedPerm":
        """Matrix product ``self @ other``."""
        perm = tuple(other.perm[self.perm[i]] for i in range(self.n))
        signs = tuple(self.signs[i] * other.signs[self.perm[i]] for i in range(self.n))
        return SignedPerm(perm, signs)

    def inverse(self) -> "SignedPerm":
        perm = [0] * self.n
        signs = [0] * self.n
        for i, (p, s) in enumerate(zip(self.perm, self.signs)):
            perm[p] = i
            signs[p] = s
        return SignedPerm(tuple(perm), tuple(signs))

    def __neg__(self):
        return SignedPerm(self.perm, tuple(-s for s in self.signs))

    def apply_left(self, m) -> IntMatrix:
        """``self @ m``: row i of the result is signs[i] * row perm[i] of m."""
        return tuple(tuple(s * e for e in m[p]) for p, s in zip(self.perm, self.signs))

    def apply_right(self, m) -> IntMatrix:
        """``m @ self``: column perm[k] of the result is signs[k] * column k of m."""
        n = self.n
        inv = [0] * n
        for k, p in enumerate(self.perm):
            inv[p] = k
        sg = [self.signs[inv[c]] for c in range(n)]
        return tuple(tuple(sg[c] * row[inv[c]] for c in range(n)) for row in m)


def iter_signed_perms(n: int) -> Iterator[SignedPerm]:
    for perm in itertools.permutations(range(n)):
        for signs in itertools.product((1, -1), repeat=n):
            yield SignedPerm(perm, signs)


def signed_perm_group(n: int) -> list[SignedPerm]:
    """All 2**n * n! signed permutations; refuses n > 5."""
    if n < 1:
        raise ValueError("n must be positive")
    if n > 5:
        raise TooLarge(f"hyperoctahedral group of degree {n} is too large to materialize; use iter_signed_perms")
    return list(iter_signed_perms(n))


def group_order(n: int) -> int:
    return 2 ** n * math.factorial(n)


def act(p: SignedPerm, q: SignedPerm, m) -> IntMatrix:
    m = as_matrix(m)
    if p.n != len(m) or q.n != len(m):
        raise DimensionMismatch("group element and matrix differ in size")
    return q.apply_right(p.apply_left(m))


def orbit(m) -> set:
    """The exact orbit {P m Q}; n <= 4."""
    m = as_matrix(m)
    n = len(m)
    if n > 4:
        raise TooLarge("orbit materialization is limited to n <= 4")
    out = set()
    group = signed_perm_group(n)
    for q in group:
        mq = q.apply_right(m)
        for p in group:
            out.add(p.apply_left(mq))
    return out


# -- canonical forms -----------------------------------------------------------

def _column_images(m) -> Iterator[tuple]:
    """Every ``m @ Q`` as a tuple of rows, Q over the column signed permutations."""
    n = len(m)
    sign_vectors = list(itertools.product((1, -1), repeat=n))
    for perm in itertools.permutations(range(n)):
        permuted = [tuple(row[k] for k in perm) for row in m]
        for signs in sign_vectors:
            yield [tuple(s * e for s, e in zip(signs, row)) for row in permuted]


def _left_reduced_key(rows, order: Order) -> tuple:
    keys = []
    for r in rows:
        a = row_key(r, order)
        b = row_key([-e for e in r], order)
        keys.append(a if a <= b else b)
    keys.sort()
    return tuple(keys)


def _canon_key_reduced(m, order: Order) -> tuple:
    best = None
    for rows in _column_images(m):
        k = _left_reduced_key(rows, order)
        if best is None or k < best:
            best = k
    return best


def _canon_key_exhaustive(m, order: Order) -> tuple:
    n = len(m)
    group = signed_perm_group(n)
    best = None
    for q in group:
        mq = q.apply_right(m)
        for p in group:
            k = matrix_key(p.apply_left(mq), order)
            if best is None or k < best:
                best = k
    return best


def canonicalize(m, order, method: str = "auto") -> IntMatrix:
    """Smallest matrix in the double-action orbit of ``m`` under ``order``.

    ``method`` is ``"exhaustive"`` (n <= 4), ``"reduced"`` (n <= 5) or
    ``"auto"`` (exhaustive for n <= 2, reduced otherwise).
    """
    order = Order.parse(order)
    m = as_matrix(m)
    n = len(m)
    if method == "auto":
        method = "exhaustive" if n <= 2 else "reduced"
    if method == "exhaustive":
        if n > 4:
            raise TooLarge("exhaustive canonicalization is limited to n <= 4")
        key = _canon_key_exhaustive(m, order)
    elif method == "reduced":
        if n > 5:
            raise TooLarge("canonicalization is limited to n <= 5")
        key = _canon_key_reduced(m, order)
    else:
        raise ValueError(f"unknown method {method!r}")
    return _from_key(key, order)


def equivalent(a, b, order=Order.STRUCTURAL) -> bool:
    """Whether ``b = P a Q`` for some signed permutation matrices P, Q."""
    a, b = as_matrix(a), as_matrix(b)
    if len(a) != len(b):
        raise DimensionMismatch("matrices differ in size")
    return canonicalize(a, order) == canonicalize(b, order)


def partition_classes(matrices: Iterable, order=Order.STRUCTURAL) -> list[tuple[IntMatrix, int]]:
    """Group by canonical form; ``[(canonical form, member count)]`` in ``order``."""
    order = Order.parse(order)
    counts: Counter = Counter()
    n = None
    for m in matrices:
        m = as_matrix(m)
        if n is None:
            n = len(m)
        elif len(m) != n:
            raise DimensionMismatch("matrices differ in size")
        counts[canonicalize(m, order)] += 1
    return sorted(counts.items(), key=lambda kv: matrix_key(kv[0], order))


def stabilizer_size(m) -> int:
    """Number of pairs (P, Q) with P m Q = m; n <= 4."""
    m = as_matrix(m)
    n = len(m)
    return group_order(n) ** 2 // len(orbit(m))


# -- stepwise elimination, as in a hand walk-through -----------------------------

def elimination_steps(candidates: Iterable, order, by: str = "entry") -> list[list[IntMatrix]]:
    """Successive survivor lists when keeping the minimum one position at a time.

    ``by="entry"`` narrows on each row-major entry in turn; ``by="row"``
    narrows on whole rows.  The first list holds every candidate (sorted); the
    last holds only the minimum.  Positions that do not narrow the survivors
    are skipped.
    """
    order = Order.parse(order)
    survivors = sorted(set(as_matrix(c) for c in candidates), key=lambda x: matrix_key(x, order))
    steps = [survivors]
    if not survivors:
        return steps
    n = len(survivors[0])
    if by == "entry":
        positions = [(lambda x, i=i, j=j: entry_key(x[i][j], order)) for i in range(n) for j in range(n)]
    elif by == "row":
        positions = [(lambda x, i=i: row_key(x[i], order)) for i in range(n)]
    else:
        raise ValueError("by must be 'entry' or 'row'")
    for pos in positions:
        if len(survivors) == 1:
            break
        best = min(pos(x) for x in survivors)
        narrowed = [x for x in survivors if pos(x) == best]
        if len(narrowed) < len(survivors):
            survivors = narrowed
            steps.append(survivors)
    return steps
