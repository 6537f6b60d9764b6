"""Search for unimodular zerofree matrices.

Problems solved here, for square integer M with det M = +-1 and no zero
entry in M or M^-1:

(i)   minimize the concatenated norm max|entry of (M  M^-1)|;
(ii)  given Lambda = diag(lambda_1 < ... < lambda_n), minimize max|entry of
      M Lambda M^-1| over M with entries bounded by ``m_bound``;
(iii) as (ii), also requiring M Lambda M^-1 to be zerofree.

Exhaustive enumeration works on *left-normalized* matrices: every row has a
positive first entry and rows are strictly increasing.  Signed row
permutations act freely on invertible zerofree matrices (rows are pairwise
independent), so each normalized matrix stands for exactly 2**n n! solutions.
Rows are chosen depth first.  Once n-1 rows are fixed, the cofactor vector c
of those rows is one column of +-M^-1, so it must be zerofree (and bounded in
problem (i)) with gcd 1, and the last row x must satisfy x . c = +-1.  The
cofactor vector is linear in the (n-1)-th row, which lets that level and the
last one run as integer matrix products.
"""

from __future__ import annotations

import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Iterator, Optional, Sequence

import numpy as np

from . import exact
from .canon import Order, canonicalize, group_order, matrix_key
from .exact import IntMatrix

WORKERS_ENV = "NTHROOTS_WORKERS"

PROBLEM_KINDS = ("i", "ii", "iii")


class NoSolutionWithinBound(LookupError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class FixtureCorrupt(ValueError):
    pass


@dataclass(frozen=True)
class ProblemSpec:
    kind: str
    n: int
    lam: Optional[tuple[int, ...]] = None
    m_bound: Optional[int] = None
    b_max: Optional[int] = None

    def __post_init__(self):
        if self.kind not in PROBLEM_KINDS:
            raise ValueError(f"problem kind must be one of {PROBLEM_KINDS}")
        if self.n < 2:
            raise ValueError("dimension must be at least 2")
        if self.kind != "i":
            if self.lam is None or self.m_bound is None:
                raise ValueError("problems (ii)/(iii) need lambda and m_bound")
            if len(self.lam) != self.n:
                raise ValueError("lambda length must equal the dimension")
            if any(x <= 0 for x in self.lam) or any(a >= b for a, b in zip(self.lam, self.lam[1:])):
                raise ValueError("lambda must be strictly increasing positive integers")
            if self.m_bound < 1:
                raise ValueError("m_bound must be >= 1")

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n,
                "lambda": list(self.lam) if self.lam else None,
                "m_bound": self.m_bound, "b_max": self.b_max}


@dataclass
class SearchReport:
    spec: ProblemSpec
    minimal_norm: Optional[int]
    count: int
    classes: list = field(default_factory=list)  # [(canonical form, count)]
    explored: int = 0
    runtime: float = 0.0
    seed: Optional[int] = None
    complete: bool = True
    order: Order = Order.STRUCTURAL
    # problem (i): left-normalized representatives; each expands 2**n n! ways
    representatives: tuple = ()
    # problems (ii)/(iii) and randomized search: explicit optimal matrices
    solutions: tuple = ()
    # problems (ii)/(iii): the distinct optimal products M diag(lam) M^-1
    products: tuple = ()
    # problems (ii)/(iii): number of optimal M (several M give one product)
    optimal_m: Optional[int] = None

    def iter_solutions(self) -> Iterator[IntMatrix]:
        if self.representatives:
            for rep in self.representatives:
                yield from expand_left(rep)
        else:
            yield from self.solutions

    def summary(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "minimal_norm": self.minimal_norm,
            "count": self.count,
            "classes": [{"canonical_form": exact.matrix_to_json(c), "count": k} for c, k in self.classes],
            "order": self.order.value,
            "explored": self.explored,
            "runtime": round(self.runtime, 3),
            "seed": self.seed,
            "complete": self.complete,
            **({"distinct_products": len(self.products)} if self.products else {}),
            **({"optimal_m": self.optimal_m} if self.optimal_m is not None else {}),
        }


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


# -- left-normalized enumeration ------------------------------------------------

@lru_cache(maxsize=None)
def normalized_rows(n: int, bound: int) -> tuple:
    vals = [v for v in range(-bound, bound + 1) if v]
    return tuple(sorted(r for r in product(vals, repeat=n) if r[0] > 0))


@lru_cache(maxsize=None)
def _row_array(n: int, bound: int) -> np.ndarray:
    return np.array(normalized_rows(n, bound), dtype=np.int64).reshape(-1, n)


def _cofactor_vector(rows: Sequence[Sequence[int]], n: int) -> list[int]:
    """Cofactors along a would-be last row: c with det(rows + [x]) == x . c."""
    return [(-1) ** (n - 1 + j) * exact.det(tuple(r[:j] + r[j + 1:] for r in rows)) for j in range(n)]


def _cofactor_map(prefix, n: int) -> list[list[int]]:
    """K with cofactor_vector(prefix + [x]) == x @ K."""
    units = [tuple(int(i == l) for i in range(n)) for l in range(n)]
    return [_cofactor_vector(list(prefix) + [u], n) for u in units]


def _hadamard(n: int, b: int) -> int:
    return math.isqrt(n ** n * b ** (2 * n)) + 1


@dataclass(frozen=True)
class _Job:
    n: int
    bound: int
    inverse_bound: Optional[int]


def _final_stage(job: _Job, prefix_idx: tuple, t_lo: int, t_hi: int):
    """Complete ``prefix`` with rows t < s, t in [t_lo, t_hi)."""
    n = job.n
    rows = normalized_rows(n, job.bound)
    X = _row_array(n, job.bound)
    prefix = [rows[i] for i in prefix_idx]
    K = _cofactor_map(prefix, n)
    explored = t_hi - t_lo
    if not any(any(r) for r in K):
        return [], explored
    # exact int64 products unless cofactors could overflow
    dtype = object if _hadamard(n - 1, job.bound) >= 2 ** 62 else np.int64
    X = X.astype(dtype)
    C = X[t_lo:t_hi] @ np.array(K, dtype=dtype)
    absC = np.abs(C)
    ok = np.all(absC > 0, axis=1)
    if job.inverse_bound is not None:
        ok &= np.all(absC <= job.inverse_bound, axis=1)
    found = []
    for off in np.nonzero(ok)[0]:
        c = [int(v) for v in C[off]]
        if math.gcd(*c) != 1:
            continue
        t = t_lo + int(off)
        tail = X[t + 1:] @ np.array(c, dtype=dtype)
        hits = np.nonzero(np.abs(tail) == 1)[0]
        explored += len(tail)
        for h in hits:
            s = t + 1 + int(h)
            m = tuple(prefix) + (rows[t], rows[s])
            d = int(tail[h])
            inv = exact.integer_inverse(m, d)
            if exact.has_zero(inv):
                continue
            if job.inverse_bound is not None and exact.norm(inv) > job.inverse_bound:
                continue
            found.append(m)
    return found, explored


def _dfs(job: _Job, prefix_idx: tuple, out: list) -> int:
    n = job.n
    R = len(normalized_rows(n, job.bound))
    if len(prefix_idx) == n - 2:
        lo = prefix_idx[-1] + 1 if prefix_idx else 0
        found, explored = _final_stage(job, prefix_idx, lo, R)
        out.extend(found)
        return explored
    explored = 0
    for j in range(prefix_idx[-1] + 1, R):
        explored += 1
        explored += _dfs(job, prefix_idx + (j,), out)
    return explored


def _branch(args):
    job, i0 = args
    out: list = []
    if job.n == 2:
        found, explored = _final_stage(job, (), i0, i0 + 1)
        return found, explored
    explored = 1 + _dfs(job, (i0,), out)
    return out, explored


def enumerate_normalized(n: int, entry_bound: int, inverse_bound: Optional[int] = None,
                         workers: Optional[int] = None) -> tuple[list[IntMatrix], int]:
    """Left-normalized unimodular zerofree matrices with entries in [-b, b] minus 0.

    ``inverse_bound`` additionally bounds the inverse's entries.  Returns
    ``(representatives, explored)``; representatives are sorted, so the result
    does not depend on ``workers``.
    """
    if n < 2:
        raise ValueError("dimension must be at least 2")
    workers = default_workers() if workers is None else max(1, workers)
    job = _Job(n, entry_bound, inverse_bound)
    R = len(normalized_rows(n, entry_bound))
    tasks = [(job, i0) for i0 in range(R)]
    if workers == 1 or R < 2:
        results = [_branch(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_branch, tasks, chunksize=max(1, R // (8 * workers))))
    reps = sorted(m for found, _ in results for m in found)
    return reps, sum(e for _, e in results)


def left_normalize(m) -> IntMatrix:
    """Representative of ``m`` under signed row permutations used by the search."""
    rows = [tuple(e if r[0] > 0 else -e for e in r) for r in m]
    return tuple(sorted(rows))


def expand_left(rep) -> Iterator[IntMatrix]:
    """All ``P @ rep`` for P a signed permutation matrix."""
    n = len(rep)
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            yield tuple(tuple(s * e for e in rep[p]) for p, s in zip(perm, signs))


def brute_force_problem_i(n: int, b: int) -> list[IntMatrix]:
    """Every unimodular zerofree matrix with all entries of M and M^-1 in [-b, b]; no pruning."""
    vals = [v for v in range(-b, b + 1) if v]
    out = []
    for flat in product(vals, repeat=n * n):
        m = tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))
        if exact.det(m) not in (1, -1):
            continue
        inv = exact.integer_inverse(m)
        if not exact.has_zero(inv) and exact.norm(inv) <= b:
            out.append(m)
    return out


# -- problem (i) -----------------------------------------------------------------

def _classes_from_reps(reps, n, order) -> list:
    weight = group_order(n)
    counts: dict = {}
    for rep in reps:
        c = canonicalize(rep, order)
        counts[c] = counts.get(c, 0) + weight
    return sorted(counts.items(), key=lambda kv: matrix_key(kv[0], order))


def exhaustive_problem_i(n: int, b_max: int = 3, order=Order.STRUCTURAL,
                         workers: Optional[int] = None, classes: bool = True) -> SearchReport:
    """Smallest b admitting unimodular zerofree M with ||(M M^-1)|| = b, and all such M."""
    if b_max < 1:
        raise ValueError("b_max must be >= 1")
    order = Order.parse(order)
    spec = ProblemSpec("i", n, b_max=b_max)
    start = time.perf_counter()
    explored = 0
    for b in range(1, b_max + 1):
        reps, e = enumerate_normalized(n, b, b, workers)
        explored += e
        if reps:
            cls = _classes_from_reps(reps, n, order) if classes else []
            return SearchReport(spec, b, len(reps) * group_order(n), cls, explored,
                                time.perf_counter() - start, order=order,
                                representatives=tuple(reps))
    report = SearchReport(spec, None, 0, [], explored, time.perf_counter() - start, order=order)
    raise NoSolutionWithinBound(f"no {n}x{n} unimodular zerofree matrix with concatenated norm <= {b_max}",
                                report)


# -- problems (ii) / (iii) ---------------------------------------------------------

def conjugate_diagonal(m: IntMatrix, lam: Sequence[int], inv: Optional[IntMatrix] = None) -> IntMatrix:
    """``m @ diag(lam) @ m^-1`` for unimodular ``m``."""
    if inv is None:
        inv = exact.integer_inverse(m)
    n = len(m)
    return tuple(tuple(sum(m[r][k] * lam[k] * inv[k][c] for k in range(n)) for c in range(n))
                 for r in range(n))


def exhaustive_problem_ii(lam: Sequence[int], m_bound: int = 3, zerofree_product: bool = False,
                          order=Order.STRUCTURAL, workers: Optional[int] = None) -> SearchReport:
    """Minimize ||M diag(lam) M^-1|| over unimodular zerofree M with |entries| <= m_bound.

    A solution is a distinct optimal product A = M diag(lam) M^-1, so ``count``
    and the class sizes count products.  Several M give the same A (at least
    the 2**n column-sign variants); ``optimal_m`` counts those and
    ``solutions`` lists them.  Minimality holds only relative to ``m_bound``,
    so the report is never marked complete.
    """
    lam = tuple(lam)
    order = Order.parse(order)
    spec = ProblemSpec("iii" if zerofree_product else "ii", len(lam), lam, m_bound)
    n = spec.n
    start = time.perf_counter()
    reps, explored = enumerate_normalized(n, m_bound, None, workers)
    best = None
    optima: list = []
    for rep in reps:
        for m in expand_left(rep):
            a = conjugate_diagonal(m, lam)
            if zerofree_product and exact.has_zero(a):
                continue
            nm = exact.norm(a)
            if best is None or nm < best:
                best, optima = nm, [(m, a)]
            elif nm == best:
                optima.append((m, a))
    if best is None:
        report = SearchReport(spec, None, 0, [], explored, time.perf_counter() - start,
                              complete=False, order=order)
        raise NoSolutionWithinBound(f"no admissible M with entries bounded by {m_bound}", report)
    optima.sort()
    products = sorted({a for _, a in optima})
    counts: dict = {}
    for a in products:
        c = canonicalize(a, order)
        counts[c] = counts.get(c, 0) + 1
    cls = sorted(counts.items(), key=lambda kv: matrix_key(kv[0], order))
    return SearchReport(spec, best, len(products), cls, explored, time.perf_counter() - start,
                        complete=False, order=order,
                        solutions=tuple(m for m, _ in optima),
                        products=tuple(products), optimal_m=len(optima))


# -- randomized search ----------------------------------------------------------------

def random_unimodular(n: int, steps: int, seed, multiplier: int = 3,
                      swap_prob: float = 0.1, flip_prob: float = 0.1) -> IntMatrix:
    """Identity transformed by ``steps`` random elementary row/column operations.

    Each step adds k times one row (or column) to another with k drawn from
    [-multiplier, multiplier] minus 0; with the given probabilities it swaps or
    negates instead.  Deterministic in ``seed``.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    m = [[int(i == j) for j in range(n)] for i in range(n)]
    mults = [k for k in range(-multiplier, multiplier + 1) if k]
    for _ in range(steps):
        u = rng.random()
        on_rows = rng.random() < 0.5
        if u < flip_prob or n == 1:
            i = rng.randrange(n)
            if on_rows:
                m[i] = [-e for e in m[i]]
            else:
                for row in m:
                    row[i] = -row[i]
            continue
        i, j = rng.sample(range(n), 2)
        if u < flip_prob + swap_prob:
            if on_rows:
                m[i], m[j] = m[j], m[i]
            else:
                for row in m:
                    row[i], row[j] = row[j], row[i]
            continue
        k = rng.choice(mults)
        if on_rows:
            m[j] = [a + k * b for a, b in zip(m[j], m[i])]
        else:
            for row in m:
                row[j] += k * row[i]
    return tuple(tuple(r) for r in m)


def _elementary(m, inv, kind, i, j, k):
    # kind 0: row_j += k row_i, so inv loses k * (col j) from col i
    # kind 1: col_j += k col_i, so inv loses k * (row j) from row i
    m = [list(r) for r in m]
    inv = [list(r) for r in inv]
    if kind == 0:
        m[j] = [a + k * b for a, b in zip(m[j], m[i])]
        for r in inv:
            r[i] -= k * r[j]
    else:
        for r in m:
            r[j] += k * r[i]
        inv[i] = [a - k * b for a, b in zip(inv[i], inv[j])]
    return m, inv


def _score(m, inv):
    zeros = sum(e == 0 for r in m for e in r) + sum(e == 0 for r in inv for e in r)
    big = max(max(abs(e) for r in m for e in r), max(abs(e) for r in inv for e in r))
    total = sum(abs(e) for r in m for e in r) + sum(abs(e) for r in inv for e in r)
    return zeros, big, total


def descend(m, rng: random.Random, max_moves: int = 5000):
    """First-improvement descent over +-1 elementary moves.

    Minimizes (zero count of M and M^-1, concatenated norm, entry mass);
    every move preserves unimodularity.
    """
    n = len(m)
    inv = exact.integer_inverse(m)
    cur = _score(m, inv)
    moves = [(kind, i, j, k) for kind in (0, 1) for i in range(n) for j in range(n) if i != j
             for k in (1, -1)]
    for _ in range(max_moves):
        rng.shuffle(moves)
        for mv in moves:
            m2, inv2 = _elementary(m, inv, *mv)
            s = _score(m2, inv2)
            if s < cur:
                m, inv, cur = m2, inv2, s
                break
        else:
            break
    return tuple(tuple(r) for r in m)


def _iteration_rng(seed, i: int) -> random.Random:
    return random.Random(f"{seed}:{i}")


def randomized_zerofree_search(n: int, budget: int, seed: int = 0, target_norm: Optional[int] = None,
                               steps: Optional[int] = None, use_descent: bool = True,
                               max_witnesses: int = 10, state: Optional[dict] = None,
                               checkpoint=None, checkpoint_every: int = 100) -> SearchReport:
    """Sample random unimodular matrices and keep the zerofree ones of least concatenated norm.

    Iteration i draws from its own generator seeded by ``(seed, i)``, so a run
    resumed from a checkpoint ``state`` produces the same result as an
    uninterrupted one.  ``checkpoint`` is a callable receiving the state dict.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if steps is None:
        steps = 3 * n
    spec = ProblemSpec("i", n)
    start = time.perf_counter()
    done = 0
    best = None
    witnesses: list = []
    if state:
        if state.get("seed") != seed:
            raise ValueError("checkpoint was written for a different seed")
        done = state["iterations_done"]
        best = state["best_norm"]
        witnesses = [exact.as_matrix(w) for w in state["witnesses"]]
    found_target = target_norm is not None and best is not None and best <= target_norm
    i = done
    while i < budget and not found_target:
        rng = _iteration_rng(seed, i)
        m = random_unimodular(n, steps, rng)
        if use_descent:
            m = descend(m, rng)
        i += 1
        p = exact.profile(m)
        if p.zerofree and p.unimodular:
            if best is None or p.concat_norm < best:
                best, witnesses = p.concat_norm, [m]
            elif p.concat_norm == best and m not in witnesses and len(witnesses) < max_witnesses:
                witnesses.append(m)
            if target_norm is not None and best <= target_norm:
                found_target = True
        if checkpoint is not None and (i % checkpoint_every == 0 or i == budget or found_target):
            checkpoint(search_state(seed, i, best, witnesses))
    for w in witnesses:
        p = exact.profile(w)
        assert p.unimodular and p.zerofree and p.concat_norm == best
    return SearchReport(spec, best, len(witnesses), [], i - done, time.perf_counter() - start,
                        seed=seed, complete=False, solutions=tuple(witnesses))


def search_state(seed, iterations_done, best_norm, witnesses) -> dict:
    return {"seed": seed, "iterations_done": iterations_done, "best_norm": best_norm,
            "witnesses": [exact.matrix_to_json(w) for w in witnesses]}


# -- published catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    name: str
    matrix: IntMatrix
    inverse: IntMatrix
    profile: exact.MatrixProfile
    product_is_identity: bool


def verify_catalog(pairs) -> list[CatalogEntry]:
    """Check (name, M, M^-1) triples: M M^-1 = I, unimodular, zerofree."""
    out = []
    for name, m, inv in pairs:
        m, inv = exact.as_matrix(m), exact.as_matrix(inv)
        prof = exact.profile(m)
        ident = exact.matmul(m, inv) == exact.identity(len(m))
        if not (ident and prof.unimodular and prof.zerofree and not exact.has_zero(inv)):
            raise FixtureCorrupt(f"catalog entry {name!r} fails: identity={ident}, "
                                 f"unimodular={prof.unimodular}, zerofree={prof.zerofree}")
        out.append(CatalogEntry(name, m, inv, prof, ident))
    return out
