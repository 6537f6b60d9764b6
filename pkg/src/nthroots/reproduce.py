"""Checklist that recomputes every published matrix, count and canonical form.

Each check reads its expected values from a fixture file (the bundled
``data/published_values.json`` by default) and recomputes them from scratch.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from . import exact, roots, search
from .canon import Order, SignedPerm, act, canonicalize, elimination_steps, equivalent, orbit
from .cyclotomic import cyc_field, imag_unit, matrix_approx, matrix_as_rational, matrix_is_real, sqrt3


def load_fixtures(path: Optional[str] = None) -> dict:
    if path is None:
        text = resources.files("nthroots").joinpath("data/published_values.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    return json.loads(text)


def _m(x):
    return exact.as_matrix(x)


class CheckFailed(AssertionError):
    pass


def _expect(cond, message):
    if not cond:
        raise CheckFailed(message)


@dataclass(frozen=True)
class Check:
    name: str
    func: Callable[[dict], str]
    slow: bool = False


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def x_5_3_2_radical() -> list[list[float]]:
    """Entries of the quintic real root as printed in closed radical form."""
    r5 = math.sqrt(5)
    r = math.sqrt(30 - 6 * r5)
    return [[(-1 - r5 + r) / 4, (1 + r5) / 2],
            [(1 - r5) / 2, (1 + r5 + r) / 4]]


def _as_int_rows(x):
    return tuple(tuple(row) for row in x)


# -- individual checks -----------------------------------------------------------

def check_cube_roots(fx):
    rs = roots.odd_c_roots(3)
    _expect(len(rs) == 9, f"expected 9 cube roots, got {len(rs)}")
    real = {_as_int_rows(x) for x in roots.real_roots(rs)}
    want = {_m(v) for v in fx["odd_c_real_cube_roots"].values()}
    _expect(real == want, f"real cube roots {sorted(real)} != {sorted(want)}")
    for key, v in fx["odd_c_real_cube_roots"].items():
        idx = tuple(int(t) for t in key.split(","))
        got = matrix_as_rational(rs.get(idx))
        _expect(got == _m(v), f"X(3,{key}) = {got}, expected {v}")
    _expect(exact.matpow(_m(fx["C"]), 3) == _m(fx["C_cubed"]), "C**3 mismatch")
    return "9 roots, 3 real, all verified"


def check_root_of_unity_relation(fx):
    rs = roots.odd_c_roots(3)
    w2 = rs.field.root_of_unity(3, 2)
    lhs = rs.get((1, 0))
    rhs = tuple(tuple(w2 * e for e in row) for row in rs.get((2, 1)))
    _expect(lhs == rhs, "X(3,1,0) != w**2 X(3,2,1)")
    _expect(not matrix_is_real(lhs), "X(3,1,0) should have nonreal entries")
    return "X(3,1,0) = w^2 X(3,2,1)"


def check_quintic(fx):
    rs = roots.odd_c_roots(5)
    _expect(len(rs) == 25, f"expected 25 roots, got {len(rs)}")
    _expect(len(rs.real_subset) == 5, f"expected 5 real roots, got {len(rs.real_subset)}")
    c = rs.get((1, 4))
    _expect(matrix_as_rational(c) == _m(fx["C"]), "X(5,1,4) != C")
    want = x_5_3_2_radical()
    got = matrix_approx(rs.get((3, 2)))
    bad = [(i, j, got[i][j].real, want[i][j]) for i in range(2) for j in range(2)
           if abs(got[i][j] - want[i][j]) > 1e-9]
    _expect(not bad, "X(5,3,2) differs from the printed radical form at "
            + ", ".join(f"({i + 1},{j + 1}): computed {g:.12f}, printed {w:.12f}" for i, j, g, w in bad))
    return "25 roots, 5 real, X(5,1,4) = C, X(5,3,2) matches radicals"


def check_b_case(fx):
    b = _m(fx["B"])
    _expect(exact.matpow(b, 4) == _m(fx["B_fourth"]), "B**4 mismatch")
    spec = roots.integer_spectrum(b)
    _expect(spec.eigenvalues == (2, 3), f"eigenvalues {spec.eigenvalues}")
    vecs = tuple(exact.transpose(spec.eigenvectors))
    _expect(vecs == tuple(tuple(v) for v in fx["B_eigenvectors"]), f"eigenvectors {vecs}")
    rs = roots.enumerate_roots(spec, 4, base=b)
    _expect(len(rs) == 16, f"expected 16 roots, got {len(rs)}")
    real = [_as_int_rows(x) for x in roots.real_roots(rs)]
    _expect(len(real) == 4, f"expected 4 real roots, got {len(real)}")
    for v in fx["B_real_fourth_roots"]:
        _expect(_m(v) in real, f"{v} missing from real roots")
    i = imag_unit(rs.field)
    for key, v in fx["B_complex_fourth_roots"].items():
        idx = tuple(int(t) for t in key.split(","))
        want = tuple(tuple(re + im * i for re, im in row) for row in v)
        _expect(rs.get(idx) == want, f"X(4,{key}) mismatch")
    return "16 roots, 4 real, eigen-data as printed"


def check_even_family(fx):
    c = _m(fx["C"])
    _expect(exact.matpow(c, 2) == ((-3, 0), (0, -3)), "C**2 != -3I")
    K = cyc_field(12)
    s = imag_unit(K) * sqrt3(K)
    y1 = roots.even_family(2, -s, 2)
    _expect(y1 == ((-s, K.zero()), (s, s)), "Y(2,-i sqrt3,2) mismatch")
    y2 = matrix_as_rational(roots.even_family(2, 0, -s))
    printed = ((0, -3), (1, 0))
    if y2 != printed:
        flipped = matrix_as_rational(roots.even_family(2, 0, s))
        note = "; the printed matrix is Y(2,0,+i sqrt3)" if flipped == printed else ""
        raise CheckFailed(f"Y(2,0,-i sqrt3) = {exact.format_matrix(y2)}, printed "
                          f"{exact.format_matrix(printed)}{note}; both square to -3I")
    return "C^2 = -3I and both printed Y(2,u,v) reproduced"


def check_three_by_three(fx):
    m, minv = _m(fx["M3"]), _m(fx["M3_inverse"])
    _expect(exact.integer_inverse(m) == minv, "M3 inverse mismatch")
    a = search.conjugate_diagonal(m, (1, 2, 3))
    _expect(a == _m(fx["A3"]), f"M diag(1,2,3) M^-1 = {a}")
    rs = roots.roots_of_power(a, 4)
    real = [_as_int_rows(x) for x in roots.real_roots(rs)]
    for v in fx["A3_real_fourth_roots"]:
        _expect(_m(v) in real, f"{v} missing from real fourth roots")
    z = exact.profile(_m(fx["Z"]))
    _expect(z.unimodular and not z.zerofree, "Z should be unimodular but not zerofree")
    _expect(exact.integer_inverse(_m(fx["Z"])) == _m(fx["Z_inverse"]), "Z inverse mismatch")
    return f"A3 reproduced; {len(real)} real fourth roots contain the printed four"


def check_problem_i_2(fx):
    r = search.exhaustive_problem_i(2)
    _expect(r.minimal_norm == 2, f"minimal norm {r.minimal_norm}")
    _expect(any(c == canonicalize(_m(fx["M2"]), Order.STRUCTURAL) for c, _ in r.classes),
            "(1,1;1,2) not among optimal classes")
    _expect(exact.det(_m(fx["M2"])) == 1, "det M2 != 1")
    _expect(exact.integer_inverse(_m(fx["M2"])) == _m(fx["M2_inverse"]), "M2 inverse mismatch")
    return f"norm 2, {r.count} solutions"


def check_problem_i_3(fx):
    r = search.exhaustive_problem_i(3)
    want = fx["counts"]["problem_i_n3"]
    _expect(r.minimal_norm == 3 and r.count == want, f"norm {r.minimal_norm}, count {r.count}")
    _expect(len(r.classes) == 1 and r.classes[0][0] == _m(fx["M3"]),
            f"classes {r.classes}")
    return f"norm 3, {r.count} solutions, one class"


def check_problem_i_4(fx):
    r = search.exhaustive_problem_i(4, workers=search.default_workers())
    want = fx["counts"]["problem_i_n4"]
    _expect(r.minimal_norm == 2 and r.count == want, f"norm {r.minimal_norm}, count {r.count}")
    got = {c: k for c, k in r.classes}
    for name in ("M4", "M4_tilde"):
        _expect(canonicalize(_m(fx[name]), Order.STRUCTURAL) in got, f"{name} class missing")
    half = fx["counts"]["problem_i_n4_class"]
    _expect(len(got) == 2 and all(k == half for k in got.values()),
            "class sizes " + ", ".join(str(k) for k in got.values()) + f"; expected two classes of {half}")
    return f"norm 2, {r.count} solutions, two classes of {half}"


def check_problem_ii(fx):
    r = search.exhaustive_problem_ii((2, 3), 3)
    _expect(r.minimal_norm == 4, f"minimal norm {r.minimal_norm}")
    reps = [c for c, _ in r.classes]
    for name in ("A", "A_tilde"):
        _expect(any(equivalent(_m(fx[name]), c) for c in reps), f"{name} not represented")
    want, per = fx["counts"]["problem_ii_2_3"], fx["counts"]["problem_ii_2_3_class"]
    sizes = [k for _, k in r.classes]
    _expect(r.count == want and sizes == [per, per],
            f"{r.count} distinct products in classes {'+'.join(map(str, sizes))}, expected {want} "
            f"in {per}+{per}; the optimal M number {r.optimal_m}")
    return f"norm 4, {r.count} products, classes {per}+{per}"


def check_problem_ii_iii(fx):
    r2 = search.exhaustive_problem_ii((1, 2), 3, zerofree_product=False)
    _expect(r2.minimal_norm == 3 and _m(fx["problem_ii_1_2_product"]) in r2.products,
            f"(ii) norm {r2.minimal_norm}")
    r3 = search.exhaustive_problem_ii((1, 2), 3, zerofree_product=True)
    _expect(r3.minimal_norm == 4 and _m(fx["problem_iii_1_2_product"]) in r3.products,
            f"(iii) norm {r3.minimal_norm}")
    _expect(_m(fx["problem_iii_witness_M"]) in r3.solutions, "(1,2;1,3) not an optimal M for (iii)")
    return "(ii) minimum 3, (iii) minimum 4, printed witnesses present"


def check_canonical_2x2(fx):
    for order, table in ((Order.ROW_MAJOR, fx["canonical_row_major"]),
                         (Order.STRUCTURAL, fx["canonical_structural"])):
        for name in ("A", "A_tilde"):
            got = canonicalize(_m(fx[name]), order)
            _expect(got == _m(table[name]), f"{order.value} canon({name}) = {got}")
    _expect(not equivalent(_m(fx["A"]), _m(fx["A_tilde"])), "A and A~ reported equivalent")
    p, q = SignedPerm.from_matrix(fx["P"]), SignedPerm.from_matrix(fx["Q"])
    _expect(act(p, q, _m(fx["M2"])) == _m(fx["M2_tilde"]), "P M Q != M~")
    _expect(act(-p, -q, _m(fx["M2"])) == _m(fx["M2_tilde"]), "(-P) M (-Q) != M~")
    return "both orders reproduce the printed canonical forms"


def check_fixed_points(fx):
    for name in ("M3", "M4"):
        _expect(canonicalize(_m(fx[name]), Order.STRUCTURAL) == _m(fx[name]), f"canon({name}) != {name}")
    got = canonicalize(_m(fx["M4_tilde"]), Order.STRUCTURAL)
    _expect(got == _m(fx["canonical_structural"]["M4_tilde"]), f"canon(M4~) = {got}")
    for name in ("M4", "M4_tilde"):
        got = canonicalize(_m(fx[name]), Order.ROW_MAJOR)
        _expect(got == _m(fx["canonical_row_major"][name]), f"row-major canon({name}) = {got}")
    p4 = exact.profile(_m(fx["M4"]))
    _expect(p4.concat_norm == 2 and p4.zerofree, "M4 should be zerofree with concatenated norm 2")
    for name in ("M4", "M4_tilde"):
        _expect(exact.integer_inverse(_m(fx[name])) == _m(fx[name + "_inverse"]), f"{name} inverse mismatch")
    return "M3, M4 are their own structural canonical forms"


def check_appendix(fx):
    ap = fx["appendix"]
    for name, first_order, corner in (("A", Order.ROW_MAJOR, -4), ("A_tilde", Order.ROW_MAJOR, -4),
                                      ("A", Order.STRUCTURAL, 1), ("A_tilde", Order.STRUCTURAL, 1)):
        orb = orbit(_m(fx[name]))
        _expect(len(orb) == 32, f"|orbit({name})| = {len(orb)}")
        members = [x for x in orb if x[0][0] == corner]
        tag = "minus4" if corner == -4 else "one"
        want = {_m(v) for v in ap[f"{name}_{tag}_corner"]}
        _expect(set(members) == want, f"{name} corner {corner} members differ")
        by = "row" if first_order is Order.ROW_MAJOR else "entry"
        steps = elimination_steps(members, first_order, by=by)
        _expect({*steps[1]} == {_m(v) for v in ap[f"{name}_{tag}_kept"]}, f"{name} first elimination differs")
        _expect(steps[-1][0] == canonicalize(_m(fx[name]), first_order), f"{name} last survivor differs")
    return "orbit sizes, corner filters and eliminations match"


def check_catalog(fx):
    entries = search.verify_catalog([(c["name"], c["matrix"], c["inverse"]) for c in fx["catalog"]])
    norms = [e.profile.concat_norm for e in entries]
    _expect(norms == fx["catalog_concat_norms"], f"concatenated norms {norms}")
    return "all pairs unimodular, zerofree, inverse; norms " + ", ".join(map(str, norms))


CHECKS = [
    Check("cube roots of C^3", check_cube_roots),
    Check("root-of-unity relation X(3,1,0) = w^2 X(3,2,1)", check_root_of_unity_relation),
    Check("quintic roots of C^5", check_quintic),
    Check("fourth roots of B^4", check_b_case),
    Check("even family Y(n,u,v)", check_even_family),
    Check("3x3 construction and fourth roots", check_three_by_three),
    Check("problem (i), n=2", check_problem_i_2),
    Check("problem (i), n=3", check_problem_i_3),
    Check("problem (i), n=4", check_problem_i_4, slow=True),
    Check("problem (ii), lambda=(2,3)", check_problem_ii),
    Check("problems (ii)/(iii), lambda=(1,2)", check_problem_ii_iii),
    Check("canonical forms of A and A~", check_canonical_2x2),
    Check("canonical fixed points", check_fixed_points),
    Check("appendix walkthrough", check_appendix),
    Check("5x5 and 6x6 catalog", check_catalog),
]


def run_checks(fixtures: Optional[dict] = None, slow: bool = False) -> list[CheckResult]:
    fx = load_fixtures() if fixtures is None else fixtures
    out = []
    for chk in CHECKS:
        if chk.slow and not slow:
            continue
        start = time.perf_counter()
        try:
            detail = chk.func(fx)
            passed = True
        except Exception as exc:  # any failure, including a malformed fixture, fails the item
            detail = f"{type(exc).__name__}: {exc}"
            passed = False
        out.append(CheckResult(chk.name, passed, detail, time.perf_counter() - start))
    return out
