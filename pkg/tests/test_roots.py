import itertools
import random

import numpy as np
import pytest

from nthroots import exact, roots
from nthroots.cyclotomic import cyc_embed_matrix, cyc_field, matrix_approx


def np_charpoly(a):
    return [int(round(c)) for c in np.poly(np.array(a, dtype=float))[::-1]]


def test_characteristic_polynomial_against_numpy():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 4)
        a = tuple(tuple(rng.randint(-4, 4) for _ in range(n)) for _ in range(n))
        assert roots.characteristic_polynomial(a) == np_charpoly(a)


def test_integer_roots():
    # (x - 2)^2 (x + 3) x
    assert roots.integer_roots([0, 12, -8, -1, 1]) == {0: 1, 2: 2, -3: 1}
    assert roots.integer_roots([1, 0, 1]) == {}


def test_integer_spectrum_and_errors():
    spec = roots.integer_spectrum(((-1, 6), (-2, 6)))
    assert spec.eigenvalues == (2, 3)
    with pytest.raises(roots.NonIntegerSpectrum):
        roots.integer_spectrum(roots.C)
    with pytest.raises(roots.RepeatedEigenvalue):
        roots.integer_spectrum(((1, 1), (0, 1)))
    with pytest.raises(roots.RepeatedEigenvalue):
        roots.roots_of_power(((1, 1), (1, 1)), 2)  # eigenvalue 0
    with pytest.raises(roots.RepeatedEigenvalue):
        roots.roots_of_power(((1, 0), (0, -1)), 2)  # 1 and -1 share a square


def _random_integer_spectrum_matrix(rng, n):
    while True:
        p = tuple(tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(n))
        if exact.det(p) in (1, -1):
            break
    lam = rng.sample([1, 2, 3, 4, 5, -7], n)
    return exact.matmul(exact.matmul(p, exact.diag(lam)), exact.integer_inverse(p))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_root_verifies(n):
    rng = random.Random(n)
    for _ in range(5):
        a = _random_integer_spectrum_matrix(rng, rng.choice((2, 3)))
        rs = roots.roots_of_power(a, n)
        assert len(rs) == n ** len(a)
        assert rs.get((0,) * len(a)) == tuple(tuple(rs.field.rational(e) for e in r) for r in a)
        # verification was exhaustive; redo a numeric spot check independently
        an = np.linalg.matrix_power(np.array(a, dtype=float), n)
        for _, x in rs.roots:
            xn = np.linalg.matrix_power(np.array(matrix_approx(x)), n)
            assert np.allclose(xn, an, rtol=1e-9, atol=1e-6)


def test_omega_shift_symmetry():
    rs = roots.roots_of_power(((-1, 6), (-2, 6)), 4)
    w = rs.field.root_of_unity(4)
    members = {x for _, x in rs.roots}
    for idx, x in rs.roots:
        shifted = tuple(tuple(w * e for e in row) for row in x)
        assert shifted in members
        assert shifted == rs.get(tuple((j + 1) % 4 for j in idx))


@pytest.mark.parametrize("n", [3, 5, 7])
def test_odd_c_real_count(n):
    rs = roots.odd_c_roots(n)
    assert len(rs) == n * n and len(rs.real_subset) == n


@pytest.mark.parametrize("n", [3, 5])
def test_closed_form_matches_eigen_construction(n):
    a = {x for _, x in roots.odd_c_roots(n).roots}
    b = {x for _, x in roots.c_eigen_roots(n).roots}
    assert a == b


def test_parity_and_v_errors():
    with pytest.raises(roots.BadParity):
        roots.odd_c_roots(4)
    with pytest.raises(roots.BadParity):
        roots.even_family(3, 0, 1)
    with pytest.raises(roots.ZeroV):
        roots.even_family(2, 1, 0)
    with pytest.raises(roots.ZeroV):
        roots.even_family(2, 1, cyc_field(12).zero())


def test_even_family_over_larger_fields():
    K = cyc_field(7)
    y = roots.even_family(4, K.zeta(), K.zeta(3) + 2)
    assert y[0][0].field.N % 7 == 0


def test_rootset_json_and_embedding():
    rs = roots.odd_c_roots(3)
    data = rs.to_json()
    assert data["n"] == 3 and len(data["roots"]) == 9
    assert sum(r["is_real"] for r in data["roots"]) == 3
    big = roots.embed_rootset(rs, rs.field.N * 2)
    for (_, x), (_, y) in zip(rs.roots, big):
        assert cyc_embed_matrix(x, rs.field.N * 2) == y
