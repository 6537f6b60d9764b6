import itertools
import json
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nthroots import exact

ints = st.integers(-6, 6)


def square(n):
    return st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n).map(exact.as_matrix)


def leibniz(m):
    n = len(m)
    total = 0
    for p in itertools.permutations(range(n)):
        inv = sum(p[i] > p[j] for i in range(n) for j in range(i + 1, n))
        term = (-1) ** inv
        for i in range(n):
            term *= m[i][p[i]]
        total += term
    return total


@settings(max_examples=300)
@given(st.integers(1, 5).flatmap(square))
def test_det_matches_leibniz(m):
    assert exact.det(m) == leibniz(m)


@settings(max_examples=200)
@given(st.integers(1, 4).flatmap(square))
def test_inverse_and_adjugate(m):
    d = exact.det(m)
    n = len(m)
    adj = exact.adjugate(m)
    assert exact.matmul(m, adj) == exact.scale(d, exact.identity(n))
    if d == 0:
        with pytest.raises(exact.Singular):
            exact.rational_inverse(m)
        return
    inv = exact.rational_inverse(m)
    assert exact.matmul(m, inv) == exact.identity(n)
    res = exact.inverse_exact(m)
    assert (res.integral is not None) == (d in (1, -1))


def test_big_integers_stay_exact():
    m = ((10 ** 30 + 1, 10 ** 30), (1, 1))
    assert exact.det(m) == 1
    inv = exact.integer_inverse(m)
    assert exact.matmul(m, inv) == exact.identity(2)
    assert exact.matrix_to_json(m)[0][0] == str(10 ** 30 + 1)


def test_integer_inverse_rejects_non_unimodular():
    with pytest.raises(ValueError):
        exact.integer_inverse(((2, 0), (0, 1)))


def test_unimodular_and_zerofree():
    m = ((1, 1), (1, 2))
    assert exact.is_unimodular(m) and exact.is_zerofree(m)
    assert exact.concat_norm(m) == 2
    z = ((1, 0), (0, 1))
    assert exact.is_unimodular(z) and not exact.is_zerofree(z)
    # zero only in the inverse
    m2 = ((2, 1), (1, 1))
    assert exact.is_zerofree(m2)
    m3 = ((1, 1, 1), (1, 2, 1), (1, 1, 2))
    assert exact.has_zero(exact.integer_inverse(m3)) and not exact.is_zerofree(m3)


def test_profile_of_singular_and_rational():
    p = exact.profile(((1, 2), (2, 4)))
    assert p.determinant == 0 and not p.unimodular and p.concat_norm is None
    q = exact.profile(((2, 1), (1, 3)))
    assert q.determinant == 5 and q.concat_norm is None
    assert q.rational_concat_norm == 3


def test_numpy_cross_check():
    rng = np.random.default_rng(3)
    for _ in range(50):
        a = rng.integers(-5, 6, size=(4, 4))
        assert round(np.linalg.det(a)) == exact.det(a.tolist())


@pytest.mark.parametrize("text", ["1 2; 3 4", "1,2\n3,4", "[[1, 2], [3, 4]]", "  1 2 ;3 4;  "])
def test_parse_forms(text):
    assert exact.parse_matrix(text) == ((1, 2), (3, 4))


@pytest.mark.parametrize("text", ["", "1 2; 3", "1 x; 2 3", "[[1, 2], [3]]", "[[1.5]]", "[1, 2"])
def test_parse_errors(text):
    with pytest.raises(exact.MatrixParseError):
        exact.parse_matrix(text)


def test_format_roundtrip():
    m = ((-1, 6), (-2, 6))
    assert exact.parse_matrix(exact.format_matrix(m)) == m
    assert json.loads(json.dumps(exact.matrix_to_json(((Fraction(1, 2), 1), (2, 3))))) == [["1/2", 1], [2, 3]]


def test_dimension_errors():
    with pytest.raises(exact.DimensionMismatch):
        exact.as_matrix([[1, 2]])
    with pytest.raises(TypeError):
        exact.as_matrix([[1.0]])
    with pytest.raises(exact.DimensionMismatch):
        exact.matmul(((1, 2), (3, 4)), ((1,),))
