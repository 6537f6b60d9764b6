import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nthroots import exact
from nthroots.canon import (Order, SignedPerm, TooLarge, act, canonicalize, elimination_steps, equivalent,
                            group_order, iter_signed_perms, matrix_key, orbit, partition_classes,
                            signed_perm_group, stabilizer_size)


def square(n, lo=-3, hi=3):
    return st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n).map(exact.as_matrix)


def test_group_structure():
    for n in (1, 2, 3):
        g = signed_perm_group(n)
        assert len(g) == len(set(g)) == group_order(n)
        mats = {p.matrix() for p in g}
        for p, q in itertools.product(g[:8], g[:8]):
            assert p.compose(q).matrix() == exact.matmul(p.matrix(), q.matrix())
            assert p.compose(p.inverse()) == SignedPerm.identity(n)
            assert p.compose(q).matrix() in mats
    with pytest.raises(TooLarge):
        signed_perm_group(6)


def test_actions_match_matrix_products():
    rng = random.Random(0)
    g = signed_perm_group(3)
    for _ in range(50):
        m = tuple(tuple(rng.randint(-5, 5) for _ in range(3)) for _ in range(3))
        p, q = rng.choice(g), rng.choice(g)
        assert act(p, q, m) == exact.matmul(exact.matmul(p.matrix(), m), q.matrix())
        assert SignedPerm.from_matrix(p.matrix()) == p


@settings(max_examples=200)
@given(st.integers(2, 3).flatmap(square), st.sampled_from(list(Order)), st.randoms())
def test_canonical_form_is_orbit_minimum(m, order, rnd):
    c = canonicalize(m, order)
    orb = orbit(m)
    assert c == min(orb, key=lambda x: matrix_key(x, order))
    assert canonicalize(c, order) == c
    g = signed_perm_group(len(m))
    assert canonicalize(act(rnd.choice(g), rnd.choice(g), m), order) == c


@settings(max_examples=12, deadline=None)
@given(square(4, -2, 2), st.sampled_from(list(Order)))
def test_reduced_matches_exhaustive_on_4x4(m, order):
    assert canonicalize(m, order, method="reduced") == canonicalize(m, order, method="exhaustive")


@settings(max_examples=200)
@given(st.integers(2, 3).flatmap(square), st.integers(2, 3).flatmap(square))
def test_total_order_is_strict(a, b):
    if len(a) != len(b):
        return
    for order in Order:
        ka, kb = matrix_key(a, order), matrix_key(b, order)
        assert (ka == kb) == (a == b)


def test_orbit_size_divides_group_square():
    rng = random.Random(4)
    for n in (2, 3):
        for _ in range(20):
            m = tuple(tuple(rng.randint(-2, 2) for _ in range(n)) for _ in range(n))
            size = len(orbit(m))
            assert group_order(n) ** 2 % size == 0
            assert stabilizer_size(m) * size == group_order(n) ** 2


def test_structural_order_on_integers():
    keys = sorted([3, -1, 0, 1, -2, 2], key=lambda x: matrix_key(((x,),), Order.STRUCTURAL))
    assert keys == [1, 2, 3, 0, -1, -2]
    assert Order.parse("magma") is Order.ROW_MAJOR
    with pytest.raises(ValueError):
        Order.parse("nope")


def test_partition_and_equivalence():
    a, at = ((1, 1), (-2, 4)), ((1, 2), (-1, 4))
    classes = partition_classes([a, at, ((1, 1), (2, -4))])
    assert sorted(k for _, k in classes) == [1, 2]
    assert not equivalent(a, at)
    with pytest.raises(exact.DimensionMismatch):
        equivalent(a, ((1,),))


def test_elimination_steps_end_at_minimum():
    m = ((1, 1), (-2, 4))
    for order in Order:
        for by in ("entry", "row"):
            steps = elimination_steps(orbit(m), order, by=by)
            assert len(steps[0]) == 32 and steps[-1] == [canonicalize(m, order)]


def test_size_limits():
    with pytest.raises(TooLarge):
        canonicalize(exact.identity(6), Order.STRUCTURAL)
    with pytest.raises(TooLarge):
        canonicalize(exact.identity(5), Order.STRUCTURAL, method="exhaustive")
    assert canonicalize(exact.identity(5), Order.STRUCTURAL) == exact.identity(5)
