import copy
import itertools

import pytest

from nthroots import exact, search
from nthroots.canon import Order, group_order
from nthroots.reproduce import load_fixtures


@pytest.mark.parametrize("n,b", [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2)])
def test_pruned_equals_unpruned(n, b):
    reps, _ = search.enumerate_normalized(n, b, inverse_bound=b, workers=1)
    expanded = [m for rep in reps for m in search.expand_left(rep)]
    assert len(expanded) == len(set(expanded))
    assert set(expanded) == set(search.brute_force_problem_i(n, b))


def test_left_normalization_is_a_section():
    reps, _ = search.enumerate_normalized(3, 3, inverse_bound=3)
    for rep in reps[:20]:
        assert search.left_normalize(rep) == rep
        assert all(search.left_normalize(m) == rep for m in search.expand_left(rep))


def test_workers_do_not_change_results():
    base = search.exhaustive_problem_i(3, workers=1)
    for w in (2, 3):
        r = search.exhaustive_problem_i(3, workers=w)
        assert (r.representatives, r.classes, r.count, r.explored) == \
               (base.representatives, base.classes, base.count, base.explored)


def test_workers_env(monkeypatch):
    monkeypatch.setenv(search.WORKERS_ENV, "3")
    assert search.default_workers() == 3
    monkeypatch.setenv(search.WORKERS_ENV, "junk")
    assert search.default_workers() == 1


def test_problem_i_counts_and_exhaustion():
    r = search.exhaustive_problem_i(3)
    assert r.minimal_norm == 3 and r.count == 576 and r.complete
    assert sum(k for _, k in r.classes) == r.count
    assert r.count == len(r.representatives) * group_order(3)
    with pytest.raises(search.NoSolutionWithinBound) as info:
        search.exhaustive_problem_i(3, b_max=2)
    assert info.value.report.complete and info.value.report.count == 0


def test_problem_ii_bookkeeping():
    r = search.exhaustive_problem_ii((2, 3), 3)
    assert r.optimal_m == len(r.solutions) == 32
    assert r.count == len(r.products) == 8
    assert sorted(k for _, k in r.classes) == [4, 4]
    for m in r.solutions:
        assert exact.norm(search.conjugate_diagonal(m, (2, 3))) == 4
    s = r.summary()
    assert s["distinct_products"] == 8 and not s["complete"]
    with pytest.raises(ValueError):
        search.ProblemSpec("ii", 2, (3, 2), 3)
    with pytest.raises(ValueError):
        search.ProblemSpec("iv", 2)


def test_random_unimodular_is_unimodular_and_seeded():
    for seed in range(50):
        m = search.random_unimodular(4, 12, seed)
        assert exact.det(m) in (1, -1)
        assert m == search.random_unimodular(4, 12, seed)
    assert search.random_unimodular(4, 12, 1) != search.random_unimodular(4, 12, 2)


def test_descent_preserves_unimodularity():
    import random
    rng = random.Random(0)
    for _ in range(10):
        m = search.descend(search.random_unimodular(4, 12, rng), rng)
        assert exact.det(m) in (1, -1)


def test_randomized_search_finds_known_optimum():
    r = search.randomized_zerofree_search(3, 200, seed=1, target_norm=3)
    assert r.minimal_norm == 3
    for w in r.solutions:
        p = exact.profile(w)
        assert p.zerofree and p.concat_norm == 3


def test_checkpoint_resume_matches_uninterrupted():
    full = search.randomized_zerofree_search(4, 60, seed=9)
    states = []
    search.randomized_zerofree_search(4, 25, seed=9, checkpoint=states.append, checkpoint_every=5)
    assert states[-1]["iterations_done"] == 25
    resumed = search.randomized_zerofree_search(4, 60, seed=9, state=copy.deepcopy(states[-1]))
    assert (resumed.minimal_norm, resumed.solutions) == (full.minimal_norm, full.solutions)
    with pytest.raises(ValueError):
        search.randomized_zerofree_search(4, 60, seed=10, state=states[-1])


def test_catalog_and_corrupt_fixture():
    fx = load_fixtures()
    pairs = [(c["name"], c["matrix"], c["inverse"]) for c in fx["catalog"]]
    assert [e.profile.concat_norm for e in search.verify_catalog(pairs)] == [4, 4, 4, 8, 8]
    name, m, inv = pairs[0]
    bad = [list(r) for r in inv]
    bad[0][0] += 1
    with pytest.raises(search.FixtureCorrupt):
        search.verify_catalog([(name, m, bad)])


def test_int64_and_object_paths_agree():
    # the object-dtype fallback is exercised by forcing a tiny threshold
    job = search._Job(3, 2, 2)
    rows = len(search.normalized_rows(3, 2))
    a = search._final_stage(job, (0,), 1, rows)
    orig = search._hadamard
    try:
        search._hadamard = lambda n, b: 2 ** 63
        b = search._final_stage(job, (0,), 1, rows)
    finally:
        search._hadamard = orig
    assert a == b
