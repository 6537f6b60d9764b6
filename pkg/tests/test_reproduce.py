import copy
import json

from nthroots.reproduce import CHECKS, load_fixtures, run_checks

KNOWN_MISPRINTS = {"quintic roots of C^5", "even family Y(n,u,v)", "problem (ii), lambda=(2,3)"}


def test_fast_checks():
    results = {r.name: r for r in run_checks()}
    assert set(results) == {c.name for c in CHECKS if not c.slow}
    for name, r in results.items():
        assert r.passed != (name in KNOWN_MISPRINTS), f"{name}: {r.detail}"


def test_corrupted_fixture_fails_its_item():
    fx = copy.deepcopy(load_fixtures())
    fx["catalog"][2]["inverse"][0][0] += 1
    fx["counts"]["problem_i_n3"] = 577
    results = {r.name: r for r in run_checks(fx)}
    assert not results["5x5 and 6x6 catalog"].passed
    assert not results["problem (i), n=3"].passed
    assert results["cube roots of C^3"].passed


def test_missing_key_fails_only_that_item():
    fx = copy.deepcopy(load_fixtures())
    del fx["B_fourth"]
    results = {r.name: r for r in run_checks(fx)}
    assert not results["fourth roots of B^4"].passed and "KeyError" in results["fourth roots of B^4"].detail
    assert results["canonical forms of A and A~"].passed


def test_fixture_file_loads_from_path(tmp_path):
    p = tmp_path / "fx.json"
    p.write_text(json.dumps(load_fixtures()))
    assert load_fixtures(str(p)) == load_fixtures()
