import pytest

# criterion number -> (passed, detail); filled by test_acceptance
CRITERIA: dict = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running exhaustive search (deselect with -m 'not slow')")


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        ok, detail = CRITERIA[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture(scope="session")
def fixtures():
    from nthroots.reproduce import load_fixtures

    return load_fixtures()
