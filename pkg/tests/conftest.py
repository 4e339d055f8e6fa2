import pytest

from liquidsim.scenarios import StarParams, make_example2, make_star


@pytest.fixture
def example2():
    return make_example2()


@pytest.fixture
def star7():
    return make_star(StarParams(7, 0.01))


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(RESULTS):
        ok, detail = RESULTS[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
