import pytest

from rwkit import parse_trs

CL_TEXT = """
(VAR x y z)
(RULES
  ap(ap(ap(S,x),y),z) -> ap(ap(x,z),ap(y,z))
  ap(ap(K,x),y) -> x
)
"""
AB_AC_TEXT = "(RULES a -> b a -> c)"
FF_TEXT = "(VAR x)\n(RULES f(f(x)) -> x)"
NONLINEAR_TEXT = "(VAR x)\n(RULES f(x,x) -> x a -> b)"


@pytest.fixture
def cl():
    return parse_trs(CL_TEXT)


@pytest.fixture
def ab_ac():
    return parse_trs(AB_AC_TEXT)


@pytest.fixture
def ff():
    return parse_trs(FF_TEXT)


@pytest.fixture
def nonlinear():
    return parse_trs(NONLINEAR_TEXT)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")
    config._acceptance = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker and rep.when == "call":
        n = marker.args[0]
        results = item.config._acceptance
        results[n] = results.get(n, True) and rep.passed


def pytest_terminal_summary(terminalreporter, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if results[n] else 'FAIL'}")
