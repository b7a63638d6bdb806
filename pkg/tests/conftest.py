import pytest

from g4lines.datasets import bring_curve, bring_generators, table_lines, TABLE1, TABLE2
from g4lines.exactfield import field_create
from g4lines.groups import close_group
from g4lines.lines import find_galois_lines


@pytest.fixture(scope="session")
def F15():
    return field_create(15)


@pytest.fixture(scope="session")
def F3():
    return field_create(3)


@pytest.fixture(scope="session")
def bring(F15):
    C = bring_curve(F15)
    G = close_group(bring_generators(F15))
    return C, G


@pytest.fixture(scope="session")
def bring_report(bring):
    C, G = bring
    return find_galois_lines(C, G, ("s3", "k4"))


@pytest.fixture(scope="session")
def tables(F15):
    return table_lines(F15, TABLE1), table_lines(F15, TABLE2)


# -- acceptance reporting ---------------------------------------------------------

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, text): acceptance criterion n")


def pytest_runtest_logreport(report):
    marks = getattr(report, "criterion", None)
    if marks is None:
        return
    n, text = marks
    ok, _ = _criteria.get(n, (True, text))
    if report.when == "call" or report.failed:
        _criteria[n] = (ok and not report.failed, text)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    m = item.get_closest_marker("criterion")
    if m is not None:
        outcome.get_result().criterion = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, text = _criteria[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
