import pytest
from hypothesis import HealthCheck, settings

from extq.kl import KLTable
from extq.rootdata import make_context

settings.register_profile(
    "repo",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


_tables = {}


def shared_table(t, n, ell):
    """One KL table per context for the whole session; tables are pure memo."""
    ctx = make_context(t, n, ell)
    if ctx not in _tables:
        _tables[ctx] = KLTable(ctx)
    return ctx, _tables[ctx]


@pytest.fixture(scope="session")
def a1_3():
    return shared_table("A", 1, 3)


@pytest.fixture(scope="session")
def a1_5():
    return shared_table("A", 1, 5)


@pytest.fixture(scope="session")
def a2_3():
    return shared_table("A", 2, 3)


@pytest.fixture(scope="session")
def c2_5():
    return shared_table("C", 2, 5)


@pytest.fixture(scope="session")
def a2_4():
    return shared_table("A", 2, 4)


# -- acceptance summary: one line per criterion ------------------------------------

_criteria = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None or rep.when != "call" and not rep.failed:
        return
    num, title = mark.args
    detail = getattr(item, "criterion_detail", "")
    ok = rep.passed and _criteria.get(num, (True,))[0]
    _criteria[num] = (ok, title, detail, rep.duration if rep.when == "call" else 0.0)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_criteria):
        ok, title, detail, secs = _criteria[num]
        line = f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}  {title} ({secs:.2f}s)"
        if detail:
            line += f"  [{detail}]"
        terminalreporter.write_line(line)
