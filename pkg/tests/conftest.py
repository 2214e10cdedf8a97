import sys
from pathlib import Path

import pytest
from hypothesis import settings

# Wall-clock deadlines make property tests flaky on loaded machines.
settings.register_profile("uclab", deadline=None)
settings.load_profile("uclab")

sys.path.insert(0, str(Path(__file__).parent))

from uclab.family import SetFamily  # noqa: E402

FIG1 = [{1}, {2}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}, {1, 2, 3, 4}]


@pytest.fixture
def two_singletons():
    return SetFamily.from_sets(2, [{1}, {2}])


@pytest.fixture
def fig1():
    return SetFamily.from_sets(4, FIG1)


@pytest.fixture
def binom3_le2():
    from uclab.constructions import make_binomial

    return make_binomial(3, "at_most", 2)


# -- acceptance summary -----------------------------------------------------------

_ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(cid, title): an exit criterion")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None or call.when not in ("setup", "call"):
        return
    cid, title = marker.args
    failed = call.excinfo is not None
    if call.when == "setup" and not failed:
        return
    prev = _ACCEPTANCE.get(cid, ("PASS", title))[0]
    _ACCEPTANCE[cid] = ("FAIL" if failed or prev == "FAIL" else "PASS", title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(_ACCEPTANCE, key=lambda c: int(c.split("-")[1])):
        status, title = _ACCEPTANCE[cid]
        terminalreporter.write_line(f"[{status}] {cid}: {title}")
