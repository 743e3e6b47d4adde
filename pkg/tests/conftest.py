import pytest

from mbsmooth import Instance, InstanceBase


def make_base(rows):
    return InstanceBase(Instance(tuple(x), y) for x, y in rows)


TOY3 = [(("a", "x"), "V"), (("a", "y"), "N"), (("b", "x"), "N")]
TOY4 = [(("a", "x"), "V"), (("a", "y"), "V"), (("b", "x"), "N"), (("b", "y"), "N")]


@pytest.fixture
def toy3():
    return make_base(TOY3)


@pytest.fixture
def toy4():
    return make_base(TOY4)


_acceptance: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    if item.module.__name__.endswith("test_acceptance"):
        doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
        if report.when == "call":
            _acceptance.append(("PASS" if report.passed else "FAIL", doc))
        elif report.when == "setup" and report.skipped:
            _acceptance.append(("SKIP", f"{doc} ({report.longrepr[2]})"))
        elif report.when == "setup" and report.failed:
            _acceptance.append(("FAIL", doc))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for status, doc in _acceptance:
        terminalreporter.write_line(f"[{status}] {doc}")
