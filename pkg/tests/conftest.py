import pytest

# criterion number -> (title, list of outcomes)
_CRITERIA: dict[int, tuple[str, list[tuple[str, str]]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _CRITERIA.setdefault(number, (title, []))
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        entry[1].append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        title, results = _CRITERIA[number]
        failed = [name for name, outcome in results if outcome != "passed"]
        status = "PASS" if results and not failed else "FAIL"
        line = f"criterion {number:2d} {status}  {title} ({len(results) - len(failed)}/{len(results)} checks)"
        if failed:
            line += "  failing: " + ", ".join(failed)
        tr.write_line(line)
