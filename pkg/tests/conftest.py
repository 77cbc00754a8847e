_results = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if call.when == "call" or (call.when == "setup" and call.excinfo is not None):
        detail = ""
        if call.excinfo is not None:
            detail = str(call.excinfo.value).splitlines()[0][:200]
        _results[number] = (title, "PASS" if call.excinfo is None else "FAIL", detail)


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_results):
        title, outcome, detail = _results[number]
        terminalreporter.write_line(f"AC{number} {outcome}  {title}")
        if detail:
            terminalreporter.write_line(f"      {detail}")

