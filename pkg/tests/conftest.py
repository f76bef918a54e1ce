import pytest

_acceptance_results = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call" and item.name.startswith("test_criterion_"):
        _acceptance_results.append((item.name, rep.passed,
                                    item.function.__doc__ or ""))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    def key(entry):
        return int(entry[0].split("_")[2])
    for name, passed, doc in sorted(_acceptance_results, key=key):
        n = name.split("_")[2]
        desc = doc.strip().splitlines()[0] if doc.strip() else name
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {verdict} - {desc}")
