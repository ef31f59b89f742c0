import pytest

# criterion number -> (passed, detail); filled by tests/test_acceptance.py
ACCEPTANCE = {}
CRITERIA = {
    1: "claim 1 sweep",
    2: "claim 2 sweep and Bol pairing",
    3: "theorem sweep",
    4: "dual-oracle agreement",
    5: "division lemma",
    6: "deformation certificate",
    7: "structural checks",
    8: "Whitney relation",
    9: "determinism",
}


@pytest.fixture
def record():
    def _record(number, passed, detail):
        ACCEPTANCE[number] = (bool(passed), detail)
        return passed

    return _record


def pytest_runtest_logreport(report):
    # a criterion that raised before recording still gets a FAIL line
    name = report.nodeid.rpartition("::")[2]
    if "test_acceptance.py" in report.nodeid and report.failed and name.startswith("test_"):
        number = int(name.split("_")[1])
        if number not in ACCEPTANCE or ACCEPTANCE[number][0]:
            ACCEPTANCE[number] = (False, f"error in {report.when}: {report.longrepr.reprcrash.message if hasattr(report.longrepr, 'reprcrash') else report.longrepr}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for i, name in CRITERIA.items():
        if i in ACCEPTANCE:
            ok, detail = ACCEPTANCE[i]
            terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {i}. {name}: {detail}")
