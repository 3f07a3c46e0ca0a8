import pytest

ACCEPTANCE: dict[str, tuple[str, str]] = {}


def pytest_addoption(parser):
    parser.addoption("--skip-long", action="store_true", help="skip the full Sturm-bound run")


def pytest_collection_modifyitems(config, items):
    if not config.getoption("--skip-long"):
        return
    skip = pytest.mark.skip(reason="--skip-long given")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    crit = item.get_closest_marker("criterion")
    if crit is None:
        return
    cid, desc = crit.args
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        status = "PASS" if rep.passed else "SKIP" if rep.skipped else "FAIL"
        ACCEPTANCE[cid] = (desc, status)


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, description): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid in sorted(ACCEPTANCE, key=lambda c: int(c[1:])):
        desc, status = ACCEPTANCE[cid]
        terminalreporter.write_line(f"[ACCEPT] {cid} {desc}: {status}")
