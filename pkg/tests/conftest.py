import time

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile("default", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE: list[tuple[str, bool, float, str]] = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line: criterion id, verdict, wall time, note."""
    marker = request.node.get_closest_marker("criterion")
    cid, desc = marker.args
    state = {"note": ""}
    t0 = time.perf_counter()
    yield state
    elapsed = time.perf_counter() - t0
    failed = request.node.rep_call.failed if hasattr(request.node, "rep_call") else False
    ACCEPTANCE.append((cid, not failed, elapsed, f"{desc}{' | ' + state['note'] if state['note'] else ''}"))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(id, description): acceptance criterion")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for cid, ok, elapsed, desc in sorted(ACCEPTANCE, key=lambda r: int(r[0][2:])):
        terminalreporter.write_line(f"{cid:<5} {'PASS' if ok else 'FAIL'}  {elapsed:7.2f}s  {desc}")
