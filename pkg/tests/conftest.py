from collections import defaultdict

import pytest

CRITERIA = {
    1: "oracle equivalence on exhaustive and random layouts",
    2: "depth bound 5d^2+6d+1, square-only depth 8",
    3: "boundary-case strip depths 4/5/6",
    4: "gate count <= 11/3 N_C, adversarial 11k",
    5: "cancellation rate near c(r3), gap shrinking",
    6: "CNOT+RZ conversion adds (d+1)^2 moments",
    7: "alternative square-only circuit 14/10/88",
    8: "hardware validity and mutation detection",
    9: "benchmark trend table",
}

_results: dict[int, list[tuple[str, str]]] = defaultdict(list)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): test belongs to acceptance criterion n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _results[marker.args[0]].append((item.name, rep.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(CRITERIA):
        runs = _results.get(n)
        if not runs:
            continue
        failed = [name for name, outcome in runs if outcome != "passed"]
        status = "PASS" if not failed else "FAIL"
        extra = f" (failing: {', '.join(failed)})" if failed else ""
        tr.write_line(f"AC{n} {status}: {CRITERIA[n]} [{len(runs) - len(failed)}/{len(runs)} tests]{extra}")

