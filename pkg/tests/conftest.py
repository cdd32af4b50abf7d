import functools
import sys

import pytest

from awgraph import Config, generate_family, run_analyze

FAMILY_GRAPHS = [("cycle", 2 * D) for D in range(3, 9)] + [("crown", n) for n in (5, 6, 7)] + [("hadamard", 8)]


@functools.lru_cache(maxsize=None)
def analyzed(family, size, seed=0):
    """(reports, exit code, FullAnalysis list) for a family graph, computed once per session."""
    keep = []
    reports, code = run_analyze(generate_family(family, size), Config(seed=seed), keep)
    return reports, code, keep


@pytest.fixture(params=FAMILY_GRAPHS, ids=lambda p: f"{p[0]}{p[1]}")
def family_run(request):
    return analyzed(*request.param)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
