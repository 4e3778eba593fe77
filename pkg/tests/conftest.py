import itertools
from fractions import Fraction

import pytest

from invwalk import _kernels
from invwalk.perm import Permutation, apply_generator, inversions_naive


@pytest.fixture(params=sorted(_kernels.available()))
def kernels(request):
    """Each available kernel backend in turn."""
    return _kernels.available()[request.param]


def brute_force_mean(n, t):
    """E_nt by multiplying out every word with the Permutation API (no kernels, no DP)."""
    total = 0
    for word in itertools.product(range(1, n + 1), repeat=t):
        p = Permutation.identity(n)
        for g in word:
            p = apply_generator(p, g)
        total += inversions_naive(p)
    return Fraction(total, n**t)


_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        crit = mark.args[0]
        ok = rep.outcome == "passed"
        prev = _ACCEPTANCE.get(crit, (True, []))
        _ACCEPTANCE[crit] = (prev[0] and ok, prev[1] + [(item.name, ok, rep.duration)])


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(_ACCEPTANCE):
        ok, parts = _ACCEPTANCE[crit]
        detail = ", ".join(f"{name} {'ok' if p else 'FAILED'} ({d:.2f}s)" for name, p, d in parts)
        terminalreporter.write_line(f"criterion {crit:>2}: {'PASS' if ok else 'FAIL'}  [{detail}]")
