import math

import pytest

from exptype.expfun import block, exp_term, poly_expr, sine_expr


@pytest.fixture(scope="session")
def corpus():
    """Exponential sums and blocks used across modules."""
    return {
        "e1": exp_term(1.0),
        "e_i": exp_term(1j),
        "cosh": exp_term(1.0) + exp_term(-1.0),
        "f_i": block(1j),
        "f_half": block(0.5j),
        "f_mixed": block(0.3 - 0.4j, coef=2.0),
        "sum3": exp_term(0.5j, 2.0) + exp_term(-1.0, 0.5) + exp_term(1 + 1j, -1.0),
        "poly": poly_expr([1.0, -2.0, 0.5], freq=0.25),
        "sine": sine_expr(),
        "shifted": block(1j, shift=2.0, beta=0.5j),
    }


def close(a, b, tol):
    return abs(a - b) <= tol * max(1.0, abs(b))


SQRT2 = math.sqrt(2)


_criteria = {}


def pytest_runtest_makereport(item, call):
    mark = item.get_closest_marker("criterion")
    if mark is None or call.when != "call" and not (call.when == "setup" and call.excinfo):
        return
    ok = call.excinfo is None
    _criteria.setdefault(mark.args[0], []).append((item.name, ok))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        checks = _criteria[n]
        failed = [name for name, ok in checks if not ok]
        verdict = "PASS" if not failed else "FAIL"
        line = f"criterion {n:2d}: {verdict} ({len(checks) - len(failed)}/{len(checks)} checks)"
        if failed:
            line += " failed: " + ", ".join(failed)
        terminalreporter.write_line(line)
