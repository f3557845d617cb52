import re
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from monocremona import bounds, cli, mixedvol  # noqa: E402
from monocremona.monomap import inverse, map_degree, normalize  # noqa: E402

# Every multidegree computed during the run, keyed by normalized matrix.
RECORDED = {}
ACCEPTANCE = {}

_original_multidegree = mixedvol.multidegree


def _recording_multidegree(f):
    dv = _original_multidegree(f)
    g = normalize(f)
    RECORDED[g.matrix] = (g, dv)
    return dv


def pytest_configure(config):
    for mod in (mixedvol, bounds, cli):
        mod.multidegree = _recording_multidegree


def record_criterion(number, passed, detail=""):
    ACCEPTANCE[number] = (passed, detail)


def session_inequality_failures():
    """Check every recorded vector against the full inequality suite."""
    failures = []
    for g, dv in list(RECORDED.values()):
        rep = bounds.bounds_report(g, dv)
        bad = [c for c in rep.claims if not c.holds]
        if bad:
            failures.append((g.matrix, bad))
        if map_degree(g) == 1:
            inv = _original_multidegree(inverse(g))
            if tuple(inv) != tuple(reversed(dv)):
                failures.append((g.matrix, f"reversal: {inv} vs {dv}"))
    return failures


def pytest_sessionfinish(session, exitstatus):
    if not RECORDED:
        return
    failures = session_inequality_failures()
    ACCEPTANCE["8*"] = (not failures, f"session-wide: {len(RECORDED)} recorded multidegree vectors, {len(failures)} failures")
    if failures:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE, key=lambda k: (int(re.match(r"\d+", str(k)).group()), str(k))):
        passed, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"criterion {key}: {'PASS' if passed else 'FAIL'}  {detail}")


@pytest.fixture
def criterion():
    return record_criterion
