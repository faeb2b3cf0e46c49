import sys
import time
from pathlib import Path

import pytest

from diskevac import analysis

sys.path.insert(0, str(Path(__file__).parent))

# one-line verdicts collected by the acceptance tests, echoed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def fc_cache() -> analysis.FastChordCache:
    """Process-wide fast-chord cache shared across the whole test run."""
    return analysis.default_fast_chord_cache()


@pytest.fixture(scope="session")
def crossover_constants(fc_cache):
    """Crossover speeds computed once per session (used by several criteria).

    Returns (constants, wall-clock seconds) so the runtime budget can be
    asserted where the computation actually happened.
    """
    start = time.perf_counter()
    constants = analysis.compute_constants(fc_cache)
    return constants, time.perf_counter() - start


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
