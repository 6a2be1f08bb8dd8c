import numpy as np
import pytest

from qpoisson.corpus import builtin_corpus, shipped_files
from qpoisson.scenario import build_scenario, load_scenario
from qpoisson.theorems import run_theorem_suite

ACCEPTANCE_LINES: dict[int, str] = {}


class CorpusEntry:
    def __init__(self, scenario):
        self.scenario = scenario
        result = run_theorem_suite(scenario.action, scenario.measure)
        self.analysis = result["analysis"]
        self.verdicts = result["verdicts"]

    @property
    def name(self):
        return self.scenario.name


@pytest.fixture(scope="session")
def corpus():
    """Every built-in and shipped scenario, analyzed once per test session."""
    scenarios = [build_scenario(d) for d in builtin_corpus()]
    scenarios += [load_scenario(p) for p in shipped_files()]
    return [CorpusEntry(s) for s in scenarios]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
