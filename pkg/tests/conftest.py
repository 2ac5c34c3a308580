import sys
from pathlib import Path

import pytest

from modelbridge.henkin import build_term_model, henkin_expand, trivial_completion
from modelbridge.parser import parse_theory
from modelbridge.pipeline import PipelineConfig, run_pipeline

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def load_theory(name: str):
    return parse_theory((FIXTURES / name).read_text())


@pytest.fixture(scope="session")
def z2():
    return load_theory("z2.thy")


@pytest.fixture(scope="session")
def monoid():
    return load_theory("monoid.thy")


@pytest.fixture(scope="session")
def monoid_a():
    return load_theory("monoid_a.thy")


@pytest.fixture(scope="session")
def z2_run(z2):
    return run_pipeline(z2, PipelineConfig())


@pytest.fixture(scope="session")
def monoid_run(monoid):
    return run_pipeline(monoid, PipelineConfig())


@pytest.fixture(scope="session")
def monoid_a_run(monoid_a):
    return run_pipeline(monoid_a, PipelineConfig())


@pytest.fixture(scope="session")
def monoid_a_raw_tm(monoid_a):
    """Depth-2 term model with no witnesses and nothing decided: the
    five powers of a stay distinct."""
    expansion = henkin_expand(monoid_a, rounds=0, formula_budget=0)
    return build_term_model(trivial_completion(expansion), term_depth=2)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not getattr(acceptance, "RESULTS", None):
        return
    terminalreporter.section("acceptance")
    for name, ok, elapsed, bound in acceptance.RESULTS:
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{verdict}  {name}  ({elapsed:.2f}s, budget {bound:.0f}s)"
        )
