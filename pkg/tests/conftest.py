import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

from towercalc.corpus import SCRIPTS, script_text  # noqa: E402
from towercalc.script import load_tower  # noqa: E402

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(max_num=12, max_den=6):
    return st.builds(Fraction, st.integers(-max_num, max_num), st.integers(1, max_den))


def div_classes(v):
    return st.lists(rationals(), min_size=v.rank, max_size=v.rank).map(v.div_class)


def curve_classes(v):
    return st.lists(rationals(), min_size=v.rank, max_size=v.rank).map(v.curve_class)


@pytest.fixture(scope="session")
def corpus():
    """name -> (top level, evidence) for every bundled script."""
    return {name: load_tower(script_text(name)) for name in SCRIPTS}


@pytest.fixture(scope="session")
def corpus_levels(corpus):
    return [v for top, _ in corpus.values() for v in top.chain()]


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(results):
        terminalreporter.write_line(results[k])
