from __future__ import annotations

import pytest
from hypothesis import settings

from roquette.harness.groupdef import build_from_def

settings.register_profile("default", max_examples=100, deadline=None)
settings.load_profile("default")

# every group of order <= 24 that the constructors produce, used for the
# exhaustive lattice cross-check
SMALL_DEFS = [
    "cyclic 1", "cyclic 2", "cyclic 6", "cyclic 8", "cyclic 12", "cyclic 16",
    "dihedral 8", "dihedral 16", "quaternion 8", "quaternion 16", "semidihedral 16",
    "direct (cyclic 2) (cyclic 2)", "direct (cyclic 4) (cyclic 2)", "direct (cyclic 3) (cyclic 3)",
    "direct (direct (cyclic 2) (cyclic 2)) (cyclic 2)", "direct (cyclic 2) (quaternion 8)",
    "semidirect cyclic:3 units:[2]", "semidirect cyclic:5 units:[2]", "semidirect cyclic:7 units:[2]",
    "semidirect cyclic:12 units:[5]", "semidirect cyclic:8 units:[3]", "semidirect cyclic:8 units:[5]",
    "semidirect cyclic:8 units:[7]", "semidirect cyclic:6 units:[5]", "sl2 3", "units 24",
]

_cache: dict = {}


def group(definition: str):
    """Build once per session; GroupTable instances are immutable."""
    if definition not in _cache:
        _cache[definition] = build_from_def(definition)
    return _cache[definition]


@pytest.fixture(scope="session")
def build():
    return group


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for k in sorted(test_acceptance.RESULTS):
            terminalreporter.write_line(test_acceptance.RESULTS[k])
