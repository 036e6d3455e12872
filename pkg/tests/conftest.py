from __future__ import annotations

from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from toric_seshadri import build_bott_tower, build_projective_space

settings.register_profile(
    "default", max_examples=40, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

MANIFESTS = Path(__file__).resolve().parent.parent / "manifests"

# filled by test_acceptance.py, printed at the end of the session
ACCEPTANCE_LINES: dict[str, str] = {}


@pytest.fixture
def manifests() -> Path:
    return MANIFESTS


@pytest.fixture(params=[1, 2, 3])
def hirz(request):
    return build_bott_tower(2, {(1, 2): request.param})


@pytest.fixture
def x3():
    return build_bott_tower(3, {(1, 2): 2, (1, 3): 3, (2, 3): 5})


@pytest.fixture
def p2():
    return build_projective_space(2)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_LINES, key=lambda k: (int(k.rstrip("ab")), k)):
        terminalreporter.write_line(ACCEPTANCE_LINES[key])
