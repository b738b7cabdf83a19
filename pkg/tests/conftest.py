import warnings

import pytest
from hypothesis import HealthCheck, settings

from corelab.field import FieldDescriptor
from corelab.poly import PolyRing

settings.register_profile("corelab", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("corelab")

# (number, title, passed, seconds, limit) for every acceptance criterion that ran
ACCEPTANCE_LINES: list = []


@pytest.fixture(autouse=True)
def _quiet_small_field():
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message=".* is small; general elements")
        yield


@pytest.fixture
def gf16():
    return FieldDescriptor.gf2(16)


@pytest.fixture
def fp():
    return FieldDescriptor.prime(32003)


@pytest.fixture
def R2(fp):
    return PolyRing(["x", "y"], fp)


@pytest.fixture
def R2_gf(gf16):
    return PolyRing(["x", "y"], gf16)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num, title, passed, seconds, limit in sorted(ACCEPTANCE_LINES):
        state = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"{state}  {num:>2}. {title}  ({seconds:.1f} s, limit {limit} s)")
