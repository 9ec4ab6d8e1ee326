import random

import pytest

from planebundles.exact_linalg import FieldSpec
from planebundles.schemes import SchemeSpec, ZeroDimScheme, random_scheme

FP = FieldSpec.prime()
QQ = FieldSpec.rationals()


@pytest.fixture(params=[FP, QQ], ids=["fp", "q"])
def field(request):
    return request.param


@pytest.fixture
def rng():
    return random.Random(12345)


def point(F, *coords):
    return ZeroDimScheme.from_coords(F, [coords])


def sample(F, u, constraint="generic", param=0, seed=0):
    return random_scheme(SchemeSpec(u, constraint, param), random.Random(seed), F)


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
