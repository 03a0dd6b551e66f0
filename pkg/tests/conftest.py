import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from hardyfactor.poly import Polynomial
from hardyfactor.structured import AtomicSingularMeasure, StructuredFunction

settings.register_profile("default", deadline=None, max_examples=60, derandomize=True)
settings.load_profile("default")

ORACLES = json.loads((Path(__file__).parent / "oracles" / "oracles.json").read_text())

_ACCEPTANCE: list[str] = []


@pytest.fixture
def oracles():
    return ORACLES


@pytest.fixture
def acceptance():
    """Record one summary line per acceptance criterion."""

    def record(number: int, title: str, passed: bool, detail: str = ""):
        _ACCEPTANCE.append(f"criterion {number}: {'PASS' if passed else 'FAIL'}  {title}  {detail}".rstrip())
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


def cplx(pair):
    return complex(pair[0], pair[1])


def atom(c=1.0, point=1.0):
    return StructuredFunction.singular_inner(AtomicSingularMeasure.atom(point, c))


def poly_f(coeffs):
    return StructuredFunction.polynomial(Polynomial.float(coeffs))


ONE_MINUS_Z4 = [1, -4, 6, -4, 1]


def random_disk_points(seed, n, rmax=0.9):
    rng = np.random.default_rng(seed)
    r = rmax * np.sqrt(rng.random(n))
    return r * np.exp(2j * np.pi * rng.random(n))
