import random
from fractions import Fraction

import pytest

from fuchsgap.algebra import GENERIC, ConditionPolynomial, ParamField


def rand_fraction(rng: random.Random, lo=-9, hi=9, den=6) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture(scope="session")
def Fa():
    return ParamField()


@pytest.fixture(scope="session")
def Fab():
    return ParamField(b=GENERIC)


@pytest.fixture(scope="session")
def Fmod():
    return ParamField(b=ConditionPolynomial.from_expr("b**2 - 2*b + a"))


_ACCEPTANCE: list[str] = []


@pytest.fixture
def criterion():
    """Record one PASS/FAIL line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str = ""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        _ACCEPTANCE.append(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
