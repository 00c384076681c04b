import logging
import random

import pytest

from charsum import _internal
from charsum.gf import build_field
from charsum.mpoly import MultiPoly
from charsum.sums import CharacterSpec


@pytest.fixture(scope="session")
def f2():
    return build_field(2)


@pytest.fixture(scope="session")
def f3():
    return build_field(3)


@pytest.fixture(scope="session")
def f4():
    return build_field(2, 2)


@pytest.fixture(scope="session")
def f8():
    return build_field(2, 3)


@pytest.fixture(scope="session")
def f9():
    return build_field(3, 2)


@pytest.fixture
def rng():
    return random.Random(20240229)


@pytest.fixture
def chi():
    """The default character ``b = 1`` of a field."""
    return CharacterSpec.default


@pytest.fixture
def poly():
    """Build a polynomial from ``{exponent: coefficient}``."""

    def make(field, terms):
        n = len(next(iter(terms)))
        return MultiPoly(field, n, terms)

    return make


@pytest.fixture(autouse=True)
def quiet_logger():
    """Keep the package logger at WARNING unless a test changes it."""
    logger = _internal._get_logger()
    level = logger.level
    logger.setLevel(logging.WARNING)
    yield
    logger.setLevel(level)


@pytest.fixture
def problem_file(tmp_path):
    def write(text, name="problem.txt"):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return write
