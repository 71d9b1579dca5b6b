import random

import pytest

from hhlab.exact import Field


@pytest.fixture
def rng():
    return random.Random(20240611)


FIELDS = [
    Field.rationals(),
    Field.prime_field(7),
    Field.prime_field(2),
    Field.cyclotomic(3),
    Field.cyclotomic(4),
    Field.cyclotomic(6),
    Field.rational_functions(),
]


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
