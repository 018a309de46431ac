import pytest

from resindex import arith
from resindex.decompose import parse_g

# the base matrix exercised throughout: mixed signs, perfect powers, fractions
BASE_STRINGS = ("2", "3", "5", "8", "-2", "-3", "-4", "9/25", "1/2")
BASES = tuple(parse_g(s) for s in BASE_STRINGS)


@pytest.fixture(scope="session")
def table():
    return arith.build_prime_table(10**6)


@pytest.fixture(scope="session")
def small_table():
    return arith.build_prime_table(10**4)
