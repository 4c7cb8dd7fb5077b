import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from ratlanden.exactpoly import GaussianRational, Polynomial, RationalFunction

settings.register_profile("default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, small_fractions, small_fractions)
real_polys = st.lists(small_fractions, max_size=6).map(Polynomial)
complex_polys = st.lists(gaussians, max_size=5).map(Polynomial)


def random_fraction(rng: random.Random, lo=-9, hi=9, den=7) -> Fraction:
    return Fraction(rng.randint(lo * den, hi * den), rng.randint(1, den))


def random_positive(rng: random.Random, hi=9) -> Fraction:
    return Fraction(rng.randint(1, hi * 8), rng.randint(1, 8))


def random_rational_function(rng: random.Random, max_degree=10, real=True) -> RationalFunction:
    """Random reduced quotient of total degree at most ``max_degree``."""

    def coeff():
        c = random_fraction(rng)
        return c if real else GaussianRational(c, random_fraction(rng))

    while True:
        dn = rng.randint(0, max_degree)
        dd = rng.randint(0, max_degree)
        num = Polynomial([coeff() for _ in range(dn + 1)])
        den = Polynomial([coeff() for _ in range(dd)] + [1])
        if num:
            return RationalFunction(num, den)


@pytest.fixture
def rng():
    return random.Random(20240611)
