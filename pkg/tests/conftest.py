import random
from fractions import Fraction

import pytest

from polarcyl import make_surface


@pytest.fixture(scope="session")
def m2():
    return make_surface(2)


@pytest.fixture(scope="session")
def m3():
    return make_surface(3)


def rand_fraction(rng, lo=-9, hi=9, max_den=7) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def rand_unit_fraction(rng, ceiling=Fraction(1)) -> Fraction:
    """Random rational strictly between 0 and ceiling."""
    den = rng.randint(2, 12)
    return Fraction(rng.randint(1, den - 1), den) * ceiling


def rand_int_class(model, rng, lo=-9, hi=9):
    return model.class_from([rng.randint(lo, hi) for _ in range(model.rank)])


def rand_rational_class(model, rng):
    return model.class_from([rand_fraction(rng) for _ in range(model.rank)])


def seeded(seed) -> random.Random:
    return random.Random(seed)


# -- independent bilinear-expansion oracle --------------------------------
#
# Expands a.gram.b symbolically from the defining relations
# Q.Q = -m, Q.F = 1, F.F = 0, Ei.Ej = -delta_ij, everything else 0,
# without touching the library's Gram matrix.

def oracle_pairing(m: int, a, b) -> Fraction:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    total = -m * a[0] * b[0] + a[0] * b[1] + a[1] * b[0]
    total -= sum(a[k] * b[k] for k in range(2, m + 6))
    return total


def oracle_chi(m: int, d, k) -> Fraction:
    dk = [x - y for x, y in zip(d, k)]
    return 1 + oracle_pairing(m, d, dk) / 2


def oracle_genus(m: int, d, k) -> Fraction:
    return 1 + (oracle_pairing(m, d, d) + oracle_pairing(m, d, k)) / 2


def canonical_coords(m: int):
    return [-2, -(m + 2)] + [1] * (m + 4)
