import random

import pytest

from gwinflect.poly import DensePoly


def random_poly(field, degree, rng, monic=False):
    coeffs = [field.random_element(rng) for _ in range(degree)]
    if monic:
        coeffs.append(field.one())
    else:
        lead = field.random_element(rng)
        while not lead:
            lead = field.random_element(rng)
        coeffs.append(lead)
    return DensePoly(field, coeffs)


def random_squarefree(field, degree, rng, monic=True):
    while True:
        f = random_poly(field, degree, rng, monic=monic)
        if f.degree() == degree and f.is_squarefree():
            return f


@pytest.fixture
def rng():
    return random.Random(20240817)
