import random

import pytest

from iwasawa_theta import LayerElement, PadicContext


def rand_element(rng, ctx, n):
    return LayerElement(ctx, n, [rng.randrange(ctx.modulus) for _ in range(ctx.p**n)])


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def ctx32():
    return PadicContext(3, 2)
