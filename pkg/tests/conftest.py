import random
from fractions import Fraction

import pytest

from tjurina import Ideal, Poly, RingContext


@pytest.fixture
def c2():
    return RingContext.local("x,y")


@pytest.fixture
def c3():
    return RingContext.local("x,y,z")


@pytest.fixture
def c4():
    return RingContext.local("x,y,z,w")


def ideal(src, ctx):
    return Ideal.parse(src, ctx)


def rand_poly(ctx, rng, nterms=3, mindeg=0, maxdeg=3, rational=True):
    """Random polynomial with ``nterms`` distinct terms in the degree band."""
    n = ctx.nvars
    pool = [e for e in _exps(n, maxdeg) if sum(e) >= mindeg]
    picks = rng.sample(pool, min(nterms, len(pool)))
    terms = {}
    for e in picks:
        num = rng.choice([-3, -2, -1, 1, 2, 3])
        den = rng.choice([1, 1, 2, 3]) if rational else 1
        terms[e] = Fraction(num, den)
    return Poly(terms, ctx)


def _exps(n, d):
    if n == 0:
        yield ()
        return
    for k in range(d + 1):
        for rest in _exps(n - 1, d - k):
            yield (k,) + rest


def monomial(ctx, e):
    return Poly({tuple(e): 1}, ctx)


@pytest.fixture
def rng():
    return random.Random(1234)
