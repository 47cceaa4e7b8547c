import random
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

import pytest

from holonomic import Context, OreAlgebra, OrePolynomial, Polynomial, RationalFunction
from holonomic.expressions import parse_algebra


@pytest.fixture
def laguerre_algebra():
    return parse_algebra("S[n], S[a], Der[x]")


@pytest.fixture
def laguerre_ops():
    return ["S[a] + Der[x] - 1",
            "(n+1)*S[n] - x*Der[x] + (-a-n+x-1)",
            "x*Der[x]^2 + (a-x+1)*Der[x] + n"]


def random_polynomial(ctx: Context, rng: random.Random, nterms=3, maxdeg=2, coeff_range=4):
    terms = {}
    for _ in range(nterms):
        exp = tuple(rng.randint(0, maxdeg) for _ in ctx.names)
        terms[exp] = Fraction(rng.randint(-coeff_range, coeff_range))
    return Polynomial(ctx, terms)


def random_ratfun(ctx: Context, rng: random.Random, **kw) -> RationalFunction:
    num = random_polynomial(ctx, rng, **kw)
    den = random_polynomial(ctx, rng, **kw)
    while den.is_zero():
        den = random_polynomial(ctx, rng, **kw)
    return RationalFunction(num, den)


def random_operator(algebra: OreAlgebra, rng: random.Random, nterms=2, maxexp=1,
                    coeff_terms=2, coeff_deg=1) -> OrePolynomial:
    terms = {}
    for _ in range(nterms):
        mon = tuple(rng.randint(0, maxexp) for _ in range(algebra.nmon))
        num = random_polynomial(algebra.ctx, rng, nterms=coeff_terms, maxdeg=coeff_deg)
        den = random_polynomial(algebra.ctx, rng, nterms=1, maxdeg=coeff_deg, coeff_range=3)
        if num.is_zero() or den.is_zero():
            continue
        terms[mon] = RationalFunction(num, den)
    return OrePolynomial(algebra, terms)
