"""Shared helpers for the test suite."""

from fractions import Fraction

import pytest
from hypothesis import settings

from mutpot.exprparse import parse_expression, parse_laurent
from mutpot.lattice import SkewForm
from mutpot.mutation import ExchangeCollection

# Some of the heavier algebraic properties take a while per example; we would
# rather have hypothesis explore more cases than bail on a deadline.
settings.register_profile("mutpot", deadline=None, max_examples=60)
settings.load_profile("mutpot")


def L(text, rank=2):
    """Parse a Laurent polynomial (test shorthand)."""
    poly = parse_laurent(text, rank)
    return poly


def F(text, rank=2):
    """Parse a possibly-rational expression (test shorthand)."""
    return parse_expression(text, rank)


def omega(k):
    """Rank-2 skew form with form(e1, e2) = k."""
    return SkewForm(((0, k), (-k, 0)))


def coll(*entries):
    """Exchange collection from (vector, multiplicity) pairs or bare vectors."""
    vectors = []
    for entry in entries:
        if len(entry) == 2 and isinstance(entry[1], int) and not isinstance(entry[0], int):
            vec, mult = entry
        else:
            vec, mult = entry, 1
        vectors.append((tuple(vec), mult))
    rank = len(vectors[0][0])
    return ExchangeCollection(rank, tuple(vectors))


@pytest.fixture
def omega1():
    return omega(1)


@pytest.fixture
def omega2():
    return omega(2)


def frac(p, q=1):
    return Fraction(p, q)
