import random

import pytest

from cofcat.chq import ChainComplex, ChainMap
from cofcat.fincat import FinCategory
from cofcat.ratlin import Matrix
from cofcat.reedy import Diagram


def span_category():
    # objects 0, 1, 2; a = morphism 3 : 0 -> 1, b = morphism 4 : 0 -> 2
    return FinCategory.free(3, [(0, 1), (0, 2)], ["a", "b"])


def chain3():
    return FinCategory.free(3, [(0, 1), (1, 2)], ["f", "g"])


def arrow_category():
    return FinCategory.free(2, [(0, 1)], ["a"])


def iso_pair():
    return FinCategory(2, [0, 1, 0, 1], [0, 1, 1, 0], [0, 1], {(3, 2): 0, (2, 3): 1})


def circle():
    return ChainComplex(0, 1, [1, 1], {1: Matrix.zeros(1, 1)})


def point():
    return ChainComplex.point()


def suspension():
    s1, pt = circle(), point()
    collapse = ChainMap(s1, pt, {0: Matrix.identity(1)})
    return Diagram.from_generators(span_category(), [s1, pt, pt], {3: collapse, 4: collapse})


@pytest.fixture
def rng():
    return random.Random(20240611)
