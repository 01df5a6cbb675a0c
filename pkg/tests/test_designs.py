"""Tests for decompforge.core.designs"""

import math

import pytest

from decompforge.core.designs import (
    DesignParams,
    design_count_leading,
    design_divisibility,
    matching_from_blocks,
    steiner_auxiliary,
    steiner_from_matching,
)
from decompforge.core.errors import InvalidInputError, InvalidInstanceError
from decompforge.core.verify import verify_perfect_matching


def test_divisibility():
    assert design_divisibility(DesignParams(7, 3, 2))
    assert not design_divisibility(DesignParams(6, 3, 2))
    assert design_divisibility(DesignParams(5, 5, 3))


def test_count_leading_term():
    assert design_count_leading(DesignParams(7, 3, 2)) == pytest.approx(7 * math.log(5 / math.e**2))
    assert design_count_leading(DesignParams(9, 3, 2)) == pytest.approx(12 * math.log(7 / math.e**2))


def test_count_requires_divisibility():
    with pytest.raises(InvalidInstanceError):
        design_count_leading(DesignParams(6, 3, 2))


def test_invalid_parameters():
    with pytest.raises(InvalidInputError):
        DesignParams(3, 4, 2)


def test_steiner_auxiliary_sizes():
    H = steiner_auxiliary(DesignParams(7, 3, 2))
    assert (H.n, H.m, H.r) == (21, 35, 3)
    single = steiner_auxiliary(DesignParams(4, 4, 2))
    assert single.m == 1
    assert single.r == single.n == 6


def test_fano_is_a_perfect_matching_of_the_auxiliary(fano):
    p = DesignParams(7, 3, 2)
    H = steiner_auxiliary(p)
    M = matching_from_blocks(p, fano)
    assert verify_perfect_matching(H, M).accepted
    assert steiner_from_matching(p, M) == frozenset(fano)
