# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import pytest

from scipy.stats import poisson

from blockavg.math import is_integer, normal_cdf, poisson_cdf, round_half_up


def test_normal_cdf():
    assert normal_cdf(0) == 0.5
    assert normal_cdf(1.0) + normal_cdf(-1.0) == pytest.approx(1)


@pytest.mark.parametrize("lam", [0.1, 1.0, 7.5])
@pytest.mark.parametrize("j", [0, 1, 2.5, 10])
def test_poisson_cdf(j, lam):
    assert poisson_cdf(j, lam) == pytest.approx(poisson.cdf(math.floor(j), lam))


def test_poisson_cdf_edges():
    assert poisson_cdf(-1, 2.0) == 0.0
    assert poisson_cdf(0, 0.0) == 1.0


@pytest.mark.parametrize(
    "x, expected", [(0.5, 1), (1.49, 1), (2.5, 3), (-0.5, 0), (-1.5, -1)]
)
def test_round_half_up(x, expected):
    assert round_half_up(x) == expected


def test_is_integer():
    assert is_integer(3.0)
    assert is_integer(1 / 0.2)
    assert not is_integer(1 / 0.3)
