# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import pytest

from blockavg.exceptions import DomainError
from blockavg.size import BlockSizeSpec, mixing_time_bounds, ratio_bounds, timescales


def test_deterministic_two(tol):
    n = 1000
    ts = timescales(BlockSizeSpec.deterministic(n, 2))

    assert ts.t_rel == n - 1
    assert abs(ts.t_ent - n * math.log(n) / (2 * math.log(2))) < tol * ts.t_ent
    assert abs(ts.mu - math.log(2)) < tol
    assert ts.sigma2 == 0.0
    assert ts.rho == 0.0

    expected_window = n * math.sqrt(math.log(n)) / (2 * math.sqrt(math.log(2)))
    assert abs(ts.t_w - expected_window) < tol * ts.t_w


def test_cdsz_is_entropic_time_of_pairs(tol):
    n = 500
    ts_pairs = timescales(BlockSizeSpec.deterministic(n, 2))
    ts = timescales(BlockSizeSpec.two_point(n, 1.0))

    assert abs(ts.t_cdsz - ts_pairs.t_ent) < tol * ts.t_cdsz


def test_full_blocks():
    ts = timescales(BlockSizeSpec.deterministic(50, 50))

    assert ts.t_rel == pytest.approx(1.0)
    assert ts.t_ent == pytest.approx(1.0)


def test_two_point_variance():
    ts = timescales(BlockSizeSpec.two_point(1000, 10.0))

    assert ts.sigma2 > 0
    assert ts.rho == pytest.approx(math.sqrt(ts.sigma2) / ts.mu)


def test_t_star_and_t_bar(tol):
    ts = timescales(BlockSizeSpec.deterministic(100, 4))

    assert ts.t_star(0) == ts.t_ent
    assert abs(ts.t_star(1.5) - (ts.t_ent + 1.5 * ts.t_w)) < tol * ts.t_ent
    assert ts.t_bar(2.0) == pytest.approx(50.0)


def test_as_dict():
    d = timescales(BlockSizeSpec.deterministic(100, 4)).as_dict()

    for key in ("t_rel", "t_ent", "t_w", "t_cdsz", "mu", "rho"):
        assert key in d


@pytest.mark.parametrize(
    "spec",
    [
        BlockSizeSpec.deterministic(1000, 2),
        BlockSizeSpec.deterministic(1000, 31),
        BlockSizeSpec.two_point(1000, 3.0),
        BlockSizeSpec.uniform(1000, (2, 3, 4)),
    ],
)
def test_ratio_bounds(spec):
    lower, ratio, upper = ratio_bounds(spec)

    assert lower <= ratio <= upper * (1 + 1e-12)


def test_mixing_time_bounds_ordering():
    spec = BlockSizeSpec.deterministic(1000, 2)
    bounds = mixing_time_bounds(spec, 0.25)

    assert bounds.entropy_lower <= bounds.l2_upper
    assert bounds.entropy_lower <= bounds.entropy_upper


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.5])
def test_mixing_time_bounds_domain(eps):
    with pytest.raises(DomainError):
        mixing_time_bounds(BlockSizeSpec.deterministic(10, 2), eps)
