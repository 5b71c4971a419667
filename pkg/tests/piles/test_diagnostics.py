# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import numpy as np
import pytest

from blockavg.engine import BlockSample, BlockSampler, average_block, tv_distance
from blockavg.exceptions import DomainError, PreconditionError, UnsupportedModeError
from blockavg.piles import (
    AggregateLedger,
    LiteralLedger,
    estimate_buckets,
    generation_histogram,
    generation_tv_upper_bound,
    glb_diagnostic,
    small_pile_masses,
    thresholded_mass,
    triangle_upper_bound,
)
from blockavg.size import BlockSizeSpec, timescales
from blockavg.state import MassDistribution


@pytest.fixture
def ledger():
    """Piles 1/2 at 0, 1/4 at 1 and 2"""
    ledger = AggregateLedger.dirac(6)
    ledger.step(BlockSample.of(0, 1))
    ledger.step(BlockSample.of(1, 2))

    yield ledger


def _run(spec, steps, rng, ledger):
    sampler = BlockSampler(spec, rng)
    eta = MassDistribution.dirac(spec.n)
    for _ in range(steps):
        block = sampler.sample()
        eta = average_block(eta, block, out=eta)
        ledger.step(block)

    return eta


def test_thresholded_mass(ledger):
    assert thresholded_mass(ledger, 0.5) == pytest.approx(0.5)
    assert thresholded_mass(ledger, 0.25) == pytest.approx(1.0)
    assert thresholded_mass(ledger, 0.3) == pytest.approx(0.5)
    assert thresholded_mass(ledger, 1.5) == 0.0


def test_thresholded_mass_below_floor(ledger):
    with pytest.raises(PreconditionError, match="floor"):
        thresholded_mass(ledger, ledger.floor_threshold / 2)


def test_glb_diagnostic(ledger):
    # Piles of size at least 2/6 hold half the mass
    assert glb_diagnostic(ledger, 2.0, 0.6) == pytest.approx(1 - 0.6 - 0.5)
    assert glb_diagnostic(ledger, 2.0, 0.4) == 0.0


@pytest.mark.parametrize("a, eps", [(1.0, 0.1), (2.0, 0.0), (2.0, 1.0)])
def test_glb_diagnostic_domain(ledger, a, eps):
    with pytest.raises(DomainError):
        glb_diagnostic(ledger, a, eps)


@pytest.mark.parametrize("a", [2.0, 5.0, 20.0])
def test_glb_below_tv(a, rng):
    spec = BlockSizeSpec.deterministic(40, 2)
    sampler = BlockSampler(spec, rng)
    eta = MassDistribution.dirac(40)
    ledger = AggregateLedger.dirac(40)

    for _ in range(400):
        block = sampler.sample()
        eta = average_block(eta, block, out=eta)
        ledger.step(block)

        for eps in (0.05, 0.3):
            assert glb_diagnostic(ledger, a, eps) <= tv_distance(eta) + 1e-9


def test_small_pile_masses(ledger):
    small = small_pile_masses(ledger, 0.3)

    assert np.allclose(small, [0, 0.25, 0.25, 0, 0, 0])


def test_triangle_upper_bound(rng):
    spec = BlockSizeSpec.deterministic(30, 2)
    ledger = AggregateLedger.dirac(30)
    _run(spec, 200, rng, ledger)
    t_rel = timescales(spec).t_rel

    bound = triangle_upper_bound(ledger, 0.05, 100, t_rel)
    small = small_pile_masses(ledger, 0.05)
    expected = 1 - small.sum() + math.exp(-100 / (2 * t_rel)) * 30 * small.max()

    assert bound == pytest.approx(expected)


def test_generation_histogram(ledger):
    histogram = generation_histogram(ledger, 2)

    assert histogram.k == 2
    assert histogram.masses == pytest.approx({1: 0.5, 2: 0.5})
    assert histogram.dust == 0.0
    assert histogram.total() == pytest.approx(1)
    rows = list(histogram.rows(7))
    assert [row[:2] for row in rows] == [[7, 1], [7, 2]]
    assert [row[2] for row in rows] == pytest.approx([0.5, 0.5])


def test_generation_histogram_needs_deterministic(ledger):
    with pytest.raises(UnsupportedModeError):
        generation_histogram(ledger, BlockSizeSpec.table(6, {2: 0.5, 3: 0.5}))


def test_generation_histogram_mismatched_k(ledger):
    with pytest.raises(UnsupportedModeError):
        generation_histogram(ledger, 3)


def test_generation_histogram_literal(rng):
    spec = BlockSizeSpec.deterministic(10, 3)
    ledger = LiteralLedger.from_masses(MassDistribution.dirac(10), rng)
    _run(spec, 15, rng, ledger)

    histogram = generation_histogram(ledger, spec)
    assert histogram.total() == pytest.approx(1)


def test_generation_tv_upper_bound(rng):
    spec = BlockSizeSpec.deterministic(30, 2)
    ledger = AggregateLedger.dirac(30)
    eta = _run(spec, 300, rng, ledger)

    assert tv_distance(eta) <= generation_tv_upper_bound(ledger, spec) + 1e-12


def test_estimate_buckets():
    spec = BlockSizeSpec.deterministic(8, 2)

    # Sizes 1, 1/2, ..., 1/2^23 are above 1/(8 2^20), on each of the 8 sites
    assert estimate_buckets(8, spec) == 8 * 24
    assert estimate_buckets(8, spec, floor=0.25) == 8 * 3


def test_estimate_buckets_two_sizes():
    spec = BlockSizeSpec.table(10, {2: 0.5, 3: 0.5})

    # 2^-a 3^-b >= 1/10: (0,0) (1,0) (2,0) (3,0) (0,1) (1,1) (0,2)
    assert estimate_buckets(10, spec, floor=0.1) == 10 * 7


def test_estimate_buckets_cap():
    spec = BlockSizeSpec.uniform(10**6, range(2, 40))

    assert estimate_buckets(10**6, spec, cap=1000) == 1000


def test_estimate_buckets_wide_support_saturates_early():
    # Far too many products to enumerate, the count must stop at the cap
    spec = BlockSizeSpec.uniform(10**6, range(2, 400))

    assert estimate_buckets(10**6, spec, floor=1e-300, cap=10**8) == 10**8
