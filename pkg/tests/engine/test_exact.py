# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import numpy as np
import pytest

from blockavg.engine.exact import (
    expected_one_step,
    expected_one_step_l2,
    iter_blocks,
)
from blockavg.engine.dynamics import l2_sq
from blockavg.exceptions import UnsupportedModeError
from blockavg.size import BlockSizeSpec, timescales
from blockavg.state import MassDistribution
from blockavg.walk import DualWalk


SPECS = [
    BlockSizeSpec.deterministic(5, 2),
    BlockSizeSpec.deterministic(5, 3),
    BlockSizeSpec.table(5, {2: 0.5, 3: 0.5}),
    BlockSizeSpec.table(6, {2: 0.2, 6: 0.8}),
]


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_block_probabilities(spec, tol):
    blocks = list(iter_blocks(spec))

    expected = sum(math.comb(spec.n, k) for k in spec.pmf)
    assert len(blocks) == expected
    assert abs(math.fsum(p for p, _ in blocks) - 1) < tol


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_duality(spec, tol):
    walk = DualWalk(spec)
    for x0 in range(spec.n):
        mean = expected_one_step(MassDistribution.dirac(spec.n, x0), spec)

        assert np.max(np.abs(mean - walk.transition_row(x0))) < tol


@pytest.mark.parametrize("spec", SPECS, ids=repr)
def test_l2_identity(spec, rng):
    eta = MassDistribution(rng.dirichlet(np.ones(spec.n)))
    contraction = 1 - 1 / timescales(spec).t_rel

    assert expected_one_step_l2(eta, spec) == pytest.approx(
        contraction * l2_sq(eta), abs=1e-10
    )


def test_too_many_blocks():
    with pytest.raises(UnsupportedModeError):
        list(iter_blocks(BlockSizeSpec.deterministic(40, 20)))
