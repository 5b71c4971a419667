# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math
import pickle

import numpy as np
import pytest

from blockavg.data import SpecKind
from blockavg.exceptions import DomainError, PreconditionError
from blockavg.size import BlockSizeSpec, make_deterministic, make_two_point, size_biased


def test_deterministic():
    spec = make_deterministic(10, 3)

    assert spec.kind is SpecKind.DETERMINISTIC
    assert spec.is_deterministic
    assert spec.k == 3
    assert spec.mean == 3.0
    assert dict(spec.pmf) == {3: 1.0}


@pytest.mark.parametrize("k", [1, 11, 2.5])
def test_deterministic_outside_support(k):
    with pytest.raises(DomainError):
        BlockSizeSpec.deterministic(10, k)


def test_two_point(tol):
    spec = make_two_point(100, 5.0)

    assert spec.kind is SpecKind.TWO_POINT
    assert spec.k is None
    assert abs(spec.pmf[2] - 0.95) < tol
    assert abs(spec.pmf[100] - 0.05) < tol


def test_two_point_zero_weight():
    spec = BlockSizeSpec.two_point(50, 0.0)

    # Zero entries are dropped, leaving a point mass
    assert spec.is_deterministic
    assert spec.k == 2


def test_two_point_full_weight():
    spec = BlockSizeSpec.two_point(50, 50.0)

    assert dict(spec.pmf) == {50: 1.0}


@pytest.mark.parametrize("a", [-0.1, 50.5])
def test_two_point_outside_range(a):
    with pytest.raises(DomainError):
        BlockSizeSpec.two_point(50, a)


def test_table_renormalizes(tol):
    spec = BlockSizeSpec.table(10, {2: 0.1 + 1e-13, 3: 0.9})

    assert abs(math.fsum(spec.probs) - 1) < tol


@pytest.mark.parametrize(
    "table",
    [{2: 0.5, 3: 0.4}, {1: 0.5, 3: 0.5}, {2: 0.5, 11: 0.5}, {2: 1.5, 3: -0.5}],
)
def test_table_invalid(table):
    with pytest.raises(DomainError):
        BlockSizeSpec.table(10, table)


def test_population_too_small():
    with pytest.raises(DomainError):
        BlockSizeSpec.table(1, {2: 1.0})


def test_uniform():
    spec = BlockSizeSpec.uniform(100, [4, 2, 3, 3])

    assert spec.support.tolist() == [2, 3, 4]
    assert np.allclose(spec.probs, 1 / 3)
    assert spec.mean == pytest.approx(3.0)


def test_moments(tol):
    spec = BlockSizeSpec.table(8, {2: 0.5, 4: 0.5})

    assert abs(spec.mean_xlogx - (math.log(2) + 2 * math.log(4))) < tol
    assert abs(spec.mean_xlog2x - (math.log(2) ** 2 + 2 * math.log(4) ** 2)) < tol


def test_pmf_is_read_only():
    spec = BlockSizeSpec.deterministic(10, 2)

    with pytest.raises(TypeError):
        spec.pmf[3] = 0.5  # type: ignore


@pytest.mark.parametrize(
    "spec",
    [
        BlockSizeSpec.deterministic(10, 2),
        BlockSizeSpec.two_point(10, 0.5),
        BlockSizeSpec.table(10, {2: 0.25, 5: 0.75}),
    ],
)
def test_serialization(spec):
    assert BlockSizeSpec.from_dict(spec.to_dict()) == spec
    assert BlockSizeSpec.loads(spec.dumps()) == spec
    assert pickle.loads(pickle.dumps(spec)) == spec


def test_from_dict_unknown_kind():
    with pytest.raises(DomainError):
        BlockSizeSpec.from_dict({"n": 10, "kind": "geometric"})


def test_from_dict_missing_field():
    with pytest.raises(DomainError):
        BlockSizeSpec.from_dict({"n": 10, "kind": "two_point"})


def test_size_biased(tol):
    law = size_biased(BlockSizeSpec.table(10, {2: 0.5, 4: 0.5}))

    assert abs(law.pmf[2] - 1 / 3) < tol
    assert abs(law.pmf[4] - 2 / 3) < tol


def test_size_biased_inconsistent_mean(mocker):
    spec = BlockSizeSpec.table(10, {2: 0.5, 4: 0.5})
    mocker.patch.object(
        BlockSizeSpec, "mean", new_callable=mocker.PropertyMock, return_value=5.0
    )

    with pytest.raises(PreconditionError):
        size_biased(spec)


def test_size_biased_moments(tol):
    law = size_biased(BlockSizeSpec.deterministic(10, 3))
    mu, sigma2 = law.moments()

    assert abs(mu - math.log(3)) < tol
    assert sigma2 == 0.0


def test_size_biased_sample(rng):
    law = size_biased(BlockSizeSpec.table(10, {2: 0.5, 4: 0.5}))
    logs = law.sample_log(rng, 100_000)

    frequency = np.mean(np.isclose(logs, math.log(4)))

    # Binomial standard deviation is about 0.0015
    assert abs(frequency - 2 / 3) < 0.01
