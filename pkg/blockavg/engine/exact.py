# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Exact one-step expectations by enumeration of every block. Only usable
for tiny populations, where they serve as oracles """

import itertools
import math

import numpy as np

from typing import Iterator, Tuple

from blockavg.exceptions import UnsupportedModeError
from blockavg.size import BlockSizeSpec
from blockavg.state import MassDistribution

from .dynamics import average_block, l2_sq
from .sampling import BlockSample

#: Largest number of blocks the oracles accept to enumerate
MAX_BLOCKS = 2**20


def iter_blocks(spec: BlockSizeSpec) -> Iterator[Tuple[float, BlockSample]]:
    """Yield every block with its probability :math:`p_X(k)/\\binom{n}{k}`

    >>> spec = BlockSizeSpec.deterministic(4, 2)
    >>> round(math.fsum(p for p, _ in iter_blocks(spec)), 12)
    1.0
    """
    n = spec.n
    count = sum(math.comb(n, k) for k in spec.pmf)
    if count > MAX_BLOCKS:
        raise UnsupportedModeError(
            f"Enumerating {count} blocks exceeds the oracle limit {MAX_BLOCKS}"
        )

    for k, p in spec.pmf.items():
        prob = p / math.comb(n, k)
        for sites in itertools.combinations(range(n), k):
            yield prob, BlockSample(np.array(sites, dtype=np.int64))


def expected_one_step(eta: MassDistribution, spec: BlockSizeSpec) -> np.ndarray:
    r""":math:`\mathbb{E}[\eta_1 | \eta_0 = \eta]`"""
    eta = MassDistribution(eta)
    terms = [p * average_block(eta, block) for p, block in iter_blocks(spec)]

    return np.array([math.fsum(col) for col in zip(*terms)]).view(MassDistribution)


def expected_one_step_l2(eta: MassDistribution, spec: BlockSizeSpec) -> float:
    r""":math:`\mathbb{E}[\|\eta_1/\pi - 1\|_2^2 | \eta_0 = \eta]`"""
    eta = MassDistribution(eta)

    return math.fsum(
        p * l2_sq(average_block(eta, block)) for p, block in iter_blocks(spec)
    )
