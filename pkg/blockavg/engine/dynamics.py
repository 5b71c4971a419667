# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" The mass dynamics and the distance-to-equilibrium functionals. The
equilibrium is the uniform distribution :math:`\\pi = 1/n` """

from __future__ import annotations

import math

import numpy as np

from typing import Optional, Tuple

from scipy.special import xlogy

from blockavg.exceptions import InvariantError
from blockavg.size import BlockSizeSpec, TimescaleSet, timescales
from blockavg.state import MassDistribution

from .sampling import BlockSample, BlockSampler

#: Largest change of the block mass tolerated across one averaging event
MASS_TOL = 1e-9


def average_block(
    eta: MassDistribution,
    block: BlockSample,
    out: Optional[MassDistribution] = None,
) -> MassDistribution:
    """Replace the masses in ``block`` by their arithmetic mean.

    The block sum is computed once and divided once. Pass ``out=eta`` to
    average in place

    >>> eta = MassDistribution([0.5, 0.25, 0.25, 0])
    >>> average_block(eta, BlockSample.of(1, 2, 3))[3] == 1 / 6
    True
    """
    if out is None:
        out = eta.copy()
    elif out is not eta:
        out[:] = eta

    sites = block.sites
    out[sites] = np.sum(eta[sites]) / len(sites)

    return out


def step(
    eta: MassDistribution, sampler: BlockSampler, inplace: bool = False
) -> Tuple[MassDistribution, BlockSample]:
    """One averaging event: draw a block from ``sampler`` (which carries the
    block size law and the random state) and average over it.

    The block is returned for downstream consumers (pile ledgers, marked
    chunks, detection of the first hit of the initial site). An
    :class:`~.InvariantError` is raised if the averaging changed the mass
    of the block
    """
    block = sampler.sample()
    sites = block.sites
    before = float(np.sum(eta[sites]))
    eta = average_block(eta, block, out=eta if inplace else None)

    after = float(np.sum(eta[sites]))
    if abs(after - before) > MASS_TOL or eta[sites[0]] < 0:
        raise InvariantError(
            f"Averaging on {block} moved the block mass from {before!r} to {after!r}"
        )

    return eta, block


def tv_distance(eta: np.ndarray) -> float:
    r""":math:`\frac12 \sum_x |\eta(x) - 1/n|`

    >>> tv_distance(MassDistribution.dirac(4))
    0.75
    """
    n = eta.shape[-1]
    return 0.5 * math.fsum(np.abs(np.asarray(eta) - 1 / n))


def relative_entropy(eta: np.ndarray) -> float:
    r""":math:`D(\eta\|\pi) = \sum_x \eta(x) \log(n \eta(x))` with
    :math:`0 \log 0 = 0`"""
    n = eta.shape[-1]
    eta = np.asarray(eta)
    return max(math.fsum(xlogy(eta, n * eta)), 0.0)


def l2_sq(eta: np.ndarray) -> float:
    r""":math:`\|\eta/\pi - 1\|_2^2 = \frac1n \sum_x (n\eta(x) - 1)^2`

    >>> l2_sq(MassDistribution.dirac(5))
    4.0
    """
    n = eta.shape[-1]
    return math.fsum((n * np.asarray(eta) - 1) ** 2) / n


def max_mass(eta: np.ndarray) -> float:
    return float(np.max(eta))


def entropy_upper_bound(
    ts: TimescaleSet, t: int, d0: Optional[float] = None
) -> float:
    r"""The contraction :math:`\mathbb{E}[D(\eta_t\|\pi)] \le
    (1 - 1/t_\mathrm{ent})^t D(\eta_0\|\pi)`. ``d0`` defaults to the
    entropy :math:`\log n` of a Dirac mass"""
    if d0 is None:
        d0 = math.log(ts.n)

    return (1 - 1 / ts.t_ent) ** t * d0


def entropy_lower_bound(
    ts: TimescaleSet, t: int, d0: Optional[float] = None
) -> float:
    r"""The entropy decreases at most by :math:`\log n / t_\mathrm{ent}` per
    step in expectation, so :math:`\mathbb{E}[D(\eta_t\|\pi)] \ge D(\eta_0\|\pi)
    - t \log n/t_\mathrm{ent}`"""
    if d0 is None:
        d0 = math.log(ts.n)

    return max(d0 - t * math.log(ts.n) / ts.t_ent, 0.0)


def expected_l2_sq(spec: BlockSizeSpec, t: int, eta0: np.ndarray) -> float:
    r""":math:`\mathbb{E}\|\eta_t/\pi - 1\|_2^2 = (1 - 1/t_\mathrm{rel})^t
    \|\eta_0/\pi - 1\|_2^2`"""
    ts = timescales(spec)
    return (1 - 1 / ts.t_rel) ** t * l2_sq(eta0)
