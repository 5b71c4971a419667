# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import numpy as np

from blockavg.exceptions import DomainError
from blockavg.size import BlockSizeSpec, timescales
from blockavg.state import MassDistribution


class DualWalk:
    r"""The random walk :math:`P_\mathrm{RW}` in duality with the masses,
    :math:`\mathbb{E}[\eta_t(x)] = P_\mathrm{RW}^t(x_0, x)`.

    By exchangeability it has only two parameters: the walker stays put with
    probability :attr:`stay` and moves to each other site with probability
    :attr:`hop`. The matrix is never built

    >>> walk = DualWalk(BlockSizeSpec.deterministic(3, 2))
    >>> round(walk.stay, 12), round(walk.hop, 12)
    (0.666666666667, 0.166666666667)

    Attributes
    ----------
    stay
        :math:`1 - (\mathbb{E}[X] - 1)/n`
    hop
        :math:`(\mathbb{E}[X] - 1)/(n(n-1))`
    eigenvalue
        The eigenvalue :math:`\lambda = 1 - (\mathbb{E}[X] - 1)/(n - 1)` of
        the vectors orthogonal to the constants
    """

    def __init__(self, spec: BlockSizeSpec):
        self.spec = spec
        self.n = n = spec.n

        mean = spec.mean
        self.stay = 1 - (mean - 1) / n
        self.hop = (mean - 1) / (n * (n - 1))
        self.eigenvalue = 1 - (mean - 1) / (n - 1)

    @property
    def t_rel(self) -> float:
        return timescales(self.spec).t_rel

    def _check_site(self, x: int):
        if not (0 <= x < self.n):
            raise DomainError(f"Site {x} is outside [0, {self.n})")

    def apply(self, v: np.ndarray) -> np.ndarray:
        r""":math:`P_\mathrm{RW} v`, in :math:`O(n)`"""
        v = np.asarray(v, dtype=float)
        return (self.stay - self.hop) * v + self.hop * np.sum(v)

    def transition_row(self, x: int) -> MassDistribution:
        """The law of the walk after one step from ``x``"""
        self._check_site(x)

        row = np.full(self.n, self.hop).view(MassDistribution)
        row[x] = self.stay

        return row

    def t_step_distribution(self, x0: int, t: int) -> MassDistribution:
        r"""The law of the walk after ``t`` steps from ``x0``: the mass at
        ``x0`` is :math:`1/n + (1 - 1/n)\lambda^t`, the rest is spread
        uniformly"""
        self._check_site(x0)
        if t < 0:
            raise DomainError(f"The time must be nonnegative, got {t}")

        n = self.n
        at_x0 = 1 / n + (1 - 1 / n) * self.eigenvalue**t

        row = np.full(n, (1 - at_x0) / (n - 1)).view(MassDistribution)
        row[x0] = at_x0

        return row

    def jensen_lower_bound(self, t: int) -> float:
        r"""The lower bound :math:`\frac12(1 - 1/t_\mathrm{rel})^t` on
        :math:`\mathbb{E}[d_\mathrm{TV}(t)]`"""
        if t < 0:
            raise DomainError(f"The time must be nonnegative, got {t}")

        return 0.5 * (1 - 1 / self.t_rel) ** t


def transition_row(walk: DualWalk, x: int) -> MassDistribution:
    return walk.transition_row(x)


def t_step_distribution(walk: DualWalk, x0: int, t: int) -> MassDistribution:
    return walk.t_step_distribution(x0, t)


def jensen_lower_bound(walk: DualWalk, t: int) -> float:
    return walk.jensen_lower_bound(t)
