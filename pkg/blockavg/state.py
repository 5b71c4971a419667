# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import math

import numpy as np

from blockavg.exceptions import DomainError


class MassDistribution(np.ndarray):
    """:class:`MassDistribution` is a subclass of :class:`numpy.ndarray`
    holding one probability mass per site. It behaves like a normal 1D
    :class:`numpy.ndarray` of 64-bit floats, with additional init methods for
    the configurations the process is started from

    >>> eta = MassDistribution.dirac(4)
    >>> eta.n
    4
    >>> assert np.array_equal(eta, [1, 0, 0, 0])

    A :class:`MassDistribution` can be manipulated as a normal array

    >>> eta[:2] = eta[:2].mean()
    >>> eta.check()
    >>> float(eta[1])
    0.5
    """

    def __new__(cls, masses) -> MassDistribution:
        return np.asarray(masses, dtype=np.float64).view(cls)

    @property
    def n(self) -> int:
        return self.shape[-1]

    @classmethod
    def dirac(cls, n: int, x0: int = 0) -> MassDistribution:
        """All the mass on the site ``x0``. The worst initial condition"""
        if not (0 <= x0 < n):
            raise DomainError(f"Site {x0} is outside [0, {n})")

        eta = np.zeros(n).view(cls)
        eta[x0] = 1.0

        return eta

    @classmethod
    def uniform(cls, n: int) -> MassDistribution:
        return np.full(n, 1 / n).view(cls)

    @classmethod
    def start(cls, n: int, k: int, x0: int = 0) -> MassDistribution:
        """The configuration with ``k`` sites of mass ``1/k`` each, the state
        right after the initial site is hit for the first time by a block of
        size ``k``. The sites are ``x0, x0 + 1, ...`` (cyclically)"""
        if not (1 <= k <= n):
            raise DomainError(f"Cannot spread the mass on {k} sites out of {n}")

        eta = np.zeros(n).view(cls)
        eta[(x0 + np.arange(k)) % n] = 1 / k

        return eta

    def total(self) -> float:
        return math.fsum(np.asarray(self))

    def check(self, tol: float = 1e-9):
        """Assert nonnegativity and unit total mass within ``tol``"""
        values = np.asarray(self)
        if values.min() < 0:
            raise DomainError(f"Negative mass {values.min()}")

        total = self.total()
        if abs(total - 1) > tol:
            raise DomainError(f"Total mass {total!r} differs from 1 by more than {tol}")

    def renormalize(self) -> float:
        """Rescale in place to unit mass. Returns the drift that was removed"""
        total = self.total()
        self /= total  # type: ignore[misc]

        return total - 1
