# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Bounds on the distance to equilibrium read off a single realization of
the piles """

from __future__ import annotations

import math

import numpy as np

from dataclasses import dataclass
from typing import Dict, Iterator, List, Union

from blockavg.exceptions import DomainError, PreconditionError, UnsupportedModeError
from blockavg.size import BlockSizeSpec

from .ledger import PileLedger, default_floor

#: Tolerance (in nats) when comparing a pile log-size with a threshold
LOG_TOL = 1e-9


def _check_threshold(ledger: PileLedger, threshold: float):
    if threshold < ledger.floor_threshold:
        raise PreconditionError(
            f"Threshold {threshold!r} lies below the dust floor "
            f"{ledger.floor_threshold!r} of the ledger"
        )


def thresholded_mass(ledger: PileLedger, threshold: float) -> float:
    """Total mass held in piles of size at least ``threshold``"""
    if threshold > 1:
        return 0.0

    _check_threshold(ledger, threshold)
    if threshold <= 0:
        return ledger.pile_mass()

    log_threshold = math.log(threshold) - LOG_TOL

    return math.fsum(
        count * math.exp(log_size)
        for _, log_size, count in ledger.iter_piles()
        if log_size >= log_threshold
    )


def glb_diagnostic(ledger: PileLedger, a: float, eps: float) -> float:
    r"""A lower bound on the distance to equilibrium of the current state

    .. math::

        \mathbf{1}\{|w_t| > 1 - \varepsilon\}(1 - \varepsilon - a^{-1})

    with :math:`|w_t|` the mass in piles of size at least :math:`a/n`. The
    value can be negative, in which case it carries no information
    """
    if not (a > 1 and 0 < eps < 1):
        raise DomainError(f"Need a > 1 and eps in (0, 1), got a={a}, eps={eps}")

    w = thresholded_mass(ledger, a / ledger.n)
    if w > 1 - eps:
        return 1 - eps - 1 / a

    return 0.0


def small_pile_masses(ledger: PileLedger, threshold: float) -> np.ndarray:
    """Per-site mass in piles smaller than ``threshold``, dust included"""
    _check_threshold(ledger, threshold)
    log_threshold = math.log(threshold) - LOG_TOL if threshold > 0 else -np.inf

    masses: List[List[float]] = [[d] for d in ledger.dust]
    for site, log_size, count in ledger.iter_piles():
        if log_size < log_threshold:
            masses[site].append(count * math.exp(log_size))

    return np.array([math.fsum(m) for m in masses])


def triangle_upper_bound(
    ledger: PileLedger, threshold: float, s: int, t_rel: float
) -> float:
    r"""Upper bound on the expected distance to equilibrium ``s`` steps after
    the current state

    .. math::

        1 - |\xi| + e^{-s/(2 t_\mathrm{rel})} n \|\xi\|_\infty

    where :math:`\xi` is the mass held in piles smaller than ``threshold``
    """
    xi = small_pile_masses(ledger, threshold)
    return 1 - math.fsum(xi) + math.exp(-s / (2 * t_rel)) * ledger.n * xi.max()


@dataclass(frozen=True)
class GenerationHistogram:
    """Masses of the generations of piles for a deterministic block size.
    Generation ``j`` holds the piles of size exactly ``k**-j``

    Attributes
    ----------
    k
        The block size
    masses
        Maps the generation to its total mass
    dust
        The mass below the dust floor
    """

    k: int
    masses: Dict[int, float]
    dust: float

    def total(self) -> float:
        return math.fsum(self.masses.values()) + self.dust

    def rows(self, t: int) -> Iterator[List]:
        """Rows ``t,j,mass`` of the generation CSV"""
        for j, mass in sorted(self.masses.items()):
            yield [t, j, mass]


def _block_size(k: Union[int, BlockSizeSpec]) -> int:
    if isinstance(k, BlockSizeSpec):
        if not k.is_deterministic:
            raise UnsupportedModeError(
                "Generations are only defined for a deterministic block size"
            )
        return k.k  # type: ignore

    return int(k)


def _generations(ledger: PileLedger, k: int) -> Iterator:
    log_k = math.log(k)
    for site, log_size, count in ledger.iter_piles():
        j = -log_size / log_k
        if abs(j - round(j)) > 1e-6:
            raise UnsupportedModeError(
                f"Pile of size {math.exp(log_size)!r} is not a power of 1/{k}"
            )
        yield int(round(j)), site, count * math.exp(log_size)


def generation_histogram(
    ledger: PileLedger, k: Union[int, BlockSizeSpec]
) -> GenerationHistogram:
    """Bin the pile mass by generation. Pass the spec of the run to have
    non-deterministic block sizes refused"""
    k = _block_size(k)

    masses: Dict[int, List[float]] = {}
    for j, _, mass in _generations(ledger, k):
        masses.setdefault(j, []).append(mass)

    return GenerationHistogram(
        k, {j: math.fsum(m) for j, m in sorted(masses.items())}, ledger.dust_mass()
    )


def generation_tv_upper_bound(
    ledger: PileLedger, k: Union[int, BlockSizeSpec]
) -> float:
    r"""The triangle inequality over generations

    .. math::

        d_\mathrm{TV} \le \sum_j |\hat\eta^{(j)}| \,
        \Big\| \frac{\hat\eta^{(j)}}{|\hat\eta^{(j)}|} - \pi \Big\|_\mathrm{TV}
        + |\mathrm{dust}|
    """
    k = _block_size(k)
    n = ledger.n

    per_site: Dict[int, np.ndarray] = {}
    for j, site, mass in _generations(ledger, k):
        per_site.setdefault(j, np.zeros(n))[site] += mass

    bound = [ledger.dust_mass()]
    for eta_j in per_site.values():
        mass = math.fsum(eta_j)
        bound.append(0.5 * math.fsum(np.abs(eta_j - mass / n)))

    return math.fsum(bound)


def estimate_buckets(
    n: int, spec: BlockSizeSpec, floor: float = 0.0, cap: int = 2**40
) -> int:
    """Worst-case number of aggregate buckets a ledger can hold, saturating
    at ``cap``.

    A bucket is a distinct pile size at a site. Live sizes are products of
    inverse block sizes above the floor, so there are at most ``n`` times as
    many buckets as such products
    """
    floor = floor if floor else default_floor(n)
    logs = sorted((math.log(k) for k in spec.pmf), reverse=True)

    # Distinct products counted so far, n per product is compared with the cap
    found = 0
    limit = -(-cap // n)

    def count(i: int, budget: float):
        nonlocal found
        if i == len(logs) - 1:
            found += int(budget // logs[i]) + 1
            return

        while budget >= 0 and found < limit:
            count(i + 1, budget)
            budget -= logs[i]

    count(0, -math.log(floor) + LOG_TOL)

    return min(n * found, cap)
