# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Marked infinitesimal chunks of mass and the law of the size of the pile
carrying them """

from __future__ import annotations

import math

import numpy as np

from dataclasses import dataclass, replace
from typing import Dict, List, Optional, cast

from scipy.stats import binom

from blockavg.engine import BlockSample
from blockavg.exceptions import DomainError
from blockavg.math import is_integer
from blockavg.size import BlockSizeSpec, size_biased

from .ledger import LOG_QUANTUM, Pile


@dataclass(frozen=True)
class ChunkMark:
    """A tag following one lineage of piles

    Attributes
    ----------
    site
        The current position of the chunk
    log_size
        The logarithm of the size of the pile carrying the chunk
    splits
        How many averaging events hit the chunk so far
    """

    site: int
    log_size: float = 0.0
    splits: int = 0

    @property
    def size(self) -> float:
        return math.exp(self.log_size)


def chunk_step(
    mark: ChunkMark, block: BlockSample, rng: np.random.Generator
) -> ChunkMark:
    """Move ``mark`` through one averaging event.

    If the block hits the chunk, the pile is split in ``block.size`` fragments
    and the chunk follows a uniformly chosen one. Fragments are dealt to the
    block sites by a uniform permutation, hence the new site is uniform on
    the block
    """
    if mark.site not in block:
        return mark

    k = block.size
    return replace(
        mark,
        site=int(block.sites[rng.integers(k)]),
        log_size=mark.log_size - math.log(k),
        splits=mark.splits + 1,
    )


def literal_mark_step(
    pile_id: int, splits: Dict[int, List[Pile]], rng: np.random.Generator
) -> int:
    """Follow a mark through the splits returned by
    :meth:`~.LiteralLedger.step`. Returns the id of the pile now carrying it"""
    fragments = splits.get(pile_id)
    if fragments is None:
        return pile_id

    return fragments[rng.integers(len(fragments))].id


def _check_t(t: int):
    if t < 0:
        raise DomainError(f"The time must be nonnegative, got {t}")


def sample_pile_size_direct(
    spec: BlockSizeSpec, t: int, rng: np.random.Generator
) -> float:
    r"""Sample :math:`\log|\zeta_t(U)|` without simulating the system.

    The number of hits is :math:`T \sim \mathrm{Bin}(t, \mathbb{E}[X]/n)`
    and every hit divides the size by an independent size-biased block size
    """
    _check_t(t)
    hits = rng.binomial(t, spec.mean / spec.n)
    if hits == 0:
        return 0.0

    return -math.fsum(size_biased(spec).sample_log(rng, hits))


def sample_pile_sizes_direct(
    spec: BlockSizeSpec, t: int, size: int, rng: np.random.Generator
) -> np.ndarray:
    """Vectorized :func:`sample_pile_size_direct`"""
    _check_t(t)
    hits = rng.binomial(t, spec.mean / spec.n, size=size)

    law = size_biased(spec)
    if spec.is_deterministic:
        return -hits * law.log_support[0]

    logs = law.sample_log(rng, int(hits.sum()))
    owner = np.repeat(np.arange(size), hits)

    return -np.bincount(owner, weights=logs, minlength=size)


def pile_size_law(spec: BlockSizeSpec, t: int) -> Dict[float, float]:
    r"""The exact law of :math:`\log|\zeta_t(U)|` as ``{log size: prob}``

    >>> law = pile_size_law(BlockSizeSpec.deterministic(3, 2), 2)
    >>> [round(law[-j * math.log(2)], 12) for j in range(3)]
    [0.111111111111, 0.444444444444, 0.444444444444]
    """
    _check_t(t)
    hits = binom(t, spec.mean / spec.n)
    law = size_biased(spec)

    if spec.is_deterministic:
        log_k = math.log(spec.k)  # type: ignore
        return {-j * log_k: float(hits.pmf(j)) for j in range(t + 1)}

    steps = [
        (int(round(log_y / LOG_QUANTUM)), log_y, p)
        for log_y, p in zip(law.log_support, law.probs)
    ]

    result: Dict[int, List[float]] = {}
    current: Dict[int, List[float]] = {0: [0.0, 1.0]}
    for j in range(t + 1):
        weight = hits.pmf(j)
        for key, (log_size, p) in current.items():
            entry = result.setdefault(key, [log_size, 0.0])
            entry[1] += weight * p

        following: Dict[int, List[float]] = {}
        for key, (log_size, p) in current.items():
            for key_y, log_y, p_y in steps:
                entry = following.setdefault(key - key_y, [log_size - log_y, 0.0])
                entry[1] += p * p_y
        current = following

    return {log_size: p for log_size, p in result.values()}


def pile_size_at_least(spec: BlockSizeSpec, t: int, theta: float) -> float:
    r""":math:`\Pr(|\zeta_t(U)| \ge \theta)`"""
    _check_t(t)
    if theta <= 0:
        return 1.0
    if theta > 1:
        return 0.0

    log_theta = math.log(theta)
    if spec.is_deterministic:
        # k^{-T} >= theta iff T <= -log(theta)/log(k)
        m = -log_theta / math.log(cast(int, spec.k))
        j = round(m) if is_integer(m) else math.floor(m)
        return float(binom.cdf(j, t, spec.mean / spec.n))

    return math.fsum(
        p
        for log_size, p in pile_size_law(spec, t).items()
        if log_size >= log_theta - 1e-9
    )


def pile_size_tail(spec: BlockSizeSpec, t: int, theta: float) -> float:
    r""":math:`\Pr(|\zeta_t(U)| > \theta)`

    >>> round(pile_size_tail(BlockSizeSpec.deterministic(3, 2), 2, 0.5), 12)
    0.111111111111
    """
    _check_t(t)
    if theta < 0:
        return 1.0
    if theta >= 1:
        return 0.0
    if theta == 0:
        return 1.0

    log_theta = math.log(theta)
    if spec.is_deterministic:
        # k^{-T} > theta iff T < -log(theta)/log(k)
        m = -log_theta / math.log(cast(int, spec.k))
        j = round(m) - 1 if is_integer(m) else math.floor(m)
        return float(binom.cdf(j, t, spec.mean / spec.n))

    return math.fsum(
        p
        for log_size, p in pile_size_law(spec, t).items()
        if log_size > log_theta + 1e-9
    )


def expected_glb(
    spec: BlockSizeSpec,
    t: int,
    a: float,
    eps: float,
    rng: Optional[np.random.Generator] = None,
    samples: int = 100_000,
) -> float:
    r"""The averaged lower bound on :math:`\mathbb{E}[d_\mathrm{TV}(t)]`

    .. math::

        \left(1 - \frac{\Pr(|\zeta_t(U)| < a/n)}{\varepsilon}\right)_+
        (1 - \varepsilon - a^{-1})

    The probability is exact, from the binomial law of the number of hits,
    unless ``rng`` is given for a law that is not a point mass
    """
    if not (a > 1 and 0 < eps < 1):
        raise DomainError(f"Need a > 1 and eps in (0, 1), got a={a}, eps={eps}")

    threshold = a / spec.n
    if spec.is_deterministic or rng is None:
        small = 1 - pile_size_at_least(spec, t, threshold)
    else:
        logs = sample_pile_sizes_direct(spec, t, samples, rng)
        small = float(np.mean(logs < math.log(threshold)))

    return max(1 - small / eps, 0.0) * (1 - eps - 1 / a)


@dataclass(frozen=True)
class MeetingEstimate:
    r"""Monte Carlo estimate of :math:`\Pr(e_t(U) = e_t(U'),\ |\zeta_t(U)|,
    |\zeta_t(U')| < \theta)` for two chunks starting in the same pile"""

    t: int
    theta: float
    estimate: float
    stderr: float
    bound: float

    def as_row(self):
        return [self.t, self.theta, self.estimate, self.stderr, self.bound]


def meeting_probe(
    spec: BlockSizeSpec,
    t: int,
    n_pairs: int,
    rng: np.random.Generator,
    theta: float = 0.5,
) -> MeetingEstimate:
    """Co-evolve ``n_pairs`` independent pairs of chunks, both starting in the
    initial pile, through ``t`` averaging events.

    Each pair lives in its own realization of the process. Only what matters
    for the pair is simulated: whether the chunks share a pile, whether they
    share a site, and their sizes. This has the same law as following the two
    marks through the full system, since the block acts on the pair only
    through which of the two sites it contains
    """
    _check_t(t)
    if n_pairs < 1:
        raise DomainError(f"Need at least one pair, got {n_pairs}")

    n = spec.n
    same_pile = np.ones(n_pairs, dtype=bool)
    same_site = np.ones(n_pairs, dtype=bool)
    log_u = np.zeros(n_pairs)
    log_v = np.zeros(n_pairs)

    support = spec.support.astype(float)
    probs = spec.probs
    for _ in range(t):
        if spec.is_deterministic:
            x = np.full(n_pairs, support[0])
        else:
            x = rng.choice(support, size=n_pairs, p=probs)
        log_x = np.log(x)
        r, u = rng.random((2, n_pairs))

        # Both chunks on one site: the block contains it with prob X/n
        hit = same_site & (r < x / n)
        log_u[hit] -= log_x[hit]
        log_v[hit] -= log_x[hit]
        together = u < 1 / x
        same_pile = np.where(hit, same_pile & together, same_pile)
        landed = np.where(hit, together, same_site)

        # Distinct sites: the block may contain both, either one, or none
        apart = ~same_site
        p_both = x * (x - 1) / (n * (n - 1))
        p_one = x * (n - x) / (n * (n - 1))
        both = apart & (r < p_both)
        only_u = apart & (r >= p_both) & (r < p_both + p_one)
        only_v = apart & (r >= p_both + p_one) & (r < p_both + 2 * p_one)

        log_u[both | only_u] -= log_x[both | only_u]
        log_v[both | only_v] -= log_x[both | only_v]
        same_site = np.where(both, together, landed)

    log_theta = math.log(theta) if theta > 0 else -np.inf
    event = same_site & (log_u < log_theta) & (log_v < log_theta)

    estimate = float(event.mean())
    stderr = math.sqrt(estimate * (1 - estimate) / n_pairs)

    return MeetingEstimate(t, theta, estimate, stderr, theta + 1 / n)


class ChunkTracker:
    """Follows one marked chunk through the blocks of a running simulation.
    Register :meth:`observe` as an observer of the :class:`~.Simulation`

    Attributes
    ----------
    mark
        The current :class:`ChunkMark`
    """

    def __init__(self, mark: ChunkMark, rng: np.random.Generator):
        self.mark = mark
        self.rng = rng

    def observe(self, block: BlockSample):
        self.mark = chunk_step(self.mark, block, self.rng)
