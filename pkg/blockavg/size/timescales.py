# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" The characteristic times of the block average process. Every time is
measured in steps (number of averaging events) and every logarithm is
natural """

from __future__ import annotations

import math

from dataclasses import dataclass
from typing import NamedTuple, Tuple

from blockavg.exceptions import DomainError

from .spec import BlockSizeSpec


@dataclass(frozen=True)
class TimescaleSet:
    r"""The timescales of a :class:`~.BlockSizeSpec`

    Attributes
    ----------
    n
        The population size
    mean
        :math:`\mathbb{E}[X]`
    mu
        :math:`\mu = \mathbb{E}[\log Y] = \mathbb{E}[X \log X]/\mathbb{E}[X]`
    sigma2
        :math:`\sigma^2 = \mathrm{Var}(\log Y)`
    t_rel
        The relaxation time :math:`(n-1)/(\mathbb{E}[X]-1)`
    t_ent
        The entropic time :math:`n \log n / \mathbb{E}[X \log X]`
    t_w
        The cutoff window
        :math:`(1 + \sigma/\mu) n \sqrt{\log n}/(\mathbb{E}[X]\sqrt{\mu})`
    rho
        :math:`\sigma/\mu`
    """

    n: int
    mean: float
    mu: float
    sigma2: float
    t_rel: float
    t_ent: float
    t_w: float
    rho: float

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def t_cdsz(self) -> float:
        r"""The cutoff time :math:`n \log n/(2 \log 2)` of the process with
        blocks of size 2, the reference scale of the half-cutoff regime"""
        return self.n * math.log(self.n) / (2 * math.log(2))

    def t_star(self, beta: float) -> float:
        r""":math:`t_\star(\beta) = t_\mathrm{ent} + \beta t_w`"""
        return self.t_ent + beta * self.t_w

    def t_bar(self, beta: float) -> float:
        r""":math:`\bar{t}(\beta) = \beta n/\mathbb{E}[X]`, the polynomial
        (non-cutoff) scale"""
        return beta * self.n / self.mean

    def as_dict(self):
        return {
            "n": self.n,
            "mean": self.mean,
            "mu": self.mu,
            "sigma2": self.sigma2,
            "rho": self.rho,
            "t_rel": self.t_rel,
            "t_ent": self.t_ent,
            "t_w": self.t_w,
            "t_cdsz": self.t_cdsz,
        }


def timescales(spec: BlockSizeSpec) -> TimescaleSet:
    """Compute the timescales of ``spec``

    >>> ts = timescales(BlockSizeSpec.deterministic(101, 2))
    >>> ts.t_rel
    100.0
    >>> ts.rho
    0.0
    """
    n = spec.n
    mean = spec.mean
    xlogx = spec.mean_xlogx

    mu = xlogx / mean
    # Cancellation can leave a tiny negative variance for point masses
    sigma2 = max(spec.mean_xlog2x / mean - mu**2, 0.0)
    if spec.is_deterministic:
        sigma2 = 0.0

    log_n = math.log(n)
    sigma = math.sqrt(sigma2)

    return TimescaleSet(
        n=n,
        mean=mean,
        mu=mu,
        sigma2=sigma2,
        t_rel=(n - 1) / (mean - 1),
        t_ent=n * log_n / xlogx,
        t_w=(1 + sigma / mu) * n * math.sqrt(log_n) / (mean * math.sqrt(mu)),
        rho=sigma / mu,
    )


class MixingTimeBounds(NamedTuple):
    """A priori bounds on the mixing time at accuracy ``eps``"""

    eps: float
    l2_upper: float
    entropy_upper: float
    entropy_lower: float


def mixing_time_bounds(spec: BlockSizeSpec, eps: float) -> MixingTimeBounds:
    r"""The bounds on :math:`t_\mathrm{mix}(\varepsilon)` that follow from the
    exact :math:`L^2` contraction and from the entropy decay:

    .. math::

        t_\mathrm{mix} \le t_\mathrm{rel}(\log n - 2\log\varepsilon)

        t_\mathrm{mix} \le 2 t_\mathrm{ent}(\log\log n - \log(\sqrt{2}
        \varepsilon))

        t_\mathrm{mix} \ge \left(1 - \frac{\varepsilon n}{n-1}\right)
        t_\mathrm{ent}
    """
    if not (0 < eps < 1):
        raise DomainError(f"The accuracy must lie in (0, 1), got {eps}")

    ts = timescales(spec)
    n = spec.n

    return MixingTimeBounds(
        eps=eps,
        l2_upper=ts.t_rel * (math.log(n) - 2 * math.log(eps)),
        entropy_upper=2
        * ts.t_ent
        * (math.log(math.log(n)) - math.log(math.sqrt(2) * eps)),
        entropy_lower=max(1 - eps * n / (n - 1), 0.0) * ts.t_ent,
    )


def ratio_bounds(spec: BlockSizeSpec) -> Tuple[float, float, float]:
    r"""Return ``(lower, ratio, upper)`` with :math:`t_\mathrm{ent}/t_\mathrm{rel}`
    sandwiched as

    .. math::

        1 \le \frac{t_\mathrm{ent}}{t_\mathrm{rel}} \le \frac{n}{n-1}
        \frac{\mathbb{E}[X]-1}{\mathbb{E}[X]} \frac{\log n}{\log \mathbb{E}[X]}
    """
    ts = timescales(spec)
    n = spec.n
    mean = ts.mean

    upper = n / (n - 1) * (mean - 1) / mean * math.log(n) / math.log(mean)

    return 1.0, ts.t_ent / ts.t_rel, upper
