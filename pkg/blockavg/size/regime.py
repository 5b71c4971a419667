# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import math

import numpy as np

from dataclasses import dataclass

from blockavg.data import RegimeLabel
from blockavg.exceptions import DomainError

from .spec import BlockSizeSpec, size_biased


@dataclass(frozen=True)
class RegimeThresholds:
    """Finite-n cuts used to turn the asymptotic conditions into labels.

    The asymptotic statements only say "much smaller than"; every finite cut
    is a choice and therefore lives in the experiment configuration

    Attributes
    ----------
    mu_ratio
        Largest :math:`\\mu/\\log n` compatible with cutoff
    sigma_ratio
        Largest :math:`\\sigma^2/(\\mu \\log n)` compatible with cutoff
    lindeberg
        Largest Lindeberg statistic compatible with a Gaussian window
    delta
        The :math:`\\delta` at which the Lindeberg statistic is evaluated
    """

    mu_ratio: float = 0.2
    sigma_ratio: float = 0.2
    lindeberg: float = 0.2
    delta: float = 1.0


@dataclass(frozen=True)
class RegimeDiagnostics:
    mu_ratio: float
    sigma_ratio: float
    lindeberg: float
    label: RegimeLabel


def lindeberg_statistic(spec: BlockSizeSpec, delta: float = 1.0) -> float:
    r"""The finite-n Lindeberg quantity of the array :math:`\log Y`

    .. math::

        \mathbb{E}\left[z^2 \mathbf{1}_{|z| > \delta\sqrt{\log n/\mu}}\right],
        \qquad z = \frac{\log Y - \mu}{\sigma}

    It is zero when :math:`\log Y` is constant
    """
    if delta <= 0:
        raise DomainError(f"delta must be positive, got {delta}")

    law = size_biased(spec)
    mu, sigma2 = law.moments()

    if spec.is_deterministic or sigma2 <= 0:
        return 0.0

    z = (law.log_support - mu) / math.sqrt(sigma2)
    cut = delta * math.sqrt(math.log(spec.n) / mu)

    return math.fsum(law.probs * z**2 * (np.abs(z) > cut))


def regime_classify(
    spec: BlockSizeSpec, thresholds: RegimeThresholds = RegimeThresholds()
) -> RegimeDiagnostics:
    """Heuristic finite-n regime label of ``spec``.

    No cutoff is expected if either the entropic product condition or the
    variance condition fails. Otherwise the Lindeberg statistic decides
    whether the Gaussian profile is expected (cutoff) or only the window
    scale is (window)

    >>> regime_classify(BlockSizeSpec.deterministic(10**6, 2)).label.value
    'cutoff-candidate'
    """
    law = size_biased(spec)
    mu, sigma2 = law.moments()
    if spec.is_deterministic:
        sigma2 = 0.0

    log_n = math.log(spec.n)
    mu_ratio = mu / log_n
    sigma_ratio = sigma2 / (mu * log_n)
    lindeberg = lindeberg_statistic(spec, thresholds.delta)

    if mu_ratio >= thresholds.mu_ratio or sigma_ratio >= thresholds.sigma_ratio:
        label = RegimeLabel.NO_CUTOFF
    elif lindeberg >= thresholds.lindeberg:
        label = RegimeLabel.WINDOW
    else:
        label = RegimeLabel.CUTOFF

    return RegimeDiagnostics(mu_ratio, sigma_ratio, lindeberg, label)
