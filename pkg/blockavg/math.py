# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" General purpose math primitives. All logarithms are natural (nats) """
import math

import numpy as np

from typing import Union

from scipy.special import ndtr, pdtr

ArrayAndScalar = Union[np.ndarray, float]


def normal_cdf(x: ArrayAndScalar) -> ArrayAndScalar:
    r"""The standard Gaussian CDF :math:`\Phi`.

    :func:`scipy.special.ndtr` evaluates it through the complementary error
    function, so the left tail keeps full relative accuracy

    >>> float(normal_cdf(0.0))
    0.5
    """
    return ndtr(x)


def poisson_cdf(j: float, lam: float) -> float:
    r""":math:`\Pr(\mathrm{Poi}(\lambda) \le j)`, with the convention that the
    probability is zero for negative :math:`j`

    >>> round(poisson_cdf(1, 1.0), 10) == round(2 * math.exp(-1), 10)
    True
    """
    j = math.floor(j)
    if j < 0:
        return 0.0
    if lam == 0:
        return 1.0

    return float(pdtr(j, lam))


def round_half_up(x: float) -> int:
    """Round to the nearest integer, ties away from zero on the positive side

    >>> round_half_up(2.5), round_half_up(2.49), round_half_up(-0.5)
    (3, 2, 0)
    """
    return int(math.floor(x + 0.5))


def is_integer(x: float, tol: float = 1e-9) -> bool:
    return abs(x - round(x)) < tol
