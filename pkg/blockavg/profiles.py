# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Limit curves of the expected distance to equilibrium """

from __future__ import annotations

import math

import numpy as np

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Tuple

from scipy.integrate import quad
from scipy.stats import norm

from blockavg.data import ProfileKind, SpecKind, Trichotomy
from blockavg.exceptions import DomainError, UndefinedPointError
from blockavg.math import ArrayAndScalar, is_integer, normal_cdf, poisson_cdf
from blockavg.size import BlockSizeSpec

#: Below this value of ``a log n`` the two-point family is in the cutoff regime
CUTOFF_MAX_C = 0.1

#: Above this value of ``a log n`` the two-point family is metastable
METASTABLE_MIN_C = 5.0

#: Half-width of the integration range of :func:`xi_quadrature`
QUADRATURE_RANGE = 12.0


def _check_rho(rho: float) -> float:
    if not rho >= 0:
        raise DomainError(f"rho must be nonnegative, got {rho}")

    # The profile is symmetric under rho -> 1/rho
    return 0.0 if math.isinf(rho) else rho


def psi(rho: float, beta: ArrayAndScalar) -> ArrayAndScalar:
    r"""The Gaussian cutoff profile

    .. math::

        \Psi_\rho(\beta) = \Phi\left(-\beta\frac{1+\rho}{\sqrt{1+\rho^2}}\right)

    >>> float(psi(0, 0))
    0.5
    """
    rho = _check_rho(rho)
    return normal_cdf(-np.asarray(beta) * (1 + rho) / math.sqrt(1 + rho**2))


def xi(rho: float, beta: ArrayAndScalar, gamma: ArrayAndScalar) -> ArrayAndScalar:
    r"""The convolution

    .. math::

        \Xi_\rho(\beta, \gamma) = \int \phi(\alpha)
        \Phi\left(-\frac{\alpha + \beta(1+\rho) + \gamma}{\rho}\right)
        \mathrm{d}\alpha
        = \Phi\left(-\frac{\beta(1+\rho) + \gamma}{\sqrt{1+\rho^2}}\right)

    in closed form, with the convention :math:`\Xi_0(\beta, \gamma) =
    \Phi(-\beta)`
    """
    rho = _check_rho(rho)
    beta = np.asarray(beta)
    if rho == 0:
        return normal_cdf(-beta + 0 * np.asarray(gamma))

    return normal_cdf(-(beta * (1 + rho) + gamma) / math.sqrt(1 + rho**2))


def xi_quadrature(rho: float, beta: float, gamma: float) -> float:
    """:func:`xi` by adaptive quadrature of the defining integral. Slow, only
    meant as an independent check of the closed form"""
    rho = _check_rho(rho)
    if rho == 0:
        return float(normal_cdf(-beta))

    shift = beta * (1 + rho) + gamma

    def integrand(alpha):
        return norm.pdf(alpha) * normal_cdf(-(alpha + shift) / rho)

    # The Gaussian weight is below 1e-31 outside [-12, 12]. The steep part of
    # the integrand sits at -shift
    points = [-shift] if abs(shift) < QUADRATURE_RANGE else None
    value, _ = quad(
        integrand,
        -QUADRATURE_RANGE,
        QUADRATURE_RANGE,
        points=points,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )

    return value


def _check_delta(delta: float):
    if not (0 < delta < 1):
        raise DomainError(f"delta must lie in (0, 1), got {delta}")


def poisson_profile(delta: float, beta: float) -> Tuple[float, float]:
    r"""Bounds on the limit profile when the block size is :math:`n^\delta`:

    .. math::

        \Pr\left(\mathrm{Poi}(\beta) < \frac{1-\delta}{\delta}\right) \le
        \cdot \le
        \Pr\left(\mathrm{Poi}(\beta) \le \frac{1-\delta}{\delta}\right)

    They coincide unless :math:`(1-\delta)/\delta` is an integer

    >>> lower, upper = poisson_profile(0.7, 1.0)
    >>> lower == upper
    True
    """
    _check_delta(delta)
    if beta < 0:
        raise DomainError(f"beta must be nonnegative, got {beta}")

    m = (1 - delta) / delta
    if is_integer(m):
        m = round(m)
        return poisson_cdf(m - 1, beta), poisson_cdf(m, beta)

    value = poisson_cdf(math.floor(m), beta)

    return value, value


def expected_poisson_profile(delta: float, beta: float) -> float:
    r"""The limit of the expected distance at :math:`\bar t(\beta) = \beta n/k`
    from a Dirac mass, :math:`\Pr(\mathrm{Poi}(\beta) \le \lfloor 1/\delta
    \rfloor)`. Refused when :math:`1/\delta` is an integer, where no limit is
    known

    >>> round(expected_poisson_profile(0.4, 2.0), 5)
    0.67668
    """
    _check_delta(delta)
    if beta < 0:
        raise DomainError(f"beta must be nonnegative, got {beta}")
    if is_integer(1 / delta):
        raise DomainError(f"No limit is known for integer 1/delta (delta={delta})")

    return poisson_cdf(math.floor(1 / delta), beta)


def linear_profile(c_bar: float, beta: ArrayAndScalar) -> ArrayAndScalar:
    r""":math:`(1 - \bar c)^\beta`, the profile when blocks have size
    :math:`\bar c n`, measured from the first hit of the initial site"""
    if not (0 < c_bar < 1):
        raise DomainError(f"c_bar must lie in (0, 1), got {c_bar}")

    return (1 - c_bar) ** np.asarray(beta)


def trichotomy_reference(regime: Trichotomy, s: float, c: float = 0.0) -> float:
    r"""The limit of the expected distance for the two-point family.

    * metastable: :math:`e^{-s}`, at :math:`s\,t_\mathrm{ent}`
    * half-cutoff, :math:`a = c/\log n`:
      :math:`\mathbf{1}_{s<1} e^{-s c/(2\log 2)}`, at :math:`s\,t_\mathrm{CDSZ}`
    * cutoff: :math:`\mathbf{1}_{s<1}`, at :math:`s\,t_\mathrm{CDSZ}`

    Raises
    ------
    UndefinedPointError
        At the jump ``s = 1`` of the half-cutoff and cutoff limits
    """
    if s < 0:
        raise DomainError(f"s must be nonnegative, got {s}")

    if regime is Trichotomy.METASTABLE:
        return math.exp(-s)

    if s == 1:
        raise UndefinedPointError(f"The {regime.value} limit is not defined at s=1")

    if s > 1:
        return 0.0
    if regime is Trichotomy.CUTOFF:
        return 1.0

    return math.exp(-s * c / (2 * math.log(2)))


def trichotomy_regime(spec: BlockSizeSpec) -> Tuple[Trichotomy, float]:
    """Place a two-point spec in the trichotomy. Returns the regime and
    ``c = a log n``"""
    if spec.kind is not SpecKind.TWO_POINT:
        raise DomainError("The trichotomy is defined for the two-point family")

    c = spec.parameters["a"] * math.log(spec.n)
    if c < CUTOFF_MAX_C:
        return Trichotomy.CUTOFF, c
    elif c > METASTABLE_MIN_C:
        return Trichotomy.METASTABLE, c

    return Trichotomy.HALF_CUTOFF, c


@dataclass(frozen=True)
class ProfileCurve:
    """A limit curve with its parameters

    >>> ProfileCurve(ProfileKind.METASTABLE_EXP).evaluate([0.0]).tolist()
    [1.0]

    Attributes
    ----------
    kind
        The :class:`~.ProfileKind`
    parameters
        ``rho`` (Gaussian), ``delta`` (Poisson), ``c`` (half-cutoff) or
        ``c_bar`` (linear)
    """

    kind: ProfileKind
    parameters: Mapping[str, Any] = field(default_factory=dict)

    def _param(self, name: str, default=None):
        value = self.parameters.get(name, default)
        if value is None:
            raise DomainError(f"Profile {self.kind.value} needs {name!r}")

        return float(value)

    def value(self, beta: float) -> float:
        kind = self.kind
        if kind is ProfileKind.GAUSSIAN_CUTOFF:
            return float(psi(self._param("rho", 0.0), beta))
        elif kind is ProfileKind.POISSON_NONCUTOFF:
            return poisson_profile(self._param("delta"), beta)[0]
        elif kind is ProfileKind.EXPECTED_POISSON:
            return expected_poisson_profile(self._param("delta"), beta)
        elif kind is ProfileKind.METASTABLE_EXP:
            return trichotomy_reference(Trichotomy.METASTABLE, beta)
        elif kind is ProfileKind.HALF_CUTOFF:
            return trichotomy_reference(
                Trichotomy.HALF_CUTOFF, beta, self._param("c")
            )

        return float(linear_profile(self._param("c_bar"), beta))

    def evaluate(self, grid) -> np.ndarray:
        return np.array([self.value(float(beta)) for beta in grid])

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind.value, **self.parameters}
