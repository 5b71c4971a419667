# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import numpy as np
import pytest

from scipy.stats import norm

from blockavg.data import ProfileKind, Trichotomy
from blockavg.exceptions import DomainError, UndefinedPointError
from blockavg.profiles import (
    ProfileCurve,
    expected_poisson_profile,
    linear_profile,
    poisson_profile,
    psi,
    trichotomy_reference,
    trichotomy_regime,
    xi,
    xi_quadrature,
)
from blockavg.size import BlockSizeSpec


def test_psi_deterministic():
    betas = np.linspace(-3, 3, 13)

    assert np.allclose(psi(0, betas), norm.cdf(-betas))


@pytest.mark.parametrize("rho", [0.1, 0.5, 2.0, 10.0])
def test_psi_symmetry(rho):
    betas = np.linspace(-3, 3, 13)

    assert np.allclose(psi(rho, betas), psi(1 / rho, betas), rtol=0, atol=1e-12)


def test_psi_infinite_rho():
    assert psi(math.inf, 1.0) == psi(0, 1.0)


def test_psi_steepest_at_one():
    for beta in (0.5, 1.0, 2.0):
        assert psi(1.0, beta) < psi(0.5, beta) < psi(0.0, beta)
        assert psi(1.0, -beta) > psi(0.5, -beta) > psi(0.0, -beta)


def test_psi_negative_rho():
    with pytest.raises(DomainError):
        psi(-1.0, 0.0)


@pytest.mark.parametrize("rho", [0.1, 1.0, 5.0])
def test_xi_quadrature(rho):
    for beta in np.linspace(-3, 3, 4):
        for gamma in np.linspace(-3, 3, 4):
            assert abs(xi_quadrature(rho, beta, gamma) - xi(rho, beta, gamma)) < 1e-8


def test_xi_reduces_to_psi():
    betas = np.linspace(-2, 2, 9)

    assert np.allclose(xi(0.7, betas, 0.0), psi(0.7, betas))


def test_xi_zero_rho():
    assert xi(0, 1.0, 5.0) == pytest.approx(norm.cdf(-1.0))
    assert xi_quadrature(0, 1.0, 5.0) == pytest.approx(norm.cdf(-1.0))


def test_poisson_profile_generic():
    lower, upper = poisson_profile(0.4, 1.0)

    # (1 - delta)/delta = 1.5, so the profile is P(Poi(1) <= 1)
    assert lower == upper == pytest.approx(2 * math.exp(-1))


def test_poisson_profile_boundary():
    lower, upper = poisson_profile(0.5, 1.0)

    assert lower == pytest.approx(math.exp(-1))
    assert upper == pytest.approx(2 * math.exp(-1))
    assert lower < upper


def test_poisson_profile_at_zero():
    assert poisson_profile(0.7, 0.0) == (1.0, 1.0)


@pytest.mark.parametrize("delta", [0.0, 1.0, 1.5])
def test_poisson_profile_domain(delta):
    with pytest.raises(DomainError):
        poisson_profile(delta, 1.0)


def test_expected_poisson_profile():
    assert expected_poisson_profile(0.7, 1.0) == pytest.approx(2 * math.exp(-1))
    assert expected_poisson_profile(0.4, 1.0) == pytest.approx(2.5 * math.exp(-1))


def test_expected_poisson_profile_integer():
    with pytest.raises(DomainError):
        expected_poisson_profile(0.5, 1.0)


def test_linear_profile():
    assert linear_profile(0.5, 3) == pytest.approx(0.125)

    with pytest.raises(DomainError):
        linear_profile(1.0, 1)


def test_trichotomy_reference():
    assert trichotomy_reference(Trichotomy.METASTABLE, 1.0) == math.exp(-1)
    assert trichotomy_reference(Trichotomy.CUTOFF, 0.5) == 1.0
    assert trichotomy_reference(Trichotomy.CUTOFF, 1.5) == 0.0

    c = 2.0
    assert trichotomy_reference(Trichotomy.HALF_CUTOFF, 0.5, c) == pytest.approx(
        math.exp(-0.5 * c / (2 * math.log(2)))
    )
    assert trichotomy_reference(Trichotomy.HALF_CUTOFF, 2.0, c) == 0.0


@pytest.mark.parametrize("regime", [Trichotomy.CUTOFF, Trichotomy.HALF_CUTOFF])
def test_trichotomy_jump(regime):
    with pytest.raises(UndefinedPointError):
        trichotomy_reference(regime, 1.0, 1.0)


def test_trichotomy_regime():
    n = 10**4
    log_n = math.log(n)

    assert trichotomy_regime(BlockSizeSpec.two_point(n, 0.001))[0] is Trichotomy.CUTOFF
    regime, c = trichotomy_regime(BlockSizeSpec.two_point(n, 1 / log_n))
    assert regime is Trichotomy.HALF_CUTOFF
    assert c == pytest.approx(1.0)
    regime, _ = trichotomy_regime(BlockSizeSpec.two_point(n, 10 / log_n))
    assert regime is Trichotomy.METASTABLE


def test_trichotomy_regime_needs_two_point():
    with pytest.raises(DomainError):
        trichotomy_regime(BlockSizeSpec.deterministic(10, 2))


def test_profile_curve():
    curve = ProfileCurve(ProfileKind.GAUSSIAN_CUTOFF, {"rho": 0.0})

    assert curve.value(0.0) == 0.5
    assert np.allclose(curve.evaluate([-1, 0, 1]), norm.cdf([1, 0, -1]))
    assert curve.to_dict() == {"kind": "gaussian_cutoff", "rho": 0.0}


def test_profile_curve_missing_parameter():
    with pytest.raises(DomainError):
        ProfileCurve(ProfileKind.LINEAR).value(1.0)


def test_plot_profiles(plot):
    import matplotlib.pyplot as plt

    betas = np.linspace(-3, 3, 61)
    fig, ax = plt.subplots()
    for rho in (0.0, 0.5, 1.0):
        ax.plot(betas, psi(rho, betas), label=f"rho={rho}")
    ax.legend()

    if plot:
        plt.show()
    plt.close(fig)
