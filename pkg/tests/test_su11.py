import numpy as np
import pytest

from fockdyn import disentangle, su11_coefficients
from fockdyn.su11 import SERIES_SWITCH

from .conftest import effective

CHI_TAU = [0.05, 0.1, 0.3, 0.5, 1.0]


def pair_point(g1: float = 1.0):
    # ω′ = N = 100, so χ = g1·g2
    return effective(g1=g1, omega_prime=100.0, n_atoms=100)


def test_zero_time_is_identity():
    c = su11_coefficients(pair_point(), 0.0)
    assert c.Gamma == 0
    assert c.Gamma_tilde == pytest.approx(1.0)


@pytest.mark.parametrize("chi_tau", CHI_TAU)
def test_degenerate_closed_form(chi_tau):
    e = pair_point()
    c = su11_coefficients(e, chi_tau / e.chi)
    assert c.beta == 0
    expected = -1j * chi_tau / (1 + 1j * chi_tau)
    assert c.Gamma == pytest.approx(expected, abs=1e-14)
    assert abs(c.Gamma) ** 2 == pytest.approx(chi_tau**2 / (1 + chi_tau**2))


@pytest.mark.parametrize("g1", [1.0, 2.0, 0.5])
@pytest.mark.parametrize("chi_tau", CHI_TAU)
def test_normalisation_identity(g1, chi_tau):
    e = pair_point(g1)
    c = su11_coefficients(e, chi_tau / e.chi)
    assert abs(c.Gamma) < 1
    assert abs(c.Gamma_tilde) == pytest.approx(1 - abs(c.Gamma) ** 2, rel=1e-12)


@pytest.mark.parametrize("g1", [2.0, 0.5])
def test_branch_invariance(g1):
    e = pair_point(g1)
    c = su11_coefficients(e, 0.7 / e.chi)
    flipped = disentangle(c.gamma, c.gamma_tilde, -c.beta)
    assert flipped[0] == pytest.approx(c.Gamma, abs=1e-12)
    assert flipped[1] == pytest.approx(c.Gamma_tilde, abs=1e-12)


def test_continuous_through_degeneracy():
    a = 0.3
    gamma, gamma_tilde = -1j * np.sqrt(a * a + 1e-10), -2j * a
    beta = np.sqrt(complex(gamma_tilde**2 / 4 - gamma**2))
    assert abs(beta) == pytest.approx(1e-5, rel=1e-6)
    assert abs(beta) > SERIES_SWITCH
    near = np.array(disentangle(gamma, gamma_tilde, beta))
    limit = np.array(disentangle(gamma, gamma_tilde, 0.0))
    assert np.max(np.abs(near - limit)) < 1e-9


def test_negative_sign_conjugates():
    e = pair_point(2.0)
    tau = 0.4 / e.chi
    plus = su11_coefficients(e, tau, sign=1)
    minus = su11_coefficients(e, tau, sign=-1)
    assert minus.Gamma == pytest.approx(np.conj(plus.Gamma), abs=1e-14)
    assert minus.Gamma_tilde == pytest.approx(np.conj(plus.Gamma_tilde), abs=1e-14)


def test_small_time_slope_is_minus_i_chi():
    e = pair_point(2.0)
    h = 1e-3

    def slope(t):
        return su11_coefficients(e, t).Gamma / t

    richardson = (10 * slope(h / 10) - slope(h)) / 9
    assert richardson == pytest.approx(-1j * e.chi, abs=1e-5)


@pytest.mark.parametrize("tau, sign", [(-1.0, 1), (1.0, 0), (1.0, 2)])
def test_invalid_arguments(tau, sign):
    with pytest.raises(ValueError):
        su11_coefficients(pair_point(), tau, sign=sign)
