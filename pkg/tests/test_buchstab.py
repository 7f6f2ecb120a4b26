import cmath
import math

import numpy as np
import pytest
from _numerics import dde_residual

from densediv.buchstab import (
    SampledFunction,
    omega_asymptotic,
    omega_derivative_asymptotic,
    piece_cumulative_integral,
    solve_omega,
)
from densediv.errors import DomainError
from densediv.special import EXP_NEG_GAMMA

Z_SET = [1.0, cmath.exp(0.1j), cmath.exp(-0.1j), cmath.exp(-0.2j)]


@pytest.fixture(scope="module")
def omegas():
    return {z: solve_omega(z, 100, 0.005) for z in Z_SET}


def test_initial_pieces():
    om = solve_omega(1.0, 5, 0.005)
    assert om(0.5) == 0 and om(0.999) == 0
    assert om(1.0) == 1
    assert abs(om(1.5) - 2 / 3) < 1e-12
    assert abs(om(2.5) - (1 + math.log(1.5)) / 2.5) < 1e-10


def test_value_at_one_is_z():
    z = cmath.exp(0.1j)
    assert abs(solve_omega(z, 5)(1.0) - z) < 1e-15


@pytest.mark.parametrize("z", Z_SET)
def test_dde_residual(omegas, z):
    assert dde_residual(omegas[z], z, 2.1, 50.0) <= 1e-8


def test_buchstab_limit(omegas):
    om = omegas[1.0]
    for u in (20, 35, 50, 100):
        assert abs(om(u) - EXP_NEG_GAMMA) <= 1e-6


def test_grid_refinement_is_stable():
    coarse = solve_omega(cmath.exp(0.1j), 20, 0.01)
    fine = solve_omega(cmath.exp(0.1j), 20, 0.0025)
    u = np.linspace(1, 20, 77)
    assert np.max(np.abs(coarse(u) - fine(u))) < 1e-9


def test_asymptotic_leading_term():
    assert abs(omega_asymptotic(1, 7.0, 0) - EXP_NEG_GAMMA) < 1e-15


@pytest.mark.parametrize("K", [0, 1, 2])
def test_asymptotic_order(omegas, K):
    z = cmath.exp(0.1j)
    om = omegas[z]
    u = np.array([10.0, 14, 20, 28, 40, 56, 80, 100])
    err = np.abs(om(u) - omega_asymptotic(z, u, K))
    slope = np.polyfit(np.log(u), np.log(err), 1)[0]
    assert abs(slope + (K + 2 - z.real)) <= 0.3


def test_asymptotic_K2_envelope(omegas):
    z = cmath.exp(0.1j)
    u = np.linspace(10, 50, 21)
    err = np.abs(omegas[z](u) - omega_asymptotic(z, u, 2))
    # c fitted at u = 10; the true error decays one power faster
    c = err[0] / u[0] ** (z.real - 3)
    assert np.all(err <= c * u ** (z.real - 3) * (1 + 1e-9))


def test_shifted_expansion_agrees(omegas):
    z = cmath.exp(0.1j)
    u = np.array([30.0, 60.0])
    plain = omega_asymptotic(z, u, 4)
    shifted = omega_asymptotic(z, u, 4, shifted=True)
    assert np.all(np.abs(plain - shifted) < 1e-6)
    assert np.all(np.abs(shifted - omegas[z](u)) < 1e-7)


def test_derivative_expansion(omegas):
    z = cmath.exp(0.1j)
    om = omegas[z]
    u, e = 40.0, 1e-3
    fd = (om(u + e) - om(u - e)) / (2 * e)
    assert abs(fd - omega_derivative_asymptotic(z, u, 3)) < 1e-6


@pytest.mark.parametrize("z", Z_SET)
def test_upper_bound(omegas, z):
    u = np.linspace(1, 50, 400)
    assert np.all(np.abs(omegas[z](u)) <= abs(z) * u ** (abs(z) - 1) + 1e-12)


def test_conjugate_symmetry(omegas):
    u = np.linspace(1, 40, 50)
    a = omegas[cmath.exp(0.1j)](u)
    b = omegas[cmath.exp(-0.1j)](u)
    assert np.max(np.abs(a - np.conj(b))) < 1e-14


def test_domain_checks():
    with pytest.raises(DomainError):
        solve_omega(3.0)
    with pytest.raises(DomainError):
        solve_omega(1.0, 10, 0.05)
    with pytest.raises(DomainError):
        solve_omega(1.0, 500)
    om = solve_omega(1.0, 5)
    with pytest.raises(DomainError):
        om(7.0)


def test_piece_integral_exact_on_quintics():
    x = np.linspace(0, 1, 41)
    vals = 3 * x**5 - x**2 + 2
    cum = piece_cumulative_integral(vals, x[1] - x[0])
    assert np.max(np.abs(cum - (x**6 / 2 - x**3 / 3 + 2 * x))) < 1e-12


def test_sampled_function_respects_breaks():
    # |x - 1| sampled with a break at the kink is reproduced exactly
    grid = np.linspace(0, 2, 21)
    f = SampledFunction(0.0, 0.1, np.abs(grid - 1).astype(complex), breaks=(10,))
    q = np.array([0.93, 0.97, 1.0, 1.04, 1.55])
    assert np.max(np.abs(f(q) - np.abs(q - 1))) < 1e-14
