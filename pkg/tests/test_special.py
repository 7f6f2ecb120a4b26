import cmath
import math

import numpy as np
import pytest
from scipy import integrate, special as sps

from densediv.arithmetic import NuMode
from densediv.errors import DomainError
from densediv.sieve import primes_upto
from densediv.special import (
    A_series,
    EULER_GAMMA,
    cgamma,
    coeff_table,
    constants,
    euler_gamma_check,
    euler_h,
    euler_Jnu,
    eval_I,
    eval_J,
    eval_T,
    lambda_nu,
    mertens_product,
    rgamma,
)


def test_I_and_T_values():
    assert eval_I(0) == 0 and eval_T(0) == 0
    assert abs(eval_I(1) - 1.3179021514544038) < 1e-14
    assert abs(eval_T(1) - 0.7965995992970532) < 1e-14
    for s in (0.5, 1, 2):
        assert abs(eval_I(-s) + eval_T(s)) < 1e-15
        assert eval_T(s).imag == 0


def test_I_against_quadrature():
    for s in (0.3, -4.0, 9.5, 3 + 4j, -11 + 2j, 20.0, -30 + 5j):
        # I(s) = int_0^1 (e^{rs} - 1)/r dr
        f = lambda r: (cmath.exp(r * s) - 1) / r  # noqa: E731
        ref_re, _ = integrate.quad(lambda r: f(r).real, 0, 1, epsabs=0, epsrel=1e-13, limit=200)
        ref_im, _ = integrate.quad(lambda r: f(r).imag, 0, 1, epsabs=0, epsrel=1e-13, limit=200)
        ref = complex(ref_re, ref_im)
        assert abs(eval_I(s) - ref) <= 1e-12 * max(1, abs(ref))
    with pytest.raises(DomainError):
        eval_I(60)


def test_J_values():
    assert abs(eval_J(1.0) - 0.21938393439552029) < 1e-15
    assert eval_J(30.0) <= 1e-13
    u = np.array([1e-8, 0.01, 0.5, 1.0, 1.0001, 2.0, 7.5, 40.0, 300.0])
    assert np.allclose(eval_J(u), sps.exp1(u), rtol=1e-12, atol=0)
    with pytest.raises(DomainError):
        eval_J(0.0)


def test_J_asymptotic_shape():
    u = 200.0
    assert abs(eval_J(u) * u * math.exp(u) - 1) < 1 / u


def test_JI_identity():
    for u in (0.1, 0.5, 1, 2, 3, 5, 10):
        lhs = u * math.exp(eval_J(u))
        rhs = cmath.exp(-EULER_GAMMA - eval_I(-u))
        assert abs(lhs - rhs) < 1e-10


def test_gamma_function():
    assert abs(cgamma(1) - 1) < 1e-14
    assert abs(cgamma(0.5) - math.sqrt(math.pi)) < 1e-14
    for s in (0.3 + 0.2j, 2.5 - 1j, -1.7 + 0.4j, 5.2):
        assert abs(cgamma(s + 1) - s * cgamma(s)) < 1e-12 * abs(cgamma(s + 1))
        assert abs(cgamma(s) - sps.gamma(s)) < 1e-12 * abs(sps.gamma(s))
        assert abs(rgamma(s) * cgamma(s) - 1) < 1e-13
    assert rgamma(0) == 0 and abs(rgamma(-2)) < 1e-15
    with pytest.raises(DomainError):
        cgamma(-3)


def test_euler_constant_cross_check():
    assert abs(euler_gamma_check() - EULER_GAMMA) < 1e-9


@pytest.mark.parametrize("z", [1.0, 0.7 + 0.4j, cmath.exp(0.2j), 1.8])
def test_coefficient_closed_forms(z):
    ct = coeff_table(z, 10)
    b, a, c = ct.b, ct.a, ct.c
    assert b[0] == 1 and abs(b[1] - z) < 1e-15
    assert abs(b[2] - z * (2 * z - 1) / 4) < 1e-14
    assert abs(a[1] - (z - 1)) < 1e-14
    assert abs(a[2] - (z - 2) * (2 * z - 1) / 4) < 1e-14
    assert abs(c[1] - z * cmath.exp(-EULER_GAMMA * z)) < 1e-14


def test_c1_at_one():
    assert abs(coeff_table(1.0, 5).c[1] - math.exp(-EULER_GAMMA)) < 1e-15


def test_generating_function():
    z = cmath.exp(0.2j)
    s = 0.1
    b = coeff_table(z, 20).b
    series = sum(bk * s**k for k, bk in enumerate(b))
    assert abs(series - cmath.exp(-z * eval_I(-s))) < 1e-15


def test_coeff_json_shape():
    data = coeff_table(1.0, 3).to_json()
    assert set(data) == {"z", "b", "a", "c"}
    assert len(data["b"]) == 4 and data["b"][0] == [1.0, 0.0]


def test_constants_values_and_identities():
    k = constants()
    assert abs(k.C - 2.280291) < 1e-6
    assert abs(k.K + 0.933003) < 1e-5
    assert abs(k.V - 0.414284) < 1e-5
    assert k.B == k.A + k.W
    assert k.V == k.C + 2 * k.K
    assert abs(k.C - 1 / (1 - math.exp(-EULER_GAMMA))) < 1e-15
    assert abs(k.K - k.exp_neg_gamma * k.C**2 * (1 - k.gamma + k.B * k.C)) < 1e-15


def test_A_two_routes():
    assert abs(constants().A - A_series()) < 1e-10


def test_W_tail_is_negligible():
    # e^J - 1 <= 2J on [40, inf) and the truncation tail is below 2 J(40)
    assert 2 * eval_J(40.0) < 1e-18


def test_constants_json_keys():
    import json

    data = json.loads(constants().to_json(coeff_table(1.0, 2)))
    assert list(data)[:7] == ["gamma", "A", "W", "B", "C", "K", "V"]
    assert {"b", "a", "c"} <= set(data)


def test_euler_h_at_one_is_mertens():
    for y in (10, 1000, 10**5):
        for mode in NuMode:
            assert abs(euler_h(y, 1, mode) - mertens_product(y)) < 1e-13


@pytest.mark.parametrize("mode", list(NuMode))
def test_euler_products_large_y(mode):
    y, z = 1e4, cmath.exp(0.1j)
    ly = math.log(y)
    bound = math.exp(-math.sqrt(ly))  # ~ 0.048
    h_ref = cmath.exp(-EULER_GAMMA * z) * rgamma(z) / ly**z
    assert abs(euler_h(y, z, mode) / h_ref - 1) < bound
    assert abs(euler_Jnu(y, z, mode) - (z * ly - 1)) < bound


def test_prime_sum_ingredient():
    y = 1e5
    p = primes_upto(int(y)).astype(float)
    val = (np.log(p) / (p - 1)).sum()
    assert abs(val - (math.log(y) - EULER_GAMMA)) < math.exp(-math.sqrt(math.log(y)))


def test_J_modes_stay_close():
    z = cmath.exp(0.1j)
    diffs = [abs(euler_Jnu(y, z, "Omega") - euler_Jnu(y, z, "omega")) for y in (1e2, 1e3, 1e4, 1e5)]
    assert max(diffs) < 0.1
    assert max(diffs) - min(diffs) < 0.05


def test_lambda_at_one():
    lam0, lam1 = lambda_nu(1, "omega")
    assert abs(lam0 - 1) < 1e-12 and abs(lam1) < 1e-12


def test_euler_domain():
    with pytest.raises(DomainError):
        euler_h(1.2, 1, "omega")
    with pytest.raises(DomainError):
        euler_h(10, 1.7, "omega")
