"""Special functions and constants: I, T, J, complex Gamma, the b/a/c
coefficient sequences, the constants A, W, B, C, K, V, and the Euler
products h_nu, J_nu.
"""

import cmath
import functools
import json
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy import integrate, special as sps

from .arithmetic import NuMode
from .errors import DomainError
from .sieve import primes_upto

EULER_GAMMA = 0.57721566490153286061
EXP_NEG_GAMMA = math.exp(-EULER_GAMMA)

#: Euler products are truncated at primes <= this bound, plus an analytic tail
EULER_PRIME_CAP = 10**7

_SERIES_RADIUS = 12.0


def _is_real_number(s):
    return isinstance(s, (int, float)) or (isinstance(s, complex) and s.imag == 0)


def eval_I(s):
    """I(s) = int_0^s (e^t - 1)/t dt, an entire function.

    Taylor series sum s^n/(n n!) for |s| <= 12; beyond that the exponential
    integral form I(s) = -E1(-s) - gamma - log(-s).
    """
    s = complex(s)
    if abs(s) > 50:
        raise DomainError("eval_I supports |s| <= 50")
    if abs(s) <= _SERIES_RADIUS:
        term = 1 + 0j
        total = 0j
        for n in range(1, 200):
            term *= s / n
            total += term / n
            if abs(term) < 1e-18 * max(abs(total), 1e-300) and n > abs(s):
                break
        return total
    if s.imag == 0 and s.real > 0:
        return complex(sps.expi(s.real) - EULER_GAMMA - math.log(s.real))
    return -(sps.exp1(-s) + EULER_GAMMA + cmath.log(-s))


def eval_T(s):
    """T(s) = int_0^s (1 - e^{-t})/t dt = -I(-s)."""
    return -eval_I(-complex(s))


def _expint_series(u):
    total = np.zeros_like(u)
    term = np.ones_like(u)
    for n in range(1, 40):
        term = -term * u / n
        total -= term / n
    return -EULER_GAMMA - np.log(u) + total


def _expint_cf(u):
    # modified Lentz evaluation of the continued fraction for e^u E1(u)
    tiny = 1e-300
    b = u + 1.0
    c = np.full_like(u, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, 500):
        an = -float(i * i)
        b = b + 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h = h * delta
        if np.all(np.abs(delta - 1.0) < 1e-16):
            break
    return h * np.exp(-u)


def eval_J(u):
    """J(u) = int_u^inf e^{-t}/t dt (the exponential integral E1), u > 0.

    Power series for u <= 1, continued fraction above.  Accepts scalars or
    arrays.
    """
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("eval_J needs u > 0")
    flat = np.atleast_1d(arr).ravel()
    out = np.empty_like(flat)
    small = flat <= 1.0
    if small.any():
        out[small] = _expint_series(flat[small])
    if (~small).any():
        out[~small] = _expint_cf(flat[~small])
    out = out.reshape(np.shape(arr))
    return float(out) if np.ndim(arr) == 0 else out


# ---------------------------------------------------------------------------
# complex Gamma (Lanczos, g = 7, nine coefficients)

_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _lanczos(z):
    # Gamma(z + 1) for Re z >= -0.5
    x = _LANCZOS[0]
    for i, c in enumerate(_LANCZOS[1:], start=1):
        x += c / (z + i)
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


def cgamma(z):
    """Gamma(z) for complex z (Lanczos with reflection)."""
    z = complex(z)
    if z.real < 0.5:
        if z.imag == 0 and z.real == round(z.real):
            raise DomainError(f"Gamma has a pole at {z.real:g}")
        return math.pi / (cmath.sin(math.pi * z) * cgamma(1 - z))
    return _lanczos(z - 1)


def rgamma(z):
    """1/Gamma(z), entire; exact zeros at the non-positive integers."""
    z = complex(z)
    if z.real < 0.5:
        return cmath.sin(math.pi * z) * cgamma(1 - z) / math.pi
    return 1 / _lanczos(z - 1)


def euler_gamma_check(h=1e-4):
    """gamma recovered as -Gamma'(1), Richardson-extrapolated central difference."""

    def d(step):
        return (cgamma(1 + step) - cgamma(1 - step)).real / (2 * step)

    return -(4 * d(h / 2) - d(h)) / 3


# ---------------------------------------------------------------------------
# coefficient sequences


@dataclass(frozen=True)
class CoeffTable:
    """Taylor data for e^{z T(s)} = sum b_k s^k and its relatives."""

    z: complex
    b: tuple
    a: tuple
    c: tuple

    @property
    def K(self):
        return len(self.b) - 1

    def to_json(self):
        pair = lambda seq: [[v.real, v.imag] for v in seq]  # noqa: E731
        return {"z": [self.z.real, self.z.imag], "b": pair(self.b), "a": pair(self.a), "c": pair(self.c)}


@functools.lru_cache(maxsize=256)
def coeff_table(z, K=40):
    """b_k (Taylor coefficients of exp(-z I(-s))), a_k and c_k for k <= K."""
    if K > 60 or K < 0:
        raise DomainError("coeff_table supports 0 <= K <= 60")
    z = complex(z)
    # -z I(-s) = z T(s) = sum_j g_j s^j with j g_j = z (-1)^{j+1} / j!
    jg = [0j] + [z * (-1) ** (j + 1) / math.factorial(j) for j in range(1, K + 1)]
    b = [1 + 0j]
    for k in range(1, K + 1):
        b.append(sum(jg[j] * b[k - j] for j in range(1, k + 1)) / k)
    a = [sum((-1) ** j / math.factorial(j) * b[k - j] for j in range(k + 1)) for k in range(K + 1)]
    e = cmath.exp(-EULER_GAMMA * z)
    c = [e * bk for bk in b]
    return CoeffTable(z, tuple(b), tuple(a), tuple(c))


# ---------------------------------------------------------------------------
# constants


@dataclass(frozen=True)
class ConstantsReport:
    gamma: float
    exp_neg_gamma: float
    A: float
    W: float
    B: float
    C: float
    K: float
    V: float

    def to_json(self, coeffs=None):
        data = {k: v for k, v in asdict(self).items() if k != "exp_neg_gamma"}
        if coeffs is not None:
            data.update({k: v for k, v in coeffs.to_json().items() if k != "z"})
        return json.dumps(data, indent=2, sort_keys=False)


def _A_integrand(u):
    if u < 1e-3:
        b = coeff_table(1.0, 12).b
        return sum(b[k].real * u ** (k - 2) for k in range(2, 13))
    return (math.exp(eval_T(u).real) - 1 - u) / (u * u)


def _W_integrand(u):
    return math.expm1(eval_J(u)) / u


W_CUTOFF = 40.0


@functools.lru_cache(maxsize=1)
def constants():
    """The constants A, W, B = A + W, C, K and V = C + 2K."""
    inner, _ = integrate.quad(_A_integrand, 0.0, 1.0, epsabs=1e-14, epsrel=1e-13, limit=200)
    A = EXP_NEG_GAMMA * (inner - 1.0)
    # e^{J} - 1 <= 2 J(u) on [40, inf), and int_40^inf J(u)/u du <= J(40)/40
    W, _ = integrate.quad(_W_integrand, 1.0, W_CUTOFF, epsabs=1e-14, epsrel=1e-13, limit=200)
    B = A + W
    C = 1.0 / (1.0 - EXP_NEG_GAMMA)
    K = EXP_NEG_GAMMA * C * C * (1 - EULER_GAMMA + B * C)
    return ConstantsReport(EULER_GAMMA, EXP_NEG_GAMMA, A, W, B, C, K, C + 2 * K)


def A_series(K=40):
    """A from the coefficient series sum_{k != 1} c_k(1)/(k - 1)."""
    c = coeff_table(1.0, K).c
    return sum(c[k].real / (k - 1) for k in range(K + 1) if k != 1)


# ---------------------------------------------------------------------------
# Euler products


@functools.lru_cache(maxsize=1)
def _euler_primes():
    p = primes_upto(EULER_PRIME_CAP).astype(float)
    return p, np.log(p)


def _check_euler(y, z):
    if y < 1.5:
        raise DomainError("Euler products need y >= 3/2")
    if y > EULER_PRIME_CAP:
        raise DomainError(f"y beyond the Euler prime cap {EULER_PRIME_CAP}")
    if abs(z) > 2 or abs(z - 1) > 0.5:
        raise DomainError("Euler products need |z - 1| <= 1/2")


def _log_local_factor(p, z, mode):
    # log of the p-factor of H_nu(1, z)
    if mode is NuMode.BIG_OMEGA:
        return -np.log(1 - z / p) + z * np.log1p(-1 / p)
    return np.log(1 + z / (p - 1)) + z * np.log1p(-1 / p)


def euler_log_H(z, mode, y=1.5):
    """log H_nu(1, z) + log G_nu(1, y, z), computed jointly for stability."""
    mode = NuMode.parse(mode)
    z = complex(z)
    _check_euler(y, z)
    p, _ = _euler_primes()
    cut = np.searchsorted(p, y, side="right")
    head = z * np.log1p(-1 / p[:cut]).sum()
    body = _log_local_factor(p[cut:], z, mode).sum()
    c2 = (z * z - z) / 2 if mode is NuMode.BIG_OMEGA else -(z * z - z) / 2
    tail = c2 * sps.exp1(math.log(EULER_PRIME_CAP))
    return head + body + tail


def euler_h(y, z, mode):
    """h_nu(y, z) = H_nu(1, z) G_nu(1, y, z) / Gamma(z)."""
    return cmath.exp(euler_log_H(z, mode, y)) * rgamma(z)


def euler_Jnu(y, z, mode):
    """J_nu(y, z) = H'/H(1, z) + G'/G(1, y, z) + gamma z - 1 (derivatives in s)."""
    mode = NuMode.parse(mode)
    z = complex(z)
    _check_euler(y, z)
    p, lp = _euler_primes()
    cut = np.searchsorted(p, y, side="right")
    if mode is NuMode.BIG_OMEGA:
        hh = (z * (1 - z) * lp / ((p - 1) * (p - z))).sum() + z * (1 - z) / EULER_PRIME_CAP
        gg = (z * lp[:cut] / (p[:cut] - z)).sum()
    else:
        hh = (z * (z - 1) * lp / ((p - 1) * (p - 1 + z))).sum() + z * (z - 1) / EULER_PRIME_CAP
        pc = p[:cut]
        gg = (z * pc * lp[:cut] / ((pc - 1) * (pc - 1 + z))).sum()
    return hh + gg + EULER_GAMMA * z - 1


def lambda_nu(z, mode):
    """(lambda_{nu,0}(z), lambda_{nu,1}(z)): main-term constants for
    sum_{n <= x} z^nu(n) = x (log x)^{z-1} {lambda_0 + lambda_1 / log x + ...}.
    """
    h = euler_h(1.5, z, mode)
    return h, h * euler_Jnu(1.5, z, mode) * (complex(z) - 1)


def mertens_product(y):
    """prod_{p <= y} (1 - 1/p)."""
    p, _ = _euler_primes()
    cut = np.searchsorted(p, y, side="right")
    return math.exp(np.log1p(-1 / p[:cut]).sum())
