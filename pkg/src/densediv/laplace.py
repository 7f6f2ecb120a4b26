"""The meromorphic layer: Q_z(s), f_z(s), the root s_0(z), the residue
constant C_z, and the Volterra function d_z(v).

Internally everything near s = -1 is written in the shifted variables
h = s + 1 and w = z - 1, so the pole of Q_z at s = z - 2 sits at h = w and
nothing cancels catastrophically when z is close to 1.
"""

import cmath
import csv
import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .buchstab import SampledFunction, solve_omega
from .errors import ConvergenceError, DomainError
from .special import EULER_GAMMA, cgamma, coeff_table, constants, eval_J

#: the working disk |z - 1| <= DELTA for the root and d_z
DELTA = 0.2
#: the u-integral in the continuation of Q_z is truncated here
Q_CUTOFF = 40.0

_POLE_GAP = 1e-6


def _expm1c(w):
    w = np.asarray(w, dtype=complex)
    small = np.abs(w) < 1e-5
    out = np.empty_like(w)
    out[~small] = np.exp(w[~small]) - 1
    ws = w[small]
    out[small] = ws * (1 + ws / 2 * (1 + ws / 3))
    return out


@functools.lru_cache(maxsize=1)
def _tail_rule():
    # composite Gauss-Legendre on [1, 40]; the integrand is smooth and
    # decays like e^{-u}/u
    edges = [1, 1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40]
    x, wts = np.polynomial.legendre.leggauss(24)
    nodes, weights = [], []
    for a, b in zip(edges, edges[1:]):
        nodes.append((b - a) / 2 * x + (a + b) / 2)
        weights.append((b - a) / 2 * wts)
    u = np.concatenate(nodes)
    return u, np.concatenate(weights), eval_J(u), np.log(u)


def _tail(z, s, order=0):
    """int_1^40 u^s (log u)^order (e^{zJ(u)} - 1) du."""
    u, wt, J, lu = _tail_rule()
    f = np.exp(s * lu) * _expm1c(z * J)
    if order:
        f = f * lu**order
    return complex(np.dot(wt, f))


def _check_z(z):
    if abs(z) > 2:
        raise DomainError("need |z| <= 2")


def _series_terms(z, K_terms):
    c = np.array(coeff_table(complex(z), K_terms).c)
    return c, np.arange(len(c))


def _pq(z, h, K_terms=40, guard=True):
    """(s+1) Q_z(s) at s = h - 1, and its derivative in s.

    The root solver turns ``guard`` off: near z = 1 the root sits within
    O(|z-1|) of the pole at z - 2, which is legitimate there.
    """
    z = complex(z)
    w = z - 1
    c, k = _series_terms(z, K_terms)
    den = k - 1 + h - w
    if w == 0:
        # z = 1: the k = 1 term c_1 h / h is regular, the pole at z - 2 is gone
        den[1] = h if h != 0 else 1.0
    if guard and np.min(np.abs(den)) < _POLE_GAP:
        raise DomainError("s is too close to a pole z - k - 1 of Q_z")
    s = h - 1
    W0, W1 = _tail(z, s), _tail(z, s, 1)
    terms = c * h / den
    dterms = c * (k - 1 - w) / den**2
    if w == 0:
        terms[1], dterms[1] = c[1], 0
    val = -1 + np.sum(terms) + h * W0
    der = np.sum(dterms) + W0 + h * W1
    return complex(val), complex(der)


def eval_Q(z, s, K_terms=40):
    """Meromorphic continuation of Q_z(s) = int_0^inf u^s (e^{zJ(u)} - 1) du."""
    _check_z(z)
    if K_terms > 60:
        raise DomainError("K_terms <= 60")
    h = complex(s) + 1
    if abs(h) < _POLE_GAP:
        raise DomainError("s is too close to the pole at -1")
    val, _ = _pq(z, h, K_terms)
    return val / h


def eval_Q_deriv(z, s, K_terms=40):
    """d/ds Q_z(s) from term-wise differentiation."""
    h = complex(s) + 1
    val, der = _pq(z, h, K_terms)
    return (der * h - val) / h**2


def eval_pq(z, s, K_terms=40):
    """((s+1) Q_z(s), d/ds of it)."""
    _check_z(z)
    return _pq(z, complex(s) + 1, K_terms)


def eval_f(z, s, method="continuation"):
    """f_z(s) = int_0^inf u^s e^{-u + zJ(u)} du and its continuation.

    ``method="continuation"`` uses f_z = (s+1) Q_z(s) / z and works on the
    whole plane away from poles; ``method="quadrature"`` integrates the
    definition directly and needs Re s > Re z - 1.
    """
    z = complex(z)
    s = complex(s)
    if method == "continuation":
        return eval_pq(z, s)[0] / z
    if method == "quadrature":
        return _f_quadrature(z, s)
    raise ValueError(f"unknown method {method!r}")


def _cquad(fn, a, b, **kw):
    re, _ = integrate.quad(lambda t: fn(t).real, a, b, **kw)
    im, _ = integrate.quad(lambda t: fn(t).imag, a, b, **kw)
    return complex(re, im)


def _J_small(u, t):
    # J(e^{-t}); for tiny u, J = t - gamma + u to double precision
    return t - EULER_GAMMA + u if t > 30 else eval_J(u)


def _f_quadrature(z, s):
    rate = (s + 1 - z).real
    if rate <= 0:
        raise DomainError("direct quadrature needs Re s > Re z - 1")
    kw = dict(epsabs=1e-13, epsrel=1e-12, limit=500)

    def near(t):  # u = e^{-t} on (0, 1]
        u = math.exp(-t)
        return cmath.exp(-t * (s + 1) - u + z * _J_small(u, t))

    def far(u):
        return cmath.exp(s * math.log(u) - u + z * eval_J(u))

    T = min(60.0 / rate, 700.0)
    return _cquad(near, 0.0, T, **kw) + _cquad(far, 1.0, math.inf, **kw)


def Q_quadrature(z, s):
    """Q_z(s) straight from its integral definition (Re s > Re z - 1)."""
    z, s = complex(z), complex(s)
    rate = min((s + 1 - z).real, (s + 1).real)
    if rate <= 0:
        raise DomainError("direct quadrature needs Re s > max(Re z - 1, -1)")
    kw = dict(epsabs=1e-13, epsrel=1e-12, limit=500)

    def near(t):
        u = math.exp(-t)
        return cmath.exp(-t * (s + 1)) * (cmath.exp(z * _J_small(u, t)) - 1)

    def far(u):
        return cmath.exp(s * math.log(u)) * (cmath.exp(z * eval_J(u)) - 1)

    T = min(60.0 / rate, 700.0)
    return _cquad(near, 0.0, T, **kw) + _cquad(far, 1.0, math.inf, **kw)


def laplace_M(z, s, omega=None, v_max=200.0):
    """M^_z(s) = int_1^inf omega_z(v) (v+1)^{-s-1} dv, Re s > Re z - 1.

    Numerical transform of a sampled omega_z; the tail beyond v_max uses
    the large-v expansion of omega_z to four terms.
    """
    from .buchstab import omega_asymptotic

    z, s = complex(z), complex(s)
    if omega is None:
        omega = solve_omega(z, v_max, 0.005)
    v_max = min(v_max, omega.end)
    total = 0j
    for k in range(1, int(v_max)):
        x, wt = np.polynomial.legendre.leggauss(16)
        v = x / 2 + k + 0.5
        total += np.dot(wt / 2, omega(v) * (v + 1) ** (-s - 1))
    # tail beyond v_max from the K = 3 large-v expansion
    tail = lambda v: omega_asymptotic(z, v, 3) * (v + 1) ** (-s - 1)  # noqa: E731
    total += _cquad(tail, int(v_max), math.inf, epsabs=1e-14, limit=200)
    return total


# ---------------------------------------------------------------------------
# the root s_0(z) and residue C_z


@dataclass(frozen=True)
class RootResult:
    z: complex
    s0: complex
    newton_iters: int
    residual: float


def _check_disk(z):
    if abs(complex(z) - 1) > DELTA + 1e-12:
        raise DomainError(f"|z - 1| must be <= {DELTA}")


def find_s0(z, tol=1e-10, max_iter=50):
    """The zero of f_z near s = -1, by Newton iteration in h = s + 1.

    At z = 1 the zero and the pole at z - 2 coalesce; s_0(1) = -1 is the
    limiting value and is returned directly.
    """
    z = complex(z)
    _check_disk(z)
    w = z - 1
    if abs(w) < 1e-12:
        return RootResult(z, -1 + 0j, 0, 0.0)
    k = constants()
    h = k.C * w + k.K * w * w
    for it in range(1, max_iter + 1):
        val, der = _pq(z, h, guard=False)
        step = val / der
        h -= step
        if abs(step) <= 1e-15 * max(abs(h), 1e-300) or abs(step) < 1e-17:
            break
    else:
        raise ConvergenceError(f"Newton failed for z = {z}")
    val, _ = _pq(z, h, guard=False)
    residual = abs(val / z)
    if residual > tol or abs(h) > 0.5:
        raise ConvergenceError(f"root for z = {z} has residual {residual:.2e}, |s0+1| = {abs(h):.3f}")
    return RootResult(z, h - 1, it, residual)


def residue_Cz(z, root=None):
    """C_z = Gamma(s_z+1-z) Gamma(z) z / ((s+1) Q_z(s))'|_{s = s_z}.

    C_1 = C is the limiting value at z = 1.
    """
    z = complex(z)
    root = root or find_s0(z)
    if abs(z - 1) < 1e-12:
        return complex(constants().C)
    h = root.s0 + 1
    _, der = _pq(z, h, guard=False)
    if abs(der) < 1e-12:
        raise DomainError("derivative of (s+1)Q_z vanishes at s_0")
    return cgamma(root.s0 + 1 - z) * cgamma(z) * z / der


def richardson_derivative(fn, x, step=1e-5):
    """Central difference with one Richardson step (error O(step^4))."""

    def d(e):
        return (fn(x + e) - fn(x - e)) / (2 * e)

    return (4 * d(step / 2) - d(step)) / 3


def root_table(phis):
    """Rows (phi, s0, Cz, residual) for z = e^{i phi}."""
    rows = []
    for phi in phis:
        z = cmath.exp(1j * phi)
        r = find_s0(z)
        rows.append((phi, r.s0, residue_Cz(z, r), r.residual))
    return rows


def write_root_csv(path_or_file, rows):
    """CSV with header ``phi, re_s0, im_s0, re_Cz, im_Cz, residual``."""
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        out = csv.writer(fh)
        out.writerow(["phi", "re_s0", "im_s0", "re_Cz", "im_Cz", "residual"])
        for phi, s0, cz, res in rows:
            out.writerow([f"{phi:.6g}", f"{s0.real:.12g}", f"{s0.imag:.12g}",
                          f"{cz.real:.12g}", f"{cz.imag:.12g}", f"{res:.3e}"])
    finally:
        if own:
            fh.close()


# ---------------------------------------------------------------------------
# d_z(v)


@dataclass(frozen=True)
class DzSolution:
    """d_z sampled in w = log(1 + v) on a uniform grid."""

    z: complex
    grid: SampledFunction
    s0: complex
    Cz: complex

    def __call__(self, v):
        v = np.asarray(v, dtype=float)
        scalar = v.ndim == 0
        v = np.atleast_1d(v)
        out = np.zeros(v.shape, dtype=complex)
        low = (v > 0) & (v <= 1)
        out[low] = v[low] ** (self.z - 1)
        high = v > 1
        if high.any():
            out[high] = self.grid(np.log1p(v[high]))
        return out[0] if scalar else out

    @property
    def v_max(self):
        return math.expm1(self.grid.end)

    def asymptotic(self, v):
        """The prediction C_z (v + 1)^{s_0(z)}."""
        return self.Cz * (np.asarray(v, dtype=float) + 1) ** self.s0


def _cell_moments(edges, z):
    # int u^{z-1} and int u^z over each cell
    e_z = edges ** z
    e_z1 = edges ** (z + 1)
    return (e_z[1:] - e_z[:-1]) / z, (e_z1[1:] - e_z1[:-1]) / (z + 1)


def solve_dz(z, v_max=50.0, h=0.0005, omega=None):
    """Solve the Volterra equation for d_z on [0, v_max].

    With v = e^w - 1 and q(w) = d_z(v) the equation is the convolution
    q(w) = (e^w - 1)^{z-1} - int_0^{w - log 2} q(u) M(w - u) du,
    M(w) = omega_z(e^w - 1) vanishing below log 2.  On a grid with
    log 2 = m steps the upper limit is a node and the scheme is explicit.
    Product integration: on [0, log 2], where q is known in closed form,
    the weight u^{z-1} is integrated exactly against a linear interpolant
    of the smooth remainder; beyond log 2 the product trapezoid rule.
    ``h`` bounds the step in w.
    """
    z = complex(z)
    _check_disk(z)
    if h > 0.01:
        raise DomainError("need h <= 0.01")
    L = math.log(2.0)
    m = math.ceil(L / h - 1e-9)
    eta = L / m
    N = math.ceil(math.log1p(v_max) / eta - 1e-9)
    w = eta * np.arange(N + 1)
    u_need = math.expm1(w[-1])
    if omega is None:
        omega = solve_omega(z, max(3.0, math.ceil(u_need) + 1), 0.005)
    elif omega.end < u_need:
        raise DomainError("omega_z grid too short for this v_max")

    M = np.zeros(N + 1, dtype=complex)
    M[m:] = omega(np.expm1(w[m:]))
    M[m] = z

    q = np.zeros(N + 1, dtype=complex)
    head = np.expm1(w[1:]) ** (z - 1)
    q[1:] = head
    q[0] = 1.0 if z == 1 else np.nan

    # smooth factor rho(u) = ((e^u - 1)/u)^{z-1} on [0, log 2]
    uu = w[: m + 1]
    rho = np.ones(m + 1, dtype=complex)
    rho[1:] = (np.expm1(uu[1:]) / uu[1:]) ** (z - 1)
    mu0, mu1 = _cell_moments(uu.astype(complex), z)
    alpha = (uu[1:] * mu0 - mu1) / eta
    beta = (mu1 - uu[:-1] * mu0) / eta

    for j in range(m + 1, N + 1):
        top = j - m
        n1 = min(top, m)
        G = rho[: n1 + 1] * M[j - np.arange(n1 + 1)]
        S = np.dot(alpha[:n1], G[:-1]) + np.dot(beta[:n1], G[1:])
        if top > m:
            prod = q[m : top + 1] * M[j - top : j - m + 1][::-1]
            S += eta * (prod.sum() - 0.5 * (prod[0] + prod[-1]))
        q[j] = head[j - 1] - S

    if z != 1:
        q[0] = q[1]  # placeholder: d_z(0+) is singular; the interpolant is never used below v = 1
    grid = SampledFunction(0.0, eta, q, breaks=(m,), support=0.0)
    if abs(z - 1) < 1e-12:
        s0, cz = -1 + 0j, complex(constants().C)
    else:
        root = find_s0(z)
        s0, cz = root.s0, residue_Cz(z, root)
    return DzSolution(z, grid, s0, cz)
