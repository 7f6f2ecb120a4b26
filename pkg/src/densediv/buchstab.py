"""The Buchstab-type function omega_z(u).

omega_z is 0 on [0, 1), z/u on [1, 2], and for u > 2 solves
u omega'(u) + omega(u) = z omega(u - 1).  Since the left side is
(u omega)', this integrates to

    omega_z(u) = (z / u) * (1 + int_1^{u-1} omega_z(r) dr)      (u >= 1),

so the values on (k, k+1] follow from a quadrature over [k-1, k] alone.
With a grid step 1/N every integer is a node, each unit piece is smooth,
and a whole piece is computed in one vectorized step.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .special import EULER_GAMMA, coeff_table, rgamma


def _lagrange_cell_weights(order):
    """w[r, i] = int_r^{r+1} L_i(s) ds for Lagrange basis on nodes 0..order-1."""
    nodes = np.arange(order, dtype=float)
    w = np.zeros((order - 1, order))
    for i in range(order):
        others = np.delete(nodes, i)
        poly = np.poly1d(others, r=True) / np.prod(nodes[i] - others)
        prim = poly.integ()
        for r in range(order - 1):
            w[r, i] = prim(r + 1) - prim(r)
    return w


_ORDER = 6
_CELL_W = _lagrange_cell_weights(_ORDER)


def piece_cumulative_integral(values, h):
    """Cumulative integral of a smooth sampled piece, from its first node.

    Degree-5 Lagrange interpolation on 6-node stencils kept inside the
    piece; returns an array of the same length starting at 0.
    """
    n = len(values) - 1
    if n < _ORDER - 1:
        raise DomainError("piece too short for the quadrature stencil")
    cells = np.arange(n)
    start = np.clip(cells - (_ORDER // 2 - 1), 0, n - (_ORDER - 1))
    rel = cells - start
    acc = np.zeros(n, dtype=complex)
    for i in range(_ORDER):
        acc += _CELL_W[rel, i] * values[start + i]
    out = np.zeros(n + 1, dtype=complex)
    out[1:] = np.cumsum(acc) * h
    return out


@dataclass(frozen=True)
class SampledFunction:
    """Uniform-grid samples with piecewise local polynomial interpolation.

    ``breaks`` are node indices where smoothness may fail; interpolation
    stencils never straddle one.  Queries below ``support`` return 0.
    """

    start: float
    step: float
    values: np.ndarray
    breaks: tuple = ()
    support: float = -math.inf
    order: int = 4

    @property
    def grid(self):
        return self.start + self.step * np.arange(len(self.values))

    @property
    def end(self):
        return self.start + self.step * (len(self.values) - 1)

    def __call__(self, u):
        u = np.asarray(u, dtype=float)
        scalar = u.ndim == 0
        u = np.atleast_1d(u)
        if np.any(u > self.end + 1e-9 * self.step) or np.any(u < self.start - 1e-9 * self.step):
            raise DomainError("evaluation outside the sampled range")
        out = np.zeros(u.shape, dtype=self.values.dtype)
        live = u >= self.support
        uu = u[live]
        pos = (uu - self.start) / self.step
        bounds = np.array((0,) + tuple(self.breaks) + (len(self.values) - 1,))
        # piece containing pos; a break node belongs to the piece on its right
        piece = np.clip(np.searchsorted(bounds, pos + 1e-9, side="right") - 1, 0, len(bounds) - 2)
        lo, hi = bounds[piece], bounds[piece + 1]
        k = self.order
        s = np.clip(np.floor(pos).astype(int) - (k // 2 - 1), lo, np.maximum(hi - (k - 1), lo))
        res = np.zeros(uu.shape, dtype=self.values.dtype)
        for i in range(k):
            li = np.ones(uu.shape)
            for j in range(k):
                if j != i:
                    li *= (pos - (s + j)) / (i - j)
            res += li * self.values[np.minimum(s + i, len(self.values) - 1)]
        out[live] = res
        return out[0] if scalar else out


def solve_omega(z, u_max=50.0, h=0.005):
    """Sample omega_z on [0, u_max] with step 1/ceil(1/h)."""
    z = complex(z)
    if not 0.5 <= abs(z) <= 2:
        raise DomainError("solve_omega needs 1/2 <= |z| <= 2")
    if h > 0.01:
        raise DomainError("step too large for the history quadrature (need h <= 0.01)")
    if u_max > 200:
        raise DomainError("solve_omega supports u_max <= 200")
    N = math.ceil(1 / h - 1e-9)
    step = 1.0 / N
    U = max(3, math.ceil(u_max - 1e-12))
    vals = np.zeros(U * N + 1, dtype=complex)
    u = np.arange(U * N + 1) * step
    vals[N : 2 * N + 1] = z / u[N : 2 * N + 1]
    # F = int_1^v omega on the piece [1, 2] is z log v exactly
    F_piece = z * np.log(u[N : 2 * N + 1])
    for k in range(2, U):
        seg = slice(k * N, (k + 1) * N + 1)
        vals[seg] = z / u[seg] * (1 + F_piece)
        F_piece = F_piece[-1] + piece_cumulative_integral(vals[seg], step)
    return SampledFunction(0.0, step, vals, breaks=tuple(k * N for k in range(1, U)), support=1.0)


def omega_asymptotic(z, u, K=0, shifted=False):
    """Partial sum of the large-u expansion of omega_z.

    ``shifted=False``: e^{-gamma z} sum_{k<=K} b_k(z) u^{z-1-k} / Gamma(z-k).
    ``shifted=True`` uses a_k(z) and powers of (u + 1).
    """
    if K > 10:
        raise DomainError("omega_asymptotic supports K <= 10")
    z = complex(z)
    ct = coeff_table(z, max(K, 1))
    coeff = ct.a if shifted else ct.b
    base = np.asarray(u, dtype=float) + (1.0 if shifted else 0.0)
    total = np.zeros(base.shape, dtype=complex)
    for k in range(K + 1):
        total = total + coeff[k] * base ** (z - 1 - k) * rgamma(z - k)
    total = cmath.exp(-EULER_GAMMA * z) * total
    return complex(total) if total.ndim == 0 else total


def omega_derivative_asymptotic(z, u, K=0, shifted=False):
    """Matching expansion for omega_z'(u) (Gamma(z-k-1) in the denominators)."""
    z = complex(z)
    ct = coeff_table(z, max(K, 1))
    coeff = ct.a if shifted else ct.b
    base = np.asarray(u, dtype=float) + (1.0 if shifted else 0.0)
    total = np.zeros(base.shape, dtype=complex)
    for k in range(K + 1):
        total = total + coeff[k] * base ** (z - 2 - k) * rgamma(z - k - 1)
    total = cmath.exp(-EULER_GAMMA * z) * total
    return complex(total) if total.ndim == 0 else total
