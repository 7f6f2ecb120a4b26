"""Statistics of nu(n) over enumerated sets, compared with the Gaussian
law, the characteristic-function asymptotics and the large-y sifted sums.

All samples are exact: they come from ``members`` and are reduced to
integer histograms of nu before any floating point enters.
"""

import cmath
import csv
import functools
import hashlib
import json
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy import special as sps

from .arithmetic import NuMode, ThetaRule, members
from .buchstab import solve_omega
from .errors import DomainError
from .laplace import find_s0
from .sieve import SiftTable, direct_sifted_sum
from .special import EULER_GAMMA, constants, rgamma


def normal_cdf(y):
    """Standard normal distribution function (scalar or array)."""
    out = sps.ndtr(np.asarray(y, dtype=float))
    return float(out) if np.ndim(out) == 0 else out


def loglog(x):
    return math.log(math.log(x))


# ---------------------------------------------------------------------------
# samples


@dataclass(frozen=True)
class EmpiricalDistribution:
    """A sorted sample of nu-values, stored as a histogram."""

    counts: np.ndarray  # counts[k] = #{n : nu(n) = k}

    @classmethod
    def from_values(cls, values):
        values = np.asarray(values, dtype=np.int64)
        if values.size == 0:
            raise DomainError("empty sample")
        if values.min() < 0:
            raise DomainError("nu-values are non-negative")
        return cls(np.bincount(values))

    @property
    def n(self):
        return int(self.counts.sum())

    @property
    def sample(self):
        return np.repeat(np.arange(len(self.counts)), self.counts)

    @property
    def mean(self):
        k = np.arange(len(self.counts))
        return float(np.dot(k, self.counts)) / self.n

    @property
    def variance(self):
        k = np.arange(len(self.counts)) - self.mean
        return float(np.dot(k * k, self.counts)) / self.n

    def cdf(self, y):
        """(1/n) #{nu <= y}."""
        cum = np.cumsum(self.counts)
        idx = np.floor(np.asarray(y, dtype=float)).astype(int)
        out = np.where(idx < 0, 0, cum[np.clip(idx, 0, len(cum) - 1)]) / self.n
        return float(out) if np.ndim(out) == 0 else out

    def char(self, phi):
        """(1/n) sum e^{i phi nu}, summed over the histogram."""
        k = np.arange(len(self.counts))
        return complex(np.dot(self.counts, np.exp(1j * phi * k))) / self.n


def collect_nu(rule, x, mode, pool=None):
    """The nu-values of B_theta(x); ``pool`` may hold a larger enumeration."""
    mode = NuMode.parse(mode)
    pool = pool if pool is not None else members(rule, x)
    return EmpiricalDistribution.from_values(pool.upto(x).nu(mode))


@dataclass(frozen=True)
class EKParams:
    """Centering and scaling of nu.

    Dense rules use mu = C log2 x + (1 - C) log2 t and the matching
    sigma^2 with V; chained rules (t is None) use C log2 x and V log2 x.
    """

    x: float
    t: float
    mu: float
    sigma2: float

    @classmethod
    def for_dense(cls, x, t):
        if not (x >= t >= 2 and x >= 6):
            raise DomainError("need x >= 6 and x >= t >= 2")
        k = constants()
        lx, lt = loglog(x), loglog(t)
        return cls(x, t, k.C * lx + (1 - k.C) * lt, k.V * lx + (1 - k.V) * lt)

    @classmethod
    def for_chain(cls, x):
        if x < 6:
            raise DomainError("need x >= 6")
        k = constants()
        return cls(x, None, k.C * loglog(x), k.V * loglog(x))

    @classmethod
    def for_rule(cls, rule, x):
        return cls.for_dense(x, float(rule.t)) if rule.kind == "dense" else cls.for_chain(x)

    @property
    def sigma(self):
        return math.sqrt(self.sigma2)


def ks_distance(dist, mu, sigma):
    """sup_y |F(mu + y sigma) - Phi(y)|, exact: the sup sits at a jump."""
    cum = np.cumsum(dist.counts) / dist.n
    jumps = np.flatnonzero(dist.counts)
    y = (jumps - mu) / sigma
    phi = normal_cdf(y)
    before = np.concatenate(([0.0], cum))[jumps]  # F just left of the jump
    after = cum[jumps]
    return float(max(np.max(np.abs(after - phi)), np.max(np.abs(before - phi))))


def ks_for(dist, params):
    return ks_distance(dist, params.mu, params.sigma)


# ---------------------------------------------------------------------------
# characteristic ratios


def _check_phi(phi):
    if abs(phi) > 0.2:
        raise DomainError("need |phi| <= 0.2")


def char_ratio(rule, x, phi, mode, pool=None):
    """B(x, e^{i phi}) / B(x), exact up to the final summation."""
    _check_phi(phi)
    return collect_nu(rule, x, mode, pool).char(phi)


def char_ratio_D(x, t, phi, mode, pool=None):
    return char_ratio(ThetaRule.dense(t), x, phi, mode, pool)


def char_ratio_B(rule, x, phi, mode, pool=None):
    return char_ratio(rule, x, phi, mode, pool)


def predict_ratio_D(x, t, phi):
    """(log x)^{1+s_0(z)} (log t)^{z-2-s_0(z)} at z = e^{i phi}."""
    z = cmath.exp(1j * phi)
    s0 = find_s0(z).s0
    return cmath.exp((1 + s0) * math.log(math.log(x)) + (z - 2 - s0) * math.log(math.log(t)))


def predict_ratio_B(x, phi, lam=1.0):
    """lambda_z (log x)^{1+s_0(z)}."""
    s0 = find_s0(cmath.exp(1j * phi)).s0
    return lam * cmath.exp((1 + s0) * loglog(x))


def fit_lambda(x, ratio, phi):
    """The scalar lambda_z making the chained prediction exact at x."""
    return ratio / predict_ratio_B(x, phi)


def ratio_slope(xs, ratios):
    """Least-squares slope of log|ratio| against log log x."""
    lx = np.log(np.log(np.asarray(xs, dtype=float)))
    slope, _ = np.polyfit(lx, np.log(np.abs(np.asarray(ratios))), 1)
    return float(slope)


# ---------------------------------------------------------------------------
# moments


@dataclass(frozen=True)
class MomentsReport:
    x: int
    t: float
    mode: str
    n_samples: int
    mean: float
    mu_ref: float
    variance: float
    sigma2_ref: float
    ks: float
    tail_count: int = 0
    chebyshev_bound: float = 0.0
    bound_checks: dict = field(default_factory=dict)

    @property
    def drift(self):
        return self.mean - self.mu_ref

    @property
    def variance_ratio(self):
        return self.variance / self.sigma2_ref


CSV_FIELDS = ("x", "t", "mode", "n_samples", "mean", "mu_ref", "variance", "sigma2_ref", "ks")


def moments_report(rule, x, mode, pool=None, xi=3.0):
    """Exact mean and variance of nu over B(x) against the reference law."""
    mode = NuMode.parse(mode)
    dist = collect_nu(rule, x, mode, pool)
    params = EKParams.for_rule(rule, x)
    # Chebyshev: #{|nu - mean| >= xi sd} <= n / xi^2
    k = np.arange(len(dist.counts))
    sd = math.sqrt(dist.variance)
    tail = int(dist.counts[np.abs(k - dist.mean) >= xi * sd].sum()) if sd > 0 else 0
    bound = dist.n / xi**2
    return MomentsReport(
        x=int(x),
        t=float(rule.t) if rule.kind == "dense" else None,
        mode=mode.value,
        n_samples=dist.n,
        mean=dist.mean,
        mu_ref=params.mu,
        variance=dist.variance,
        sigma2_ref=params.sigma2,
        ks=ks_for(dist, params),
        tail_count=tail,
        chebyshev_bound=bound,
        bound_checks={"chebyshev": tail <= bound},
    )


def write_report_csv(path_or_file, reports):
    own = isinstance(path_or_file, str)
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        out = csv.writer(fh)
        out.writerow(CSV_FIELDS)
        for r in reports:
            t = "" if r.t is None else f"{r.t:g}"
            out.writerow([r.x, t, r.mode, r.n_samples, f"{r.mean:.10f}", f"{r.mu_ref:.10f}",
                          f"{r.variance:.10f}", f"{r.sigma2_ref:.10f}", f"{r.ks:.10f}"])
    finally:
        if own:
            fh.close()


def config_hash(config):
    """git-style blob hash of the canonical JSON form of ``config``."""
    body = json.dumps(config, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha1(b"blob %d\0" % len(body) + body).hexdigest()


def run_manifest(config, reports):
    rows = [{k: v for k, v in asdict(r).items() if k != "bound_checks"} for r in reports]
    return {"config": config, "config_hash": config_hash(config), "rows": rows}


# ---------------------------------------------------------------------------
# sifted sums


@dataclass(frozen=True)
class SiftedComparison:
    x: float
    y: float
    z: complex
    mode: str
    exact: complex
    main_terms: complex

    @property
    def rel_err(self):
        return abs(self.main_terms - self.exact) / abs(self.exact)


@functools.lru_cache(maxsize=16)
def _omega_for(z):
    return solve_omega(z, 8.0, 0.005)


def sifted_main_terms(x, y, z):
    """(x w_z(u) - z y)/log y - x e^{-gamma z} u^{z-2} / (Gamma(z-1) (log y)^2)."""
    z = complex(z)
    ly = math.log(y)
    u = math.log(x) / ly
    if u > 8:
        raise DomainError("u = log x / log y beyond the sampled omega range")
    om = _omega_for(z)(u)
    second = x * cmath.exp(-EULER_GAMMA * z) * u ** (z - 2) * rgamma(z - 1) / ly**2
    return (x * om - z * y) / ly - second


def sifted_compare(x, y, phi, mode):
    if not 2 <= y <= x:
        raise DomainError("need 2 <= y <= x")
    u = math.log(x) / math.log(y)
    if not 1 <= u <= 6:
        raise DomainError("need 1 <= log x / log y <= 6")
    _check_phi(phi)
    mode = NuMode.parse(mode)
    z = cmath.exp(1j * phi)
    if phi == 0:
        z = 1 + 0j
    exact = direct_sifted_sum(x, y, z, mode)
    return SiftedComparison(x, y, z, mode.value, complex(exact), sifted_main_terms(x, y, z))


# ---------------------------------------------------------------------------
# functional equation


def functional_equation(rule, x, z, mode, table=None, pool=None):
    """Both sides of sum_{m<=x} z^nu(m) = sum_{n in B} z^nu(n) Phi(x/n, theta(n), z)."""
    mode = NuMode.parse(mode)
    x = int(x)
    table = table or SiftTable(x)
    zp = table.zpow(z, mode)
    lhs = zp[1 : x + 1].sum()
    pool = (pool if pool is not None else members(rule, x)).upto(x)
    pw = np.power(complex(z), np.arange(64))
    rhs = 0j
    for n, nu in zip(pool.values.tolist(), pool.nu(mode).tolist()):
        rhs += pw[nu] * table.phi(x // n, rule.theta_floor(n), zp)
    return complex(lhs), complex(rhs)


__all__ = [
    "EKParams",
    "EmpiricalDistribution",
    "MomentsReport",
    "SiftedComparison",
    "char_ratio_B",
    "char_ratio_D",
    "collect_nu",
    "config_hash",
    "fit_lambda",
    "functional_equation",
    "ks_distance",
    "moments_report",
    "normal_cdf",
    "predict_ratio_B",
    "predict_ratio_D",
    "ratio_slope",
    "run_manifest",
    "sifted_compare",
    "sifted_main_terms",
    "write_report_csv",
]
