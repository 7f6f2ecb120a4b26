"""Exact integer-side computations.

Factorization, divisor chains, membership in the theta-chained sets
``B_theta`` (t-dense integers, practical numbers, custom rules), their
enumeration, and the brute-force oracles used to cross-check membership.

A theta rule is always evaluated as an *integer floor*: for a prime p,
``p <= theta(n)`` is equivalent to ``p <= floor(theta(n))``, so every
comparison in the chain condition is exact integer arithmetic.
"""

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import sympy

from .errors import BudgetExceeded, DomainError
from .sieve import PrimeList, TABLE_BUDGET

#: cap on tau(n) for the divisor-list oracle
DIVISOR_CAP = 10**5
#: cap on n for the subset-sum practical-number oracle
PRACTICAL_ORACLE_CAP = 10**6
#: default ceiling on x for enumeration
ENUM_BUDGET = 10**9

_UNBOUNDED = np.iinfo(np.int64).max


class NuMode(enum.Enum):
    """Which prime-factor count nu(n) to use."""

    BIG_OMEGA = "Omega"
    SMALL_OMEGA = "omega"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        key = str(value)
        if key in ("Omega", "big", "BigOmega", "BIG_OMEGA"):
            return cls.BIG_OMEGA
        if key in ("omega", "small", "SmallOmega", "SMALL_OMEGA"):
            return cls.SMALL_OMEGA
        raise ValueError(f"unknown nu mode {value!r}")


@dataclass(frozen=True)
class FactoredInteger:
    """An integer together with its prime factorization."""

    value: int
    factors: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple((int(p), int(e)) for p, e in self.factors))

    @property
    def big_omega(self):
        return sum(e for _, e in self.factors)

    @property
    def small_omega(self):
        return len(self.factors)

    def nu(self, mode):
        return self.big_omega if NuMode.parse(mode) is NuMode.BIG_OMEGA else self.small_omega

    @property
    def largest_prime(self):
        return self.factors[-1][0] if self.factors else 1

    def sigma(self):
        """Sum of divisors."""
        out = 1
        for p, e in self.factors:
            out *= (p ** (e + 1) - 1) // (p - 1)
        return out

    def prefixes(self):
        """Yield (prefix product, next prime) along the factorization."""
        prefix = FactoredInteger(1)
        for i, (p, e) in enumerate(self.factors):
            yield prefix, p
            prefix = FactoredInteger(prefix.value * p**e, self.factors[: i + 1])

    def to_line(self):
        """Checkpoint line ``<value> <p:e,...> <Omega> <omega>``."""
        fac = ",".join(f"{p}:{e}" for p, e in self.factors) or "-"
        return f"{self.value} {fac} {self.big_omega} {self.small_omega}"

    @classmethod
    def from_line(cls, line):
        value, fac, big, small = line.split()
        factors = () if fac == "-" else tuple(tuple(map(int, f.split(":"))) for f in fac.split(","))
        out = cls(int(value), factors)
        if out.big_omega != int(big) or out.small_omega != int(small):
            raise ValueError(f"inconsistent checkpoint line: {line!r}")
        return out


def factorize(n):
    """Full factorization of 1 <= n <= 2**63 (sympy's factorint underneath)."""
    n = int(n)
    if n < 1:
        raise DomainError("factorize needs n >= 1")
    return FactoredInteger(n, sorted(sympy.factorint(n).items()))


def factor_range(n):
    """FactoredInteger for every m in 1..n, via a smallest-factor table."""
    from .sieve import spf_table

    spf = spf_table(n)
    out = [FactoredInteger(1)]
    for m in range(2, n + 1):
        facs = []
        r = m
        while r > 1:
            p = int(spf[r])
            e = 0
            while r % p == 0:
                r //= p
                e += 1
            facs.append((p, e))
        out.append(FactoredInteger(m, facs))
    return out


def _as_factored(n):
    return n if isinstance(n, FactoredInteger) else factorize(n)


def divisors_sorted(n, cap=DIVISOR_CAP):
    """All divisors of n in increasing order."""
    n = _as_factored(n)
    tau = math.prod(e + 1 for _, e in n.factors)
    if tau > cap:
        raise BudgetExceeded(f"tau({n.value}) = {tau} exceeds divisor cap {cap}")
    divs = [1]
    for p, e in n.factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    divs.sort()
    return divs


def max_divisor_ratio(n):
    """Largest ratio d_{j+1}/d_j of consecutive divisors, as an exact Fraction."""
    n = _as_factored(n)
    if n.value < 2:
        raise DomainError("max_divisor_ratio is undefined for n = 1")
    d = divisors_sorted(n)
    return max(Fraction(b, a) for a, b in zip(d, d[1:]))


def is_t_dense_oracle(n, t):
    """Divisor-ratio test for n in D(t), independent of the chain test."""
    n = _as_factored(n)
    t = _exact(t)
    if n.value == 1:
        return True
    d = divisors_sorted(n)
    return all(b <= t * a for a, b in zip(d, d[1:]))


def is_practical_oracle(n, cap=PRACTICAL_ORACLE_CAP):
    """True iff every m <= n is a sum of distinct divisors of n (subset-sum)."""
    n = int(n)
    if n > cap:
        raise BudgetExceeded(f"practical oracle capped at {cap}")
    if n == 1:
        return True
    mask = (1 << (n + 1)) - 1
    reach = 1
    for d in divisors_sorted(n):
        reach = (reach | (reach << d)) & mask
    return reach == mask


def _exact(t):
    if isinstance(t, Fraction):
        return t
    if isinstance(t, str):
        return Fraction(t)
    return Fraction(t)


@dataclass(frozen=True)
class ThetaRule:
    """Chain bound theta(n) selecting a set B_theta.

    ``kind`` is ``"dense"`` (theta(n) = t n), ``"practical"``
    (theta(n) = 1 + sigma(n)) or ``"custom"`` (``func`` maps a
    FactoredInteger to a real or ``math.inf``).
    """

    kind: str
    t: Fraction = None
    func: object = field(default=None, compare=False)
    tag: str = ""

    @classmethod
    def dense(cls, t):
        t = _exact(t)
        if t < 2:
            raise DomainError(f"dense rule needs t >= 2, got {t}")
        return cls("dense", t=t)

    @classmethod
    def practical(cls):
        return cls("practical")

    @classmethod
    def custom(cls, func, tag="custom"):
        return cls("custom", func=func, tag=tag)

    @property
    def label(self):
        if self.kind == "dense":
            return f"dense(t={float(self.t):g})"
        return self.kind if self.kind == "practical" else f"custom({self.tag})"

    def theta(self, n):
        """theta(n) as a number (Fraction, int, float or inf)."""
        n = _as_factored(n)
        if self.kind == "dense":
            return self.t * n.value
        if self.kind == "practical":
            return 1 + n.sigma()
        return self.func(n)

    def theta_floor(self, n):
        """floor(theta(n)) as an int; ``_UNBOUNDED`` for infinity."""
        th = self.theta(n)
        if isinstance(th, float) and math.isinf(th):
            return _UNBOUNDED
        return math.floor(th)

    def check(self, n):
        """Validate the standing hypothesis theta(1) >= 2, theta(n) >= P^+(n)."""
        n = _as_factored(n)
        floor_th = self.theta_floor(n)
        if n.value == 1:
            return floor_th >= 2
        return floor_th >= n.largest_prime


def is_member(n, rule):
    """Chain test: p_i <= theta(p_1^a_1 ... p_{i-1}^a_{i-1}) for every i."""
    n = _as_factored(n)
    return all(p <= rule.theta_floor(prefix) for prefix, p in n.prefixes())


# ---------------------------------------------------------------------------
# enumeration


def _check_x(x):
    x = int(math.floor(x))
    if x < 1:
        raise DomainError("x must be >= 1")
    if x > ENUM_BUDGET:
        raise BudgetExceeded(f"x = {x} exceeds enumeration budget {ENUM_BUDGET}")
    return x


def enumerate_B(rule, x, start=0):
    """Yield the members of B_theta in (start, x] in increasing order.

    Depth-first search over factorization prefixes: a node n with largest
    prime P has children n p^k for primes P < p <= min(theta(n), x/n).
    Each member is reached from exactly one parent, so the output is
    duplicate-free.  The stream is buffered and sorted before emission.
    """
    x = _check_x(x)
    primes = PrimeList(1000)
    out = []
    stack = [FactoredInteger(1)]
    while stack:
        n = stack.pop()
        if n.value > start:
            out.append(n)
        hi = min(rule.theta_floor(n), x // n.value)
        if hi <= n.largest_prime:
            continue
        if hi > primes.bound:
            if hi > TABLE_BUDGET:
                raise BudgetExceeded(f"prime bound {hi} exceeds table budget")
            primes.ensure(hi)
        ps = primes.primes
        lo_i = int(np.searchsorted(ps, n.largest_prime, side="right"))
        hi_i = int(np.searchsorted(ps, hi, side="right"))
        for p in ps[lo_i:hi_i].tolist():
            m, e = n.value * p, 1
            while m <= x:
                stack.append(FactoredInteger(m, n.factors + ((p, e),)))
                m *= p
                e += 1
    out.sort(key=lambda f: f.value)
    yield from out


@dataclass
class MemberArrays:
    """Members of B_theta(x) as parallel numpy arrays, sorted by value."""

    x: int
    values: np.ndarray
    big_omega: np.ndarray
    small_omega: np.ndarray

    def __len__(self):
        return len(self.values)

    def nu(self, mode):
        return self.big_omega if NuMode.parse(mode) is NuMode.BIG_OMEGA else self.small_omega

    def upto(self, x):
        """The members <= x (prefix of the sorted arrays)."""
        k = int(np.searchsorted(self.values, x, side="right"))
        return MemberArrays(int(x), self.values[:k], self.big_omega[:k], self.small_omega[:k])


def _floor_mul(t, n):
    """floor(t * n) for a Fraction t and int64 array n, exactly."""
    num, den = t.numerator, t.denominator
    if n.size == 0:
        return n.copy()
    if num * int(n.max()) < 2**62:
        return (num * n) // den
    return np.array([num * int(v) // den for v in n.tolist()], dtype=np.int64)


def members(rule, x):
    """Enumerate B_theta(x) level by level with numpy (dense/practical rules).

    Level k holds the members with k distinct prime factors; each level is
    expanded in one vectorized step.  Custom rules fall back to the DFS.
    """
    x = _check_x(x)
    if rule.kind == "custom":
        fs = list(enumerate_B(rule, x))
        return MemberArrays(
            x,
            np.array([f.value for f in fs], dtype=np.int64),
            np.array([f.big_omega for f in fs], dtype=np.int16),
            np.array([f.small_omega for f in fs], dtype=np.int16),
        )
    primes = PrimeList(1000)
    one = np.ones(1, dtype=np.int64)
    frontier = {
        "val": one.copy(),
        "lp": one.copy(),
        "big": np.zeros(1, dtype=np.int16),
        "sig": one.copy(),
    }
    chunks = []
    level = 0
    while frontier["val"].size:
        chunks.append((frontier["val"], frontier["big"], np.full(frontier["val"].size, level, np.int16)))
        val = frontier["val"]
        if rule.kind == "dense":
            th = _floor_mul(rule.t, val)
        else:
            th = frontier["sig"] + 1
        hi = np.minimum(th, x // val)
        keep = hi > frontier["lp"]
        if not keep.any():
            break
        val, hi = val[keep], hi[keep]
        lp, big, sig = frontier["lp"][keep], frontier["big"][keep], frontier["sig"][keep]
        primes.ensure(int(hi.max()))
        ps = primes.primes
        lo_i = np.searchsorted(ps, lp, side="right")
        hi_i = np.searchsorted(ps, hi, side="right")
        cnt = hi_i - lo_i
        parent = np.repeat(np.arange(val.size), cnt)
        offs = np.arange(parent.size) - np.repeat(np.cumsum(cnt) - cnt, cnt)
        p = ps[lo_i[parent] + offs]
        par_sig = sig[parent]
        cur_val = val[parent] * p
        cur_big = big[parent] + 1
        # geo = 1 + p + ... + p^k, so sigma(n p^k) = sigma(n) * geo
        geo = 1 + p
        nxt = {"val": [], "lp": [], "big": [], "sig": []}
        while cur_val.size:
            nxt["val"].append(cur_val)
            nxt["lp"].append(p)
            nxt["big"].append(cur_big)
            nxt["sig"].append(par_sig * geo)
            ok = cur_val <= x // p
            p = p[ok]
            cur_val, cur_big = cur_val[ok] * p, cur_big[ok] + 1
            par_sig, geo = par_sig[ok], geo[ok] * p + 1
        frontier = {k: np.concatenate(v) if v else np.zeros(0, np.int64) for k, v in nxt.items()}
        level += 1
    vals = np.concatenate([c[0] for c in chunks])
    bigs = np.concatenate([c[1] for c in chunks])
    smalls = np.concatenate([c[2] for c in chunks])
    order = np.argsort(vals, kind="stable")
    return MemberArrays(x, vals[order], bigs[order].astype(np.int16), smalls[order])


def count_D(x, t):
    """D(x, t) = |D(x, t)|, the number of t-dense n <= x."""
    return len(members(ThetaRule.dense(t), x))


# ---------------------------------------------------------------------------
# checkpoint files


def write_checkpoint(path, stream):
    """Write FactoredIntegers as sorted checkpoint lines; return the count."""
    count = 0
    with open(path, "w") as fh:
        for f in stream:
            fh.write(f.to_line() + "\n")
            count += 1
    return count


def read_checkpoint(path):
    with open(path) as fh:
        return [FactoredInteger.from_line(line) for line in fh if line.strip()]


def resume_checkpoint(path, rule, x):
    """Extend an existing checkpoint file with the members in (last, x]."""
    last = 0
    try:
        with open(path) as fh:
            for line in fh:
                if line.strip():
                    last = int(line.split()[0])
    except FileNotFoundError:
        pass
    added = 0
    with open(path, "a") as fh:
        for f in enumerate_B(rule, x, start=last):
            fh.write(f.to_line() + "\n")
            added += 1
    return added
