"""Prime sieves and exact sifted sums.

Everything here works on numpy arrays.  The sifted-sum machinery reduces
``Phi_nu(x, y, z)`` to an integer histogram of ``nu(n)`` over the y-rough
integers ``n <= x``; any ``z`` is then a polynomial evaluation of that
histogram, so several ``z`` values and both counting modes share one pass.
"""

import math

import numpy as np

from .errors import BudgetExceeded

#: largest x accepted by the segmented sifted-sum sieve
SIEVE_BUDGET = 10**9
#: largest bound for a materialized prime list / smallest-factor table
TABLE_BUDGET = 2 * 10**8

_SEGMENT = 1 << 22


def primes_upto(n):
    """All primes p <= n as an int64 array (odd-only Eratosthenes)."""
    n = int(n)
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    if n > TABLE_BUDGET:
        raise BudgetExceeded(f"prime table up to {n} exceeds budget {TABLE_BUDGET}")
    # index i stands for 2*i + 1
    size = (n - 1) // 2 + 1
    is_p = np.ones(size, dtype=bool)
    is_p[0] = False
    for i in range(1, (math.isqrt(n) - 1) // 2 + 1):
        if is_p[i]:
            p = 2 * i + 1
            is_p[p * p // 2::p] = False
    odd = 2 * np.flatnonzero(is_p).astype(np.int64) + 1
    return np.concatenate(([2], odd)).astype(np.int64)


class PrimeList:
    """Growable sorted prime list with counting queries."""

    def __init__(self, bound=1000):
        self.bound = 0
        self.primes = np.zeros(0, dtype=np.int64)
        self.ensure(bound)

    def ensure(self, bound):
        bound = int(bound)
        if bound > self.bound:
            # grow geometrically so repeated small extensions stay cheap
            target = max(bound, 2 * self.bound)
            if target > TABLE_BUDGET >= bound:
                target = bound
            self.primes = primes_upto(target)
            self.bound = target
        return self

    def count_le(self, n):
        """pi(n) for scalar or array n (requires n <= bound)."""
        return np.searchsorted(self.primes, n, side="right")


def spf_table(n):
    """Smallest-prime-factor table ``spf[0..n]`` (spf[0] = spf[1] = 0)."""
    n = int(n)
    if n > TABLE_BUDGET:
        raise BudgetExceeded(f"factor table up to {n} exceeds budget {TABLE_BUDGET}")
    spf = np.zeros(n + 1, dtype=np.int64 if n >= 2**31 else np.int32)
    if n >= 2:
        spf[2::2] = 2
    for p in range(3, math.isqrt(n) + 1, 2):
        if spf[p] == 0:
            block = spf[p * p::2 * p]
            block[block == 0] = p
    unset = spf == 0
    unset[:2] = False
    spf[unset] = np.flatnonzero(unset)
    return spf


def nu_tables(n):
    """Return ``(spf, big_omega, small_omega)`` arrays indexed by 0..n.

    Built by the recurrence nu(m) = nu(m / spf(m)) + [...] in increasing m,
    vectorized over blocks [k, 2k) whose quotients are already final.
    """
    spf = spf_table(n)
    big = np.zeros(n + 1, dtype=np.int8)
    small = np.zeros(n + 1, dtype=np.int8)
    lo = 2
    while lo <= n:
        hi = min(2 * lo, n + 1)
        m = np.arange(lo, hi)
        p = spf[lo:hi].astype(np.int64)
        q = m // p
        big[lo:hi] = big[q] + 1
        # q % p == 0 means p already counted in q
        small[lo:hi] = small[q] + (q % p != 0)
        lo = hi
    return spf, big, small


def _rough_histograms(lo, hi, y, small_primes):
    """Histograms of Omega and omega over y-rough n in [lo, hi)."""
    vals = np.arange(lo, hi, dtype=np.int64)
    rough = np.ones(hi - lo, dtype=bool)
    resid = vals.copy()
    big = np.zeros(hi - lo, dtype=np.int16)
    small = np.zeros(hi - lo, dtype=np.int16)
    for p in small_primes:
        p = int(p)
        start = (-lo) % p
        if p <= y:
            rough[start::p] = False
            continue
        if p * p > hi - 1:
            break
        sl = slice(start, None, p)
        small[sl] += 1
        pk = p
        while pk <= hi - 1:
            s = (-lo) % pk
            big[s::pk] += 1
            resid[s::pk] //= p
            if pk > (hi - 1) // p:
                break
            pk *= p
    tail = resid > 1
    big += tail
    small += tail
    nb = np.bincount(big[rough], minlength=1)
    ns = np.bincount(small[rough], minlength=1)
    return nb, ns


def sifted_histograms(x, y):
    """Exact counts of y-rough n <= x by number of prime factors.

    Returns ``(hist_big, hist_small)`` where ``hist_big[k]`` counts the
    n <= x with P^-(n) > y and Omega(n) = k.
    """
    x = int(math.floor(x))
    if x < 1:
        return np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64)
    if x > SIEVE_BUDGET:
        raise BudgetExceeded(f"sifted sum up to {x} exceeds budget {SIEVE_BUDGET}")
    y = math.floor(y) if math.isfinite(y) else x
    small_primes = primes_upto(max(math.isqrt(x), min(y, x)))
    hb = np.zeros(64, dtype=np.int64)
    hs = np.zeros(64, dtype=np.int64)
    for lo in range(1, x + 1, _SEGMENT):
        hi = min(lo + _SEGMENT, x + 1)
        nb, ns = _rough_histograms(lo, hi, y, small_primes)
        hb[: len(nb)] += nb
        hs[: len(ns)] += ns
    return np.trim_zeros(hb, "b"), np.trim_zeros(hs, "b")


def poly_sum(hist, z):
    """sum_k hist[k] * z**k by Horner's rule (exact for integer z)."""
    acc = 0
    for c in hist[::-1]:
        acc = acc * z + int(c)
    return acc


def direct_sifted_sum(x, y, z, mode="omega"):
    """Phi_nu(x, y, z): sum of z**nu(n) over n <= x with P^-(n) > y.

    Exact integer counts from a segmented sieve; the only rounding is the
    final polynomial evaluation in z.
    """
    from .arithmetic import NuMode

    mode = NuMode.parse(mode)
    if abs(z) > 2:
        raise ValueError("need |z| <= 2")
    hb, hs = sifted_histograms(x, y)
    return poly_sum(hb if mode is NuMode.BIG_OMEGA else hs, z)


class SiftTable:
    """Per-integer tables up to n for many sifted-sum queries.

    ``phi(X, y, z)`` costs O(X) with no sieving, which suits the many small
    queries of the functional-equation identity.
    """

    def __init__(self, n):
        self.n = int(n)
        spf, big, small = nu_tables(self.n)
        self.lpf = spf.astype(np.int64)
        # P^-(1) = infinity
        self.lpf[1] = np.iinfo(np.int64).max
        self.big = big
        self.small = small

    def nu(self, mode):
        from .arithmetic import NuMode

        return self.big if NuMode.parse(mode) is NuMode.BIG_OMEGA else self.small

    def zpow(self, z, mode):
        table = np.power(complex(z), np.arange(64))
        return table[self.nu(mode)]

    def phi(self, X, y, zp):
        """Sifted sum using a precomputed ``zp = zpow(z, mode)``."""
        X = min(int(X), self.n)
        if X < 1:
            return 0j
        sel = self.lpf[1 : X + 1] > y
        return zp[1 : X + 1][sel].sum()
