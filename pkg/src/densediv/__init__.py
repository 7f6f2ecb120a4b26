"""Numerics for integers with dense divisors and other theta-chained sets.

Exact enumeration and sifted sums live in :mod:`densediv.arithmetic` and
:mod:`densediv.sieve`; the analytic side (omega_z, Q_z, s_0, d_z) in
:mod:`densediv.special`, :mod:`densediv.buchstab` and :mod:`densediv.laplace`;
statistical comparisons in :mod:`densediv.harness`.
"""

from .arithmetic import (
    FactoredInteger,
    MemberArrays,
    NuMode,
    ThetaRule,
    count_D,
    enumerate_B,
    factorize,
    is_member,
    is_practical_oracle,
    is_t_dense_oracle,
    max_divisor_ratio,
    members,
)
from .buchstab import SampledFunction, omega_asymptotic, solve_omega
from .errors import BudgetExceeded, ConvergenceError, DomainError
from .laplace import DzSolution, RootResult, eval_f, eval_Q, find_s0, residue_Cz, solve_dz
from .sieve import SiftTable, direct_sifted_sum, primes_upto
from .special import cgamma, coeff_table, constants, eval_I, eval_J, eval_T

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ConvergenceError",
    "DomainError",
    "DzSolution",
    "FactoredInteger",
    "MemberArrays",
    "NuMode",
    "RootResult",
    "SampledFunction",
    "SiftTable",
    "ThetaRule",
    "cgamma",
    "coeff_table",
    "constants",
    "count_D",
    "direct_sifted_sum",
    "enumerate_B",
    "eval_I",
    "eval_J",
    "eval_Q",
    "eval_T",
    "eval_f",
    "factorize",
    "find_s0",
    "is_member",
    "is_practical_oracle",
    "is_t_dense_oracle",
    "max_divisor_ratio",
    "members",
    "omega_asymptotic",
    "primes_upto",
    "residue_Cz",
    "solve_dz",
    "solve_omega",
]
