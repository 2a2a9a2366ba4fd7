"""Symmetric-group character degrees and the p'-degree criterion.

``degree(lam)`` is the number of standard Young tableaux of shape ``lam``
(the dimension of the irreducible character of S_n labelled by ``lam``),
computed exactly via the hook-length formula in beta-set form:

    degree = n! * prod_{i<j} (beta_i - beta_j) / prod_i beta_i!

``p_valuation_of_degree`` avoids the huge factorials: writing cnt(t) for the
number of hooks of length divisible by t,

    v_p(degree) = sum_{i >= 1, p^i <= n} ( floor(n / p^i) - cnt(p^i) )

and every summand is non-negative, so the sum can stop early when a positive
term appears and only a valuation > 0 matters.

``is_p_prime_degree`` decides v_p(degree) == 0 by the digit recursion: with
n = a_k p^k + (lower digits), the degree is prime to p iff lam has exactly
a_k hooks of length divisible by p^k and the p^k-core of lam (a partition of
n - a_k p^k) again has p'-degree.
"""

from __future__ import annotations

import math

from .errors import InternalConsistencyError
from .partitions import (
    Partition,
    beta_set,
    count_hooks_divisible,
    p_adic_digits,
    t_core,
)

__all__ = [
    "hook_product",
    "degree",
    "p_valuation_of_degree",
    "is_p_prime_degree",
]


def hook_product(lam: Partition) -> int:
    """Product of all hook lengths of ``lam``, via the beta-set identity.

    prod(hooks) = prod_i beta_i! / prod_{i<j} (beta_i - beta_j).
    """
    betas = beta_set(lam)
    numerator = math.prod(math.factorial(b) for b in betas)
    denominator = math.prod(
        betas[i] - betas[j]
        for i in range(len(betas))
        for j in range(i + 1, len(betas))
    )
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InternalConsistencyError(
            f"beta-set hook product not integral for {lam}"
        )
    return quotient


def degree(lam: Partition) -> int:
    """Character degree of S_n at ``lam`` (n = |lam|), by the hook formula."""
    n = sum(lam)
    quotient, remainder = divmod(math.factorial(n), hook_product(lam))
    if remainder:
        raise InternalConsistencyError(
            f"hook product of {lam} does not divide {n}!"
        )
    return quotient


def p_valuation_of_degree(lam: Partition, p: int, stop_if_positive: bool = False) -> int:
    """v_p(degree(lam)) without computing the degree.

    With ``stop_if_positive`` the function returns any positive partial sum
    immediately (useful when only zero/non-zero matters).
    """
    if p < 2:
        raise ValueError("p must be at least 2")
    n = sum(lam)
    total = 0
    power = p
    while power <= n:
        term = n // power - count_hooks_divisible(lam, power)
        if term < 0:
            raise InternalConsistencyError(
                f"negative valuation term for {lam} at {power}"
            )
        total += term
        if stop_if_positive and total > 0:
            return total
        power *= p
    return total


def is_p_prime_degree(lam: Partition, p: int) -> bool:
    """True iff p does not divide degree(lam), by the digit recursion."""
    if p < 2:
        raise ValueError("p must be at least 2")
    current = lam
    while True:
        n = sum(current)
        if n < p:
            return True
        digits = p_adic_digits(n, p)
        k = len(digits) - 1
        top = digits[k]
        power = p**k
        if count_hooks_divisible(current, power) != top:
            return False
        current = t_core(current, power)
        if sum(current) != n - top * power:
            raise InternalConsistencyError(
                f"{power}-core of {lam} has wrong size after digit step"
            )
