"""Exact cyclotomic arithmetic for generic character degrees.

A generic degree's q'-part is a signed rational times a power of q times a
product of cyclotomic polynomials Phi_m(q) with integer exponents; this module
provides that factored form (:class:`CycloFactorization`), exact evaluation,
the divisibility criterion "p | Phi_m(q) iff m = d * p^i where d = ord_p(q)",
and the multiplicative-order data (d, e, side) that drives table-row
selection for the classical group families.

Polynomials are coefficient tuples in ascending order of the power of q.
All arithmetic is exact (ints / fractions.Fraction).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InternalConsistencyError

__all__ = [
    "cyclotomic_coefficients",
    "phi_value",
    "CycloFactorization",
    "factor_q_pochhammer",
    "is_prime",
    "is_prime_power",
    "multiplicative_order",
    "OrderData",
    "order_data",
    "p_divides_phi",
    "p_valuation_of_value",
    "int_p_valuation",
]


def _poly_mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


def _poly_divmod_exact(num: tuple[int, ...], den: tuple[int, ...]) -> tuple[int, ...]:
    """Divide integer polynomials, requiring a zero remainder (monic divisor)."""
    if den[-1] != 1:
        raise InternalConsistencyError("cyclotomic divisor is not monic")
    rem = list(num)
    quot = [0] * (len(num) - len(den) + 1)
    for shift in range(len(quot) - 1, -1, -1):
        coeff = rem[shift + len(den) - 1]
        quot[shift] = coeff
        if coeff:
            for j, cd in enumerate(den):
                rem[shift + j] -= coeff * cd
    if any(rem):
        raise InternalConsistencyError("cyclotomic division left a remainder")
    return tuple(quot)


@functools.lru_cache(maxsize=None)
def cyclotomic_coefficients(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m, ascending: Phi_1 -> (-1, 1) meaning q - 1.

    Computed by dividing q^m - 1 by Phi_d for every proper divisor d of m.
    """
    if m < 1:
        raise ValueError("m must be positive")
    poly = tuple([-1] + [0] * (m - 1) + [1])  # q^m - 1
    for d in range(1, m):
        if m % d == 0:
            poly = _poly_divmod_exact(poly, cyclotomic_coefficients(d))
    return poly


def phi_value(m: int, q0):
    """Phi_m evaluated exactly at ``q0`` (int or Fraction)."""
    coeffs = cyclotomic_coefficients(m)
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * q0 + c
    return acc


@dataclass(frozen=True)
class CycloFactorization:
    """scalar * q^q_power * prod_m Phi_m(q)^factors[m], all exact.

    ``factors`` never stores zero exponents; exponents may be negative
    (quotients of degree expressions pass through this form).
    """

    scalar: Fraction = Fraction(1)
    q_power: int = 0
    factors: dict[int, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.scalar == 0:
            raise ValueError("factorization scalar must be nonzero")
        if any(e == 0 for e in self.factors.values()):
            raise ValueError("canonical form stores no zero exponents")

    def __mul__(self, other: "CycloFactorization") -> "CycloFactorization":
        merged = dict(self.factors)
        for m, e in other.factors.items():
            new = merged.get(m, 0) + e
            if new:
                merged[m] = new
            else:
                merged.pop(m, None)
        return CycloFactorization(
            scalar=self.scalar * other.scalar,
            q_power=self.q_power + other.q_power,
            factors=merged,
        )

    def inverse(self) -> "CycloFactorization":
        return CycloFactorization(
            scalar=Fraction(1) / self.scalar,
            q_power=-self.q_power,
            factors={m: -e for m, e in self.factors.items()},
        )

    def __truediv__(self, other: "CycloFactorization") -> "CycloFactorization":
        return self * other.inverse()

    def __pow__(self, k: int) -> "CycloFactorization":
        if k == 0:
            return CycloFactorization()
        base = self if k > 0 else self.inverse()
        out = base
        for _ in range(abs(k) - 1):
            out = out * base
        return out

    def evaluate(self, q0) -> Fraction:
        """Exact value at q = q0 (> 1 so every Phi_m(q0) is nonzero)."""
        value = Fraction(self.scalar) * Fraction(q0) ** self.q_power
        for m, e in sorted(self.factors.items()):
            value *= Fraction(phi_value(m, q0)) ** e
        return value

    def p_valuation_symbolic(self, ord_data: "OrderData") -> int:
        """v_p of the value at ord_data.q, from the factored form alone.

        Phi_m(q) carries p-valuation only for m = d * p^i (d = ord_p(q)):
        the full v_p(q^d - 1) at i = 0 and exactly 1 for i >= 1. The q-power
        contributes nothing (p does not divide q); the scalar contributes its
        own valuation.
        """
        p = ord_data.p
        total = int_p_valuation(self.scalar.numerator, p) - int_p_valuation(
            self.scalar.denominator, p
        )
        v_base = int_p_valuation(ord_data.q**ord_data.d - 1, p)
        for m, e in self.factors.items():
            if not p_divides_phi(m, ord_data):
                continue
            total += e * (v_base if m == ord_data.d else 1)
        return total


def factor_q_pochhammer(s: int, sign: int) -> CycloFactorization:
    """Factor q^s - 1 (sign=-1) or q^s + 1 (sign=+1) into cyclotomics.

    q^s - 1 = prod_{m | s} Phi_m; q^s + 1 = prod_{m | 2s, m not| s} Phi_m.
    """
    if s < 1:
        raise ValueError("exponent must be positive")
    if sign == -1:
        divisors = {m for m in range(1, s + 1) if s % m == 0}
    elif sign == 1:
        divisors = {
            m for m in range(1, 2 * s + 1) if (2 * s) % m == 0 and s % m != 0
        }
    else:
        raise ValueError("sign must be +1 or -1")
    return CycloFactorization(factors={m: 1 for m in sorted(divisors)})


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def is_prime_power(q: int) -> bool:
    """True iff q = r^k for a prime r and k >= 1 (trial factorization)."""
    if q < 2:
        return False
    for f in range(2, math.isqrt(q) + 1):
        if q % f == 0:
            while q % f == 0:
                q //= f
            return q == 1
    return True  # q itself is prime


def multiplicative_order(a: int, mod: int) -> int:
    """Smallest k >= 1 with a^k = 1 mod ``mod`` (requires gcd(a, mod) = 1)."""
    a %= mod
    if math.gcd(a, mod) != 1:
        raise ValueError(f"{a} is not invertible mod {mod}")
    k = 1
    acc = a
    while acc != 1:
        acc = acc * a % mod
        k += 1
    return k


@dataclass(frozen=True)
class OrderData:
    """Multiplicative-order data of q mod p.

    d = ord_p(q); e_bcd = ord_p(q^2) (the relevant e for types B/C/D/2D);
    side = +1 if p | q^e_bcd - 1, else -1 (exactly one holds for odd p).
    """

    q: int
    p: int
    d: int
    e_bcd: int
    side: int

    def e_a(self, eps: int) -> int:
        """ord_p(eps * q): the relevant e for type A (eps=+1) / 2A (eps=-1)."""
        if eps not in (1, -1):
            raise ValueError("eps must be +1 or -1")
        return multiplicative_order(eps * self.q, self.p)


def order_data(q: int, p: int) -> OrderData:
    """Validate (q, p) and compute the order data."""
    if not is_prime(p):
        raise ValueError(f"p={p} is not prime")
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    if q % p == 0:
        raise ValueError(f"p={p} divides q={q}")
    d = multiplicative_order(q, p)
    e_bcd = multiplicative_order(q * q % p, p)
    minus = pow(q, e_bcd, p) == p - 1
    plus = pow(q, e_bcd, p) == 1
    if p > 2 and plus == minus:
        raise InternalConsistencyError(
            f"q^e mod p is neither +1 nor -1 for q={q}, p={p}"
        )
    return OrderData(q=q, p=p, d=d, e_bcd=e_bcd, side=1 if plus else -1)


def p_divides_phi(m: int, ord_data: OrderData) -> bool:
    """True iff p | Phi_m(q), i.e. m = d * p^i for some i >= 0."""
    if m < 1:
        raise ValueError("m must be positive")
    if m % ord_data.d:
        return False
    t = m // ord_data.d
    while t % ord_data.p == 0:
        t //= ord_data.p
    return t == 1


def int_p_valuation(n: int, p: int) -> int:
    """v_p(n) for a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of zero is undefined")
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def p_valuation_of_value(v, p: int) -> int:
    """v_p of a nonzero int or Fraction."""
    frac = Fraction(v)
    if frac == 0:
        raise ValueError("valuation of zero is undefined")
    return int_p_valuation(frac.numerator, p) - int_p_valuation(frac.denominator, p)
