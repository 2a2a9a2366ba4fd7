"""p-blocks of the symmetric and alternating groups, and their p'-characters.

Two characters of S_n lie in the same p-block iff their labels have the same
p-core; the block label of A_n only remembers the core up to conjugation, so
the alternating label stores the lexicographic minimum of the core and its
conjugate. A character of S_n restricts irreducibly to A_n iff its label is
not self-conjugate; those restrictions are the "extendable" characters of A_n.

The star family H(n; gamma) consists of the p'-degree partitions of the form
``gamma * (a, n - m - a)`` (first part grown by ``a``, then a tail of ones)
whose p-core is exactly ``gamma``; Omega keeps the members whose first part
beats the first column. The lower bound for |Omega| comes from the base-p
digits a_k ... a_0 of n: floor((a_k+1)/2) * prod_{0<i<k} (a_i+1) for k >= 1,
and 0 for k = 0 (a single digit leaves no free hook choices).
"""

from __future__ import annotations

from dataclasses import dataclass

from .degrees import degree, is_p_prime_degree
from .partitions import (
    Partition,
    check_partition,
    conjugate,
    p_adic_digits,
    partitions_of,
    star,
    t_core,
)

__all__ = [
    "BlockLabel",
    "CensusRecord",
    "OmegaReport",
    "is_extendable",
    "block_of",
    "principal_core",
    "census",
    "omega_lower_bound",
    "omega_sets",
    "star_degree_increases",
    "omega_distinct_and_bounded",
    "principal_block_alt_check",
]


@dataclass(frozen=True)
class BlockLabel:
    """A p-block label: a p-core, tagged by the ambient group family."""

    p: int
    core: Partition
    group: str  # "Sym" or "Alt"

    def __post_init__(self) -> None:
        if self.group not in ("Sym", "Alt"):
            raise ValueError(f"group must be 'Sym' or 'Alt', got {self.group!r}")
        if t_core(self.core, self.p) != self.core:
            raise ValueError(f"{self.core} is not a {self.p}-core")
        if self.group == "Alt" and min(self.core, conjugate(self.core)) != self.core:
            raise ValueError(
                "Alt labels store the lexicographic minimum of the core and its conjugate"
            )


@dataclass(frozen=True)
class CensusRecord:
    """The p'-degree members of one block, with their degrees.

    ``pprime_partitions`` lists every partition of ``n`` in the block whose
    character degree is prime to ``p``; ``extendable_partitions`` is the
    non-self-conjugate sublist. ``degrees``/``ext_degrees`` are the sorted,
    deduplicated degree sets of the two lists.
    """

    n: int
    p: int
    label: BlockLabel
    pprime_partitions: tuple[Partition, ...]
    extendable_partitions: tuple[Partition, ...]
    degrees: tuple[int, ...]
    ext_degrees: tuple[int, ...]


@dataclass(frozen=True)
class OmegaReport:
    """The star families H(n; gamma) and Omega(n; gamma) with degree data."""

    n: int
    p: int
    gamma: Partition
    h_set: tuple[Partition, ...]
    omega_set: tuple[Partition, ...]
    omega_degrees: tuple[int, ...]
    bound: int


def is_extendable(lam: Partition) -> bool:
    """True iff the A_n-restriction of the character stays irreducible."""
    return lam != conjugate(lam)


def block_of(lam: Partition, p: int, group: str = "Sym") -> BlockLabel:
    """Block label of the character labelled by ``lam``.

    For ``group="Alt"`` the label is canonicalized up to conjugation; callers
    who need a single A_n-character must additionally require ``lam`` not
    self-conjugate.
    """
    core = t_core(lam, p)
    if group == "Alt":
        core = min(core, conjugate(core))
    return BlockLabel(p=p, core=core, group=group)


def principal_core(n: int, p: int) -> Partition:
    """p-core of the trivial-character label (n): the principal block's core."""
    return t_core((n,) if n else (), p)


def _validated_core(n: int, p: int, gamma: Partition) -> Partition:
    gamma = check_partition(gamma)
    if t_core(gamma, p) != gamma:
        raise ValueError(f"{gamma} is not a {p}-core")
    m = sum(gamma)
    if m > n:
        raise ValueError(f"core size {m} exceeds n={n}")
    if (n - m) % p:
        raise ValueError(f"|gamma|={m} is not congruent to n={n} mod p={p}")
    return gamma


def census(n: int, p: int, gamma: Partition, group: str = "Alt") -> CensusRecord:
    """Exhaustive p'-character census of the block labelled by ``gamma``.

    Scans every partition of ``n``; membership means the p-core equals
    ``gamma`` (group="Sym") or either of ``gamma``, ``conjugate(gamma)``
    (group="Alt", where the two cores label the same block).
    """
    gamma = _validated_core(n, p, gamma)
    if group not in ("Sym", "Alt"):
        raise ValueError(f"group must be 'Sym' or 'Alt', got {group!r}")
    cores = {gamma}
    label_core = gamma
    if group == "Alt":
        label_core = min(gamma, conjugate(gamma))
        cores = {gamma, conjugate(gamma)}
    members = []
    for lam in partitions_of(n):
        if t_core(lam, p) not in cores:
            continue
        if is_p_prime_degree(lam, p):
            members.append(lam)
    extendable = tuple(lam for lam in members if is_extendable(lam))
    degrees = tuple(sorted({degree(lam) for lam in members}))
    ext_degrees = tuple(sorted({degree(lam) for lam in extendable}))
    return CensusRecord(
        n=n,
        p=p,
        label=BlockLabel(p=p, core=label_core, group=group),
        pprime_partitions=tuple(members),
        extendable_partitions=extendable,
        degrees=degrees,
        ext_degrees=ext_degrees,
    )


def omega_lower_bound(n: int, p: int) -> int:
    """Digit lower bound for |Omega(n; gamma)|, gamma a core of the last digit.

    With base-p digits a_k .. a_0 of n (a_k leading): 0 when k = 0, else
    floor((a_k + 1) / 2) * prod_{i=1}^{k-1} (a_i + 1).
    """
    digits = p_adic_digits(n, p)
    k = len(digits) - 1
    if k <= 0:
        return 0
    bound = (digits[k] + 1) // 2
    for i in range(1, k):
        bound *= digits[i] + 1
    return bound


def omega_sets(n: int, p: int, gamma: Partition) -> OmegaReport:
    """Compute H(n; gamma), Omega(n; gamma), Omega's degrees, and the bound.

    H is found by honest scan: for each a in 0..n-m the star shape
    ``gamma * (a, n - m - a)`` is kept iff its p-core is exactly ``gamma`` and
    its degree is prime to p. (The star map is not injective and a star shape
    can have core gamma without a being a multiple of p; scanning avoids any
    parametrization assumptions.) Omega keeps shapes with first part longer
    than the first column; its members are listed in decreasing
    lexicographic order and ``omega_degrees`` is aligned with that order.
    """
    gamma = _validated_core(n, p, gamma)
    m = sum(gamma)
    h_set = set()
    for a in range(n - m + 1):
        lam = star(gamma, a, n - m - a)
        if t_core(lam, p) != gamma:
            continue
        if is_p_prime_degree(lam, p):
            h_set.add(lam)
    h_sorted = tuple(sorted(h_set, reverse=True))
    omega = tuple(lam for lam in h_sorted if (lam[0] if lam else 0) > len(lam))
    return OmegaReport(
        n=n,
        p=p,
        gamma=gamma,
        h_set=h_sorted,
        omega_set=omega,
        omega_degrees=tuple(degree(lam) for lam in omega),
        bound=omega_lower_bound(n, p),
    )


def star_degree_increases(p: int, gamma: Partition, w: int, a: int) -> tuple[bool, int, int]:
    """Compare degrees of two adjacent star shapes of size |gamma| + w*p.

    For ``floor((w+1)/2) + 1 <= a <= w`` the shape with the longer arm,
    ``gamma * (a*p, (w-a)*p)``, has strictly smaller degree than
    ``gamma * ((a-1)*p, (w-a+1)*p)``. Returns (comparison holds, degree of
    the first, degree of the second).
    """
    gamma = check_partition(gamma)
    if sum(gamma) >= p:
        raise ValueError(f"|gamma|={sum(gamma)} must be smaller than p={p}")
    if not (w + 1) // 2 + 1 <= a <= w:
        raise ValueError(f"need floor((w+1)/2)+1 <= a <= w, got a={a}, w={w}")
    lam = star(gamma, a * p, (w - a) * p)
    mu = star(gamma, (a - 1) * p, (w - a + 1) * p)
    deg_lam = degree(lam)
    deg_mu = degree(mu)
    return deg_lam < deg_mu, deg_lam, deg_mu


def omega_distinct_and_bounded(n: int, p: int, gamma: Partition) -> bool:
    """True iff Omega(n; gamma) has pairwise distinct degrees and meets the bound."""
    report = omega_sets(n, p, gamma)
    distinct = len(set(report.omega_degrees)) == len(report.omega_set)
    return distinct and len(report.omega_set) >= report.bound


def principal_block_alt_check(n: int, p: int) -> tuple[bool, CensusRecord, tuple[int, ...]]:
    """Check the principal A_n block has >= 3 extendable p'-degrees (n >= 7).

    Also confirms, when the last base-p digit a_0 of n is at least 2, the two
    explicit small witnesses (a_0, 1^(n-a_0)) and (a_0, 2, 1^(n-a_0-2)): both
    p'-degree members of the principal block with 1 < first < second.
    Returns (everything holds, the census, the witness degrees).
    """
    if n < 7:
        raise ValueError("the >= 3 guarantee is only claimed for n >= 7")
    if p < 5:
        raise ValueError("p must be at least 5")
    gamma = principal_core(n, p)
    record = census(n, p, gamma, group="Alt")
    ok = len(record.ext_degrees) >= 3
    witness_degrees: tuple[int, ...] = ()
    a0 = n % p
    if a0 >= 2 and n - a0 - 2 >= 0:
        lam = (a0, *(1,) * (n - a0))
        mu = (a0, 2, *(1,) * (n - a0 - 2))
        deg_lam = degree(lam)
        deg_mu = degree(mu)
        witness_degrees = (deg_lam, deg_mu)
        ok = (
            ok
            and is_p_prime_degree(lam, p)
            and is_p_prime_degree(mu, p)
            and t_core(lam, p) in (gamma, conjugate(gamma))
            and t_core(mu, p) in (gamma, conjugate(gamma))
            and 1 < deg_lam < deg_mu
        )
    return ok, record, witness_degrees
