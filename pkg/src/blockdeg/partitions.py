"""Partition combinatorics: hooks, beta-sets, t-cores, and star compositions.

Partitions are plain tuples of weakly decreasing positive ints; ``()`` is the
empty partition. All functions are pure and exact (Python big ints).

The central representation for hook/core computations is the *beta-set*
``beta(lam, ell) = (lam_i + ell - 1 - i)`` for ``i = 0..ell-1`` (first-column
hook lengths when ``ell == len(lam)``, padded with low entries otherwise): a
strictly decreasing tuple of distinct non-negative ints. Removing a t-hook
from the partition is the same as replacing some beta-entry ``b`` by ``b - t``
(when ``b - t`` is free), which makes t-core extraction a bucket sort of the
beta-set by residue mod t (the abacus picture).
"""

from __future__ import annotations

from typing import Iterable, Iterator

from .errors import InternalConsistencyError

Partition = tuple[int, ...]

__all__ = [
    "Partition",
    "check_partition",
    "parse_partition",
    "format_partition",
    "partitions_of",
    "conjugate",
    "hook_lengths",
    "hook_multiset",
    "beta_set",
    "partition_from_beta",
    "count_hooks_divisible",
    "t_core",
    "remove_rim_hook",
    "t_core_by_rim_removal",
    "star",
    "p_adic_digits",
]


def check_partition(lam: Iterable[int]) -> Partition:
    """Return ``lam`` as a validated partition tuple.

    Raises ValueError unless entries are positive ints in weakly decreasing
    order.
    """
    parts = tuple(lam)
    for i, part in enumerate(parts):
        if not isinstance(part, int) or isinstance(part, bool):
            raise ValueError(f"partition entries must be ints, got {part!r}")
        if part <= 0:
            raise ValueError(f"partition entries must be positive, got {part}")
        if i > 0 and parts[i - 1] < part:
            raise ValueError(f"partition entries must be weakly decreasing, got {parts}")
    return parts


def parse_partition(text: str) -> Partition:
    """Parse a comma-separated partition like ``"6,3,1"``.

    Whitespace around entries is ignored. ``""``, ``"-"`` and ``"emptyset"``
    denote the empty partition.
    """
    stripped = text.strip()
    if stripped in ("", "-", "emptyset", "∅"):
        return ()
    try:
        parts = tuple(int(tok.strip()) for tok in stripped.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse partition from {text!r}") from exc
    return check_partition(parts)


def format_partition(lam: Partition) -> str:
    """Inverse of :func:`parse_partition`; the empty partition prints as ``-``."""
    if not lam:
        return "-"
    return ",".join(str(part) for part in lam)


def partitions_of(n: int, max_part: int | None = None) -> Iterator[Partition]:
    """Yield all partitions of ``n`` in lexicographically decreasing order.

    ``max_part`` caps the largest part (used by the recursion; callers may use
    it to enumerate partitions inside a box).
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            yield (first, *rest)


def conjugate(lam: Partition) -> Partition:
    """Transpose the Young diagram."""
    if not lam:
        return ()
    cols = []
    for j in range(lam[0]):
        cols.append(sum(1 for part in lam if part > j))
    return tuple(cols)


def hook_lengths(lam: Partition) -> tuple[tuple[int, ...], ...]:
    """Hook lengths of every cell, as rows matching the diagram of ``lam``."""
    conj = conjugate(lam)
    return tuple(
        tuple(lam[i] - j + conj[j] - i - 1 for j in range(lam[i]))
        for i in range(len(lam))
    )


def hook_multiset(lam: Partition) -> tuple[int, ...]:
    """All hook lengths of ``lam``, sorted (a conjugation-invariant multiset)."""
    return tuple(sorted(h for row in hook_lengths(lam) for h in row))


def beta_set(lam: Partition, length: int | None = None) -> tuple[int, ...]:
    """Strictly decreasing beta-set of ``lam`` with ``length`` entries.

    Defaults to ``len(lam)`` entries (the first-column hook lengths).
    """
    ell = len(lam) if length is None else length
    if ell < len(lam):
        raise ValueError("beta-set length must be at least len(lam)")
    padded = lam + (0,) * (ell - len(lam))
    return tuple(padded[i] + ell - 1 - i for i in range(ell))


def partition_from_beta(betas: Iterable[int]) -> Partition:
    """Recover the partition from any beta-set (entries distinct, >= 0)."""
    ordered = tuple(sorted(betas, reverse=True))
    ell = len(ordered)
    if len(set(ordered)) != ell:
        raise ValueError(f"beta-set entries must be distinct, got {ordered}")
    if ordered and ordered[-1] < 0:
        raise ValueError("beta-set entries must be non-negative")
    parts = tuple(b - (ell - 1 - i) for i, b in enumerate(ordered))
    return tuple(part for part in parts if part > 0)


def count_hooks_divisible(lam: Partition, t: int) -> int:
    """Number of cells of ``lam`` whose hook length is divisible by ``t``.

    Computed from the beta-set: each beta-entry ``b`` contributes
    ``floor(b / t)`` candidate t-multiples, minus one for every pair of
    beta-entries congruent mod t (those differences are not hooks).
    """
    if t <= 0:
        raise ValueError("t must be positive")
    betas = beta_set(lam)
    total = sum(b // t for b in betas)
    residue_counts: dict[int, int] = {}
    for b in betas:
        residue_counts[b % t] = residue_counts.get(b % t, 0) + 1
    collisions = sum(c * (c - 1) // 2 for c in residue_counts.values())
    return total - collisions


def t_core(lam: Partition, t: int) -> Partition:
    """The t-core of ``lam`` (remove t-hooks until none remain), via the abacus.

    Sliding all beads down on each runner of the t-abacus removes all t-hooks
    at once: only the residue counts of the beta-set matter.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    ell = len(lam)
    betas = beta_set(lam, ell)
    counts = [0] * t
    for b in betas:
        counts[b % t] += 1
    core_betas = [r + t * j for r in range(t) for j in range(counts[r])]
    return partition_from_beta(core_betas)


def remove_rim_hook(lam: Partition, hook_len: int, start_row: int) -> Partition | None:
    """Remove the rim hook of length ``hook_len`` whose arm starts in ``start_row``.

    In beta-set terms: replace ``beta[start_row]`` by ``beta[start_row] -
    hook_len`` if that value is not already present. Returns the smaller
    partition, or None when no such rim hook exists. This is the slow,
    cell-by-cell-faithful operation used as an independent oracle for
    :func:`t_core`.
    """
    if hook_len <= 0:
        raise ValueError("hook length must be positive")
    betas = list(beta_set(lam))
    if not 0 <= start_row < len(betas):
        return None
    lowered = betas[start_row] - hook_len
    if lowered < 0 or lowered in betas:
        return None
    betas[start_row] = lowered
    return partition_from_beta(betas)


def t_core_by_rim_removal(lam: Partition, t: int, pick=None) -> Partition:
    """t-core by repeated single rim-hook removal (test oracle).

    ``pick(options)`` chooses among the available removal results at each step
    (default: first in sorted order). Any choice sequence must reach the same
    core; tests exercise random pick functions.
    """
    if t <= 0:
        raise ValueError("t must be positive")
    current = lam
    while True:
        options = []
        for row in range(len(current)):
            smaller = remove_rim_hook(current, t, row)
            if smaller is not None:
                options.append(smaller)
        if not options:
            return current
        options.sort()
        current = options[0] if pick is None else pick(options)


def star(gamma: Partition, x: int, y: int) -> Partition:
    """The star composition: add ``x`` to the first part, then append ``y`` ones.

    ``gamma * (x, y) = (gamma_1 + x, gamma_2, ..., gamma_ell, 1, ..., 1)``.
    Defined for all x, y >= 0 and every partition gamma (for empty gamma the
    first part is ``x`` itself, dropped when x == 0).
    """
    if x < 0 or y < 0:
        raise ValueError("star offsets must be non-negative")
    if gamma:
        head = (gamma[0] + x, *gamma[1:])
    elif x > 0:
        head = (x,)
    else:
        head = ()
    result = head + (1,) * y
    return check_partition(result)


def p_adic_digits(n: int, p: int) -> tuple[int, ...]:
    """Base-p digits of ``n``, little-endian; ``0`` has no digits."""
    if p < 2:
        raise ValueError("base must be at least 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    digits = []
    while n:
        n, digit = divmod(n, p)
        digits.append(digit)
    return tuple(digits)


def _assert_exact_division(numerator: int, denominator: int) -> int:
    """Integer division that raises InternalConsistencyError on a remainder."""
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InternalConsistencyError(
            f"expected {numerator} to be divisible by {denominator}"
        )
    return quotient
