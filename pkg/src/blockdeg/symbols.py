"""Symbols: the bipartition-like labels of unipotent characters of types B/C/D/2D.

A symbol is an unordered pair of finite sets of non-negative integers,
written as two strictly increasing rows. Normalization (i) shifts the symbol
while both rows contain 0 — drop one 0 from each row and decrement the rest —
and (ii) orders the pair canonically: longer row first, ties broken by
lexicographic order. Rank and defect are

    rank   = sum(all entries) - floor((a + b - 1)^2 / 4)
    defect = |a - b|

with a, b the row lengths. An e-hook removal replaces y by y - e inside one
row (y - e >= 0, not already there); an e-cohook removal moves y from one row
to y - e in the other. Hooks preserve the defect and drop the rank by e;
cohooks drop the rank by e and change the signed row-length difference by
exactly 2. Cores (hook fixpoints) and cocores (cohook fixpoints) are
removal-order independent; the deterministic strategy used here removes the
smallest eligible y, preferring the first row.

Text format: rows of comma-separated integers joined by "|", e.g. "0,1,3|2";
an empty row is written "∅" (accepted on input: "∅", "-", or nothing).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .errors import InternalConsistencyError

__all__ = [
    "Symbol",
    "make_symbol",
    "normalize",
    "parse_symbol",
    "format_symbol",
    "rank_defect",
    "hook_removals",
    "cohook_removals",
    "e_core",
    "e_cocore",
    "same_block",
]


@dataclass(frozen=True)
class Symbol:
    """Two strictly increasing rows; construct via make_symbol for validation."""

    top: tuple[int, ...]
    bottom: tuple[int, ...]


def _validated_row(row: Iterable[int]) -> tuple[int, ...]:
    entries = tuple(row)
    for x in entries:
        if not isinstance(x, int) or isinstance(x, bool) or x < 0:
            raise ValueError(f"symbol entries must be non-negative ints, got {x!r}")
    if len(set(entries)) != len(entries):
        raise ValueError(f"symbol row has repeated entries: {entries}")
    return tuple(sorted(entries))


def make_symbol(top: Iterable[int], bottom: Iterable[int]) -> Symbol:
    """Validate, reduce, and canonically order a symbol."""
    return normalize(Symbol(_validated_row(top), _validated_row(bottom)))


def normalize(s: Symbol) -> Symbol:
    """Reduced form (no common leading 0) in canonical row order."""
    top, bottom = s.top, s.bottom
    while top and bottom and top[0] == 0 and bottom[0] == 0:
        top = tuple(x - 1 for x in top[1:])
        bottom = tuple(x - 1 for x in bottom[1:])
    # longer row first; for equal lengths the lexicographically smaller row
    # goes on top (the pair is unordered, this fixes a representative)
    if len(bottom) > len(top) or (len(bottom) == len(top) and bottom < top):
        top, bottom = bottom, top
    return Symbol(top, bottom)


def parse_symbol(text: str) -> Symbol:
    """Parse "0,1,3|2" (empty rows: "∅", "-", or empty) into a normalized Symbol."""
    if "|" not in text:
        raise ValueError(f"symbol text needs a '|' row separator: {text!r}")
    left, _, right = text.partition("|")

    def row(part: str) -> tuple[int, ...]:
        part = part.strip()
        if part in ("", "-", "∅", "emptyset"):
            return ()
        try:
            return tuple(int(tok.strip()) for tok in part.split(","))
        except ValueError as exc:
            raise ValueError(f"cannot parse symbol row {part!r}") from exc

    return make_symbol(row(left), row(right))


def format_symbol(s: Symbol) -> str:
    """Inverse of parse_symbol: "0,1,3|2" with "∅" for an empty row."""

    def row(entries: tuple[int, ...]) -> str:
        return ",".join(str(x) for x in entries) if entries else "∅"

    return f"{row(s.top)}|{row(s.bottom)}"


def rank_defect(s: Symbol) -> tuple[int, int]:
    """(rank, defect) of the symbol."""
    a, b = len(s.top), len(s.bottom)
    rank = sum(s.top) + sum(s.bottom) - (a + b - 1) ** 2 // 4
    return rank, abs(a - b)


def _remove_within(row: tuple[int, ...], y: int, e: int) -> tuple[int, ...]:
    return tuple(sorted([x for x in row if x != y] + [y - e]))


def hook_removals(s: Symbol, e: int) -> list[Symbol]:
    """All results of removing one e-hook, deterministically ordered.

    Order: smallest removable y first, first row before second. Results are
    normalized; the list may contain equal symbols reached by distinct moves.
    """
    if e < 1:
        raise ValueError("e must be at least 1")
    out: list[tuple[int, int, Symbol]] = []
    rows = (s.top, s.bottom)
    for row_index, row in enumerate(rows):
        for y in row:
            if y - e >= 0 and y - e not in row:
                new_rows = list(rows)
                new_rows[row_index] = _remove_within(row, y, e)
                out.append((y, row_index, normalize(Symbol(*new_rows))))
    out.sort(key=lambda item: (item[0], item[1]))
    return [item[2] for item in out]


def cohook_removals(s: Symbol, e: int) -> list[Symbol]:
    """All results of removing one e-cohook (move y to y-e in the other row)."""
    if e < 1:
        raise ValueError("e must be at least 1")
    out: list[tuple[int, int, Symbol]] = []
    rows = (s.top, s.bottom)
    for row_index, row in enumerate(rows):
        other = rows[1 - row_index]
        for y in row:
            if y - e >= 0 and y - e not in other:
                new_rows: list[tuple[int, ...]] = [(), ()]
                new_rows[row_index] = tuple(x for x in row if x != y)
                new_rows[1 - row_index] = tuple(sorted(other + (y - e,)))
                out.append((y, row_index, normalize(Symbol(*new_rows))))
    out.sort(key=lambda item: (item[0], item[1]))
    return [item[2] for item in out]


def _fixpoint(s: Symbol, e: int, removals, rng: random.Random | None) -> Symbol:
    current = normalize(s)
    while True:
        options = removals(current, e)
        if not options:
            return current
        chosen = options[0] if rng is None else rng.choice(options)
        if rank_defect(chosen)[0] != rank_defect(current)[0] - e:
            raise InternalConsistencyError(
                f"removal from {format_symbol(current)} did not drop the rank by {e}"
            )
        current = chosen


def e_core(s: Symbol, e: int, rng: random.Random | None = None) -> Symbol:
    """Fixpoint of e-hook removal (order-independent; rng picks the path)."""
    return _fixpoint(s, e, hook_removals, rng)


def e_cocore(s: Symbol, e: int, rng: random.Random | None = None) -> Symbol:
    """Fixpoint of e-cohook removal (order-independent; rng picks the path)."""
    return _fixpoint(s, e, cohook_removals, rng)


def same_block(s1: Symbol, s2: Symbol, e: int, side: int) -> bool:
    """Same principal-series block: equal e-cores (side=+1) or e-cocores (side=-1)."""
    if side == 1:
        return e_core(s1, e) == e_core(s2, e)
    if side == -1:
        return e_cocore(s1, e) == e_cocore(s2, e)
    raise ValueError("side must be +1 or -1")
