"""Principal-block character data for the classical groups of Lie type.

The heart of this module is a declarative data file, ``tables_data.json``,
whose rows describe pairs of non-trivial principal-block characters chi1/chi2
for the classical types A, 2A, B, C, D, 2D.  Each row carries applicability
conditions over the derived parameters (e, r, m, side), a parameterized label
(a partition for type A/2A, a symbol otherwise), and a degree expression in
the small cyclotomic DSL of :mod:`blockdeg.expr`.

This module binds those rows at a concrete ``GroupContext`` (type, rank n,
prime power q, prime p >= 5 with p not dividing q) and checks everything the
rows claim:

* the bound label is a valid partition of n, or a symbol of rank n in the
  defect class of its type (odd for B/C, 0 mod 4 for D, 2 mod 4 for 2D);
* the label is not the trivial one and lies in the principal block (same
  e-core as the trivial label, or same e-cocore on the minus side);
* the degree value is positive and coprime to p, with the direct evaluation
  cross-checked against an independent cyclotomic factorization.

Alternate row sets handle the two documented special cells (type B/C at
n = 2 with q an odd power of 2, and type D at n = 4), and small exceptional
families (rank-1 and rank-2 linear/unitary groups) are checked from the same
data file.  The q-analog hook formula for type A/2A unipotent degrees is
implemented independently as a cross-check of the type A rows.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources

from .cyclo import (
    OrderData,
    is_prime_power,
    order_data,
    p_valuation_of_value,
)
from .errors import (
    InapplicableBindingError,
    InternalConsistencyError,
    UnsupportedTypeError,
)
from .expr import (
    DegreeExpr,
    IntExpr,
    evaluate,
    int_eval,
    parse_degree_expr,
    parse_int_expr,
    to_factorization,
)
from .partitions import (
    Partition,
    check_partition,
    format_partition,
    hook_multiset,
    t_core,
)
from .symbols import (
    Symbol,
    e_cocore,
    e_core,
    format_symbol,
    make_symbol,
    rank_defect,
    same_block,
)

__all__ = [
    "LIE_TYPES",
    "GroupContext",
    "group_context",
    "p_divides_group_order",
    "cell_in_scope",
    "TableRow",
    "rows_for_cell",
    "row_applicable",
    "bind_label",
    "trivial_label",
    "verify_trivial_forms",
    "RowCheck",
    "verify_row",
    "CellCheck",
    "check_cell",
    "unipotent_degree_typeA",
    "characteristic_of",
    "q_prime_part",
    "typea_cross_check_cell",
    "verify_d4",
    "EXCEPTION_FAMILIES",
    "check_exception_family",
]

LIE_TYPES = ("A", "2A", "B", "C", "D", "2D")

_MIN_N = {"A": 3, "2A": 3, "B": 2, "C": 2, "D": 4, "2D": 4}

# Smallest-rank cells where the finite group is not simple and the tables do
# not apply (the rank-2 symplectic group over F_2).
_NON_SIMPLE = frozenset({("B", 2, 2), ("C", 2, 2)})


@dataclass(frozen=True)
class GroupContext:
    """A classical group plus the derived order parameters of (q, p).

    ``eps`` is +1 for type A, -1 for 2A, 0 otherwise.  ``e`` is the order of
    eps*q (types A/2A) or of q^2 (types B/C/D/2D) modulo p; n = m*e + r with
    0 <= r < e.  ``side`` is +1 when p | q^e - 1 and -1 when p | q^e + 1
    (types B/C/D/2D only; 0 for A/2A).
    """

    lie_type: str
    n: int
    q: int
    p: int
    eps: int
    e: int
    r: int
    m: int
    side: int
    orders: OrderData


def group_context(lie_type: str, n: int, q: int, p: int) -> GroupContext:
    """Validate (type, n, q, p) and derive the order parameters."""
    if lie_type not in LIE_TYPES:
        raise UnsupportedTypeError(
            f"unsupported Lie type {lie_type!r}; supported: {', '.join(LIE_TYPES)}"
        )
    od = order_data(q, p)
    if p < 5:
        raise ValueError(f"p must be at least 5, got {p}")
    if n < _MIN_N[lie_type]:
        raise ValueError(f"type {lie_type} needs n >= {_MIN_N[lie_type]}, got {n}")
    if lie_type in ("A", "2A"):
        eps = 1 if lie_type == "A" else -1
        e = od.e_a(eps)
        side = 0
    else:
        eps = 0
        e = od.e_bcd
        side = od.side
    return GroupContext(
        lie_type=lie_type,
        n=n,
        q=q,
        p=p,
        eps=eps,
        e=e,
        r=n % e,
        m=n // e,
        side=side,
        orders=od,
    )


def p_divides_group_order(ctx: GroupContext) -> bool:
    """Whether p divides the group order at (type, n, q).

    Only the factors coprime to q matter, since p never divides q here.
    """
    q, n, eps = ctx.q, ctx.n, ctx.eps
    if ctx.lie_type in ("A", "2A"):
        prod = 1
        for i in range(2, n + 1):
            prod *= q**i - eps**i
    elif ctx.lie_type in ("B", "C"):
        prod = 1
        for i in range(1, n + 1):
            prod *= q ** (2 * i) - 1
    else:
        prod = q**n - 1 if ctx.lie_type == "D" else q**n + 1
        for i in range(1, n):
            prod *= q ** (2 * i) - 1
    return prod % ctx.p == 0


def cell_in_scope(ctx: GroupContext) -> bool:
    """Whether the table verification applies to this cell.

    Out of scope: cells where p does not divide the group order (there is
    nothing to check), the non-simple rank-2 symplectic group over F_2, and
    rank-3 linear/unitary groups with p | (q + eps), which are covered by the
    dedicated exceptional family instead of the generic rows.
    """
    if (ctx.lie_type, ctx.n, ctx.q) in _NON_SIMPLE:
        return False
    if (
        ctx.lie_type in ("A", "2A")
        and ctx.n == 3
        and (ctx.q + ctx.eps) % ctx.p == 0
    ):
        return False
    return p_divides_group_order(ctx)


# --------------------------------------------------------------------------
# Row data


@dataclass(frozen=True)
class TableRow:
    """One declarative character row: conditions, label template, degree."""

    row_id: str
    table: str
    slot: str
    conditions: tuple[tuple[str, ...], ...]
    label_template: dict
    degree_dsl: str

    @property
    def degree_expr(self) -> DegreeExpr:
        return _parsed_degree(self.degree_dsl)


@lru_cache(maxsize=1)
def _load_data() -> dict:
    text = (
        resources.files(__package__).joinpath("tables_data.json").read_text("utf-8")
    )
    return json.loads(text)


@lru_cache(maxsize=None)
def _parsed_degree(text: str) -> DegreeExpr:
    return parse_degree_expr(text)


@lru_cache(maxsize=None)
def _parsed_int(text: str) -> IntExpr:
    return parse_int_expr(text)


@lru_cache(maxsize=None)
def _table_rows(section: str, key: str, slot: str) -> tuple[TableRow, ...]:
    raw_rows = _load_data()[section][key][slot]
    rows = []
    for raw in raw_rows:
        row = TableRow(
            row_id=raw["id"],
            table=raw["type"],
            slot=raw["slot"],
            conditions=tuple(tuple(clause) for clause in raw["conditions"]),
            label_template=raw["label_template"],
            degree_dsl=raw["degree_dsl"],
        )
        if row.slot != slot:
            raise InternalConsistencyError(
                f"row {row.row_id} is filed under slot {slot} but claims {row.slot}"
            )
        rows.append(row)
    return tuple(rows)


def _table_key(lie_type: str) -> str:
    return {"A": "A", "2A": "A", "B": "BC", "C": "BC", "D": "D", "2D": "2D"}[
        lie_type
    ]


def _is_odd_power_of_two(q: int) -> bool:
    return q & (q - 1) == 0 and q.bit_length() % 2 == 0


def rows_for_cell(ctx: GroupContext) -> dict[str, tuple[TableRow, ...]]:
    """The chi1/chi2 row sets for this cell, honoring the alternate families."""
    key = _table_key(ctx.lie_type)
    if ctx.lie_type in ("B", "C") and ctx.n == 2 and _is_odd_power_of_two(ctx.q):
        chi1 = _table_rows("alternates", "Sp4evenQ", "chi1")
        chi2 = _table_rows("tables", "BC", "chi2")
    elif ctx.lie_type == "D" and ctx.n == 4:
        chi1 = _table_rows("alternates", "D4special", "chi1")
        chi2 = _table_rows("alternates", "D4special", "chi2")
    else:
        chi1 = _table_rows("tables", key, "chi1")
        chi2 = _table_rows("tables", key, "chi2")
    for row in chi1 + chi2:
        if row.table != key:
            raise InternalConsistencyError(
                f"row {row.row_id} has type {row.table}, expected {key}"
            )
    return {"chi1": chi1, "chi2": chi2}


# --------------------------------------------------------------------------
# Condition atoms and label binding

_ATOM_TESTS = {
    "e=1": lambda c: c.e == 1,
    "e!=1": lambda c: c.e != 1,
    "e=r+1": lambda c: c.e == c.r + 1,
    "e!=r+1": lambda c: c.e != c.r + 1,
    "e=r+2": lambda c: c.e == c.r + 2,
    "e!=r+2": lambda c: c.e != c.r + 2,
    "r<2": lambda c: c.r < 2,
    "r>=2": lambda c: c.r >= 2,
    "m=1": lambda c: c.m == 1,
    "m>=2": lambda c: c.m >= 2,
    "m=2": lambda c: c.m == 2,
    "m!=2": lambda c: c.m != 2,
    "m_even": lambda c: c.m % 2 == 0,
    "m_odd": lambda c: c.m % 2 == 1,
    "e|n": lambda c: c.n % c.e == 0,
    "e!|n": lambda c: c.n % c.e != 0,
    "e|n-1": lambda c: (c.n - 1) % c.e == 0,
    "p|m-1": lambda c: (c.m - 1) % c.p == 0,
    "p!|m-1": lambda c: (c.m - 1) % c.p != 0,
    "p|m-2": lambda c: (c.m - 2) % c.p == 0,
    "p!|m-2": lambda c: (c.m - 2) % c.p != 0,
    "p|n-1": lambda c: (c.n - 1) % c.p == 0,
    "p!|n-1": lambda c: (c.n - 1) % c.p != 0,
    "side=+1": lambda c: c.side == 1,
    "side=-1": lambda c: c.side == -1,
}


def _atom_holds(atom: str, ctx: GroupContext) -> bool:
    try:
        test = _ATOM_TESTS[atom]
    except KeyError:
        raise InternalConsistencyError(f"unknown condition atom {atom!r}") from None
    return test(ctx)


def row_applicable(row: TableRow, ctx: GroupContext) -> bool:
    """Disjunctive normal form: any clause whose atoms all hold."""
    return any(
        all(_atom_holds(atom, ctx) for atom in clause) for clause in row.conditions
    )


def _int_bindings(ctx: GroupContext) -> dict:
    bindings = {"n": ctx.n, "m": ctx.m, "e": ctx.e, "r": ctx.r}
    if ctx.eps:
        bindings["eps"] = ctx.eps
    return bindings


def bind_label(row: TableRow, ctx: GroupContext):
    """Instantiate the row's label template: a Partition or a Symbol."""
    bindings = _int_bindings(ctx)
    template = row.label_template
    kind = template["kind"]
    if kind == "partition":
        parts: list[int] = []
        for entry in template["parts"]:
            if isinstance(entry, str):
                parts.append(int_eval(_parsed_int(entry), bindings))
            else:
                part_text, count_text = entry
                part = int_eval(_parsed_int(part_text), bindings)
                count = int_eval(_parsed_int(count_text), bindings)
                if count < 0:
                    raise ValueError(
                        f"negative repeat count {count} in row {row.row_id}"
                    )
                parts.extend([part] * count)
        parts.sort(reverse=True)
        return check_partition(tuple(parts))
    if kind == "symbol":

        def entries(side: str) -> list[int]:
            out: list[int] = []
            for entry in template.get(side, ()):
                if isinstance(entry, str):
                    out.append(int_eval(_parsed_int(entry), bindings))
                else:
                    tag, lo_text, hi_text = entry
                    if tag != "range":
                        raise InternalConsistencyError(
                            f"unknown symbol entry tag {tag!r} in row {row.row_id}"
                        )
                    lo = int_eval(_parsed_int(lo_text), bindings)
                    hi = int_eval(_parsed_int(hi_text), bindings)
                    out.extend(range(lo, hi + 1))
            return out

        return make_symbol(entries("top"), entries("bottom"))
    raise InternalConsistencyError(f"unknown label kind {kind!r} in row {row.row_id}")


# --------------------------------------------------------------------------
# Trivial-character labels and their closed-form cores/cocores


def trivial_label(ctx: GroupContext):
    """(label, e-core, e-cocore) of the trivial character; A/2A have no cocore.

    The core and cocore are the closed forms per type; verify_trivial_forms
    recomputes both by actual hook/cohook removal and compares.
    """
    n, e, r, m = ctx.n, ctx.e, ctx.r, ctx.m
    if ctx.lie_type in ("A", "2A"):
        label: Partition = (n,)
        core = (r,) if r else ()
        return label, core, None
    if ctx.lie_type in ("B", "C"):
        symbol = make_symbol((n,), ())
        reduced = make_symbol((r,), ())
        return symbol, reduced, reduced
    if ctx.lie_type == "D":
        symbol = make_symbol((n,), (0,))
        core = make_symbol((), ()) if n % e == 0 else make_symbol((r,), (0,))
        if n % e:
            cocore = (
                make_symbol((r,), (0,))
                if m % 2 == 0
                else make_symbol((0, r), ())
            )
        else:
            cocore = (
                make_symbol((), ()) if m % 2 == 0 else make_symbol((e,), (0,))
            )
        return symbol, core, cocore
    if ctx.lie_type == "2D":
        symbol = make_symbol((0, n), ())
        core = make_symbol((0, r), ()) if n % e else make_symbol((0, e), ())
        if n % e:
            cocore = (
                make_symbol((0, r), ())
                if m % 2 == 0
                else make_symbol((r,), (0,))
            )
        else:
            cocore = (
                make_symbol((e,), (0,)) if m % 2 == 0 else make_symbol((), ())
            )
        return symbol, core, cocore
    raise UnsupportedTypeError(f"unsupported Lie type {ctx.lie_type!r}")


def verify_trivial_forms(ctx: GroupContext) -> list[str]:
    """Check removal-computed core/cocore of the trivial label vs closed forms."""
    problems: list[str] = []
    label, expected_core, expected_cocore = trivial_label(ctx)
    if ctx.lie_type in ("A", "2A"):
        computed = t_core(label, ctx.e)
        if computed != expected_core:
            problems.append(
                f"trivial partition {ctx.e}-core {computed} != closed form"
                f" {expected_core}"
            )
        return problems
    computed_core = e_core(label, ctx.e)
    if computed_core != expected_core:
        problems.append(
            f"trivial symbol e-core {format_symbol(computed_core)} != closed form"
            f" {format_symbol(expected_core)}"
        )
    computed_cocore = e_cocore(label, ctx.e)
    if computed_cocore != expected_cocore:
        problems.append(
            f"trivial symbol e-cocore {format_symbol(computed_cocore)} != closed"
            f" form {format_symbol(expected_cocore)}"
        )
    return problems


# --------------------------------------------------------------------------
# Row verification


def _defect_class_ok(lie_type: str, defect: int) -> bool:
    if lie_type in ("B", "C"):
        return defect % 2 == 1
    if lie_type == "D":
        return defect % 4 == 0
    return defect % 4 == 2


@dataclass(frozen=True)
class RowCheck:
    """Outcome of verifying one applicable row at one cell."""

    row_id: str
    label_text: str | None
    degree_value: Fraction | None
    problems: tuple[str, ...]


def verify_row(row: TableRow, ctx: GroupContext) -> RowCheck:
    """Bind the row at ctx and check label shape, block membership, p'-degree."""
    problems: list[str] = []
    bindings = _int_bindings(ctx)

    label = None
    label_text = None
    try:
        label = bind_label(row, ctx)
    except (ValueError, InapplicableBindingError) as exc:
        problems.append(f"label binding failed: {exc}")

    if isinstance(label, Symbol):
        label_text = format_symbol(label)
        rank, defect = rank_defect(label)
        if rank != ctx.n:
            problems.append(f"symbol {label_text} has rank {rank}, expected {ctx.n}")
        if not _defect_class_ok(ctx.lie_type, defect):
            problems.append(
                f"symbol {label_text} has defect {defect}, wrong class for type"
                f" {ctx.lie_type}"
            )
        trivial = trivial_label(ctx)[0]
        if label == trivial:
            problems.append("bound label equals the trivial label")
        elif not same_block(label, trivial, ctx.e, ctx.side):
            problems.append(f"symbol {label_text} is not in the principal block")
    elif label is not None:
        label_text = format_partition(label)
        if sum(label) != ctx.n:
            problems.append(
                f"partition {label_text} sums to {sum(label)}, expected {ctx.n}"
            )
        trivial = trivial_label(ctx)[0]
        if label == trivial:
            problems.append("bound label equals the trivial label")
        elif t_core(label, ctx.e) != t_core(trivial, ctx.e):
            problems.append(f"partition {label_text} is not in the principal block")

    value = None
    try:
        value = evaluate(row.degree_expr, bindings, ctx.q)
    except InapplicableBindingError as exc:
        problems.append(f"degree expression degenerates: {exc}")

    if value is not None:
        if value <= 0:
            problems.append(f"degree value {value} is not positive")
        elif p_valuation_of_value(value, ctx.p) != 0:
            problems.append(f"degree value {value} is divisible by p={ctx.p}")
        else:
            try:
                factored = to_factorization(row.degree_expr, bindings)
            except InapplicableBindingError as exc:
                problems.append(
                    f"degree expression is not purely cyclotomic here: {exc}"
                )
            else:
                if factored.evaluate(ctx.q) != value:
                    raise InternalConsistencyError(
                        f"row {row.row_id}: factored evaluation"
                        f" {factored.evaluate(ctx.q)} != direct value {value}"
                    )
                if factored.p_valuation_symbolic(ctx.orders) != 0:
                    raise InternalConsistencyError(
                        f"row {row.row_id}: symbolic p-valuation nonzero while the"
                        f" numeric value {value} is coprime to p={ctx.p}"
                    )
    return RowCheck(row.row_id, label_text, value, tuple(problems))


@dataclass(frozen=True)
class CellCheck:
    """Outcome of the full table check at one (type, n, q, p) cell."""

    cell: tuple[str, int, int, int]
    in_scope: bool
    rows_checked: int
    violations: tuple[tuple[str, str], ...]
    ambiguous: bool


def check_cell(ctx: GroupContext) -> CellCheck:
    """Coverage, per-row verification, and chi1/chi2 distinctness at one cell.

    Out-of-scope cells return immediately with no checks.  Distinctness
    compares the first applicable row of each slot; a ratio of exactly 2 or
    1/2 is reported as ambiguous rather than as a violation, since the row
    degrees are recorded up to a possible factor of 2.
    """
    cell = (ctx.lie_type, ctx.n, ctx.q, ctx.p)
    if not cell_in_scope(ctx):
        return CellCheck(cell, False, 0, (), False)
    violations: list[tuple[str, str]] = []
    for problem in verify_trivial_forms(ctx):
        violations.append(("trivial", problem))
    per_slot = rows_for_cell(ctx)
    selected: dict[str, RowCheck] = {}
    rows_checked = 0
    for slot in ("chi1", "chi2"):
        applicable = [row for row in per_slot[slot] if row_applicable(row, ctx)]
        if not applicable:
            violations.append(("coverage", f"no applicable {slot} row"))
            continue
        first: RowCheck | None = None
        for row in applicable:
            outcome = verify_row(row, ctx)
            rows_checked += 1
            for problem in outcome.problems:
                violations.append(("row", f"{row.row_id}: {problem}"))
            if first is None:
                first = outcome
        selected[slot] = first
    ambiguous = False
    if "chi1" in selected and "chi2" in selected:
        one, two = selected["chi1"], selected["chi2"]
        if one.label_text is not None and one.label_text == two.label_text:
            violations.append(
                ("collision", f"chi1 and chi2 bind the same label {one.label_text}")
            )
        if one.degree_value is not None and two.degree_value is not None:
            if one.degree_value == two.degree_value:
                violations.append(
                    (
                        "distinctness",
                        f"chi1 {one.row_id}={one.degree_value} equals chi2"
                        f" {two.row_id}={two.degree_value}",
                    )
                )
            elif (
                one.degree_value == 2 * two.degree_value
                or two.degree_value == 2 * one.degree_value
            ):
                ambiguous = True
    return CellCheck(cell, True, rows_checked, tuple(violations), ambiguous)


# --------------------------------------------------------------------------
# Type A/2A q-analog hook formula (independent cross-check of the A rows)


def characteristic_of(q: int) -> int:
    """The defining characteristic (smallest prime factor) of a prime power."""
    if not is_prime_power(q):
        raise ValueError(f"q={q} is not a prime power")
    ell = 2
    while q % ell:
        ell += 1
    return ell


def q_prime_part(value: int, q: int) -> int:
    """``value`` with every factor of the characteristic of q removed."""
    ell = characteristic_of(q)
    value = abs(int(value))
    if value == 0:
        raise ValueError("zero has no q'-part")
    while value % ell == 0:
        value //= ell
    return value


def unipotent_degree_typeA(lam, eps: int, q0: int) -> int:
    """Unipotent character degree for type A (eps=+1) / 2A (eps=-1) at q0.

    q-analog hook formula with base eps*q0: the product of (base^i - 1) for
    i = 1..n divided by the product of (base^h - 1) over all hook lengths h,
    times q0 to the sum of (i-1) * lam_i; the sign is normalized away since
    degrees are positive.
    """
    lam = check_partition(tuple(lam))
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    if q0 < 2:
        raise ValueError(f"q0 must be at least 2, got {q0}")
    n = sum(lam)
    base = eps * q0
    numerator = 1
    for i in range(1, n + 1):
        numerator *= base**i - 1
    denominator = 1
    for h in hook_multiset(lam):
        denominator *= base**h - 1
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise InternalConsistencyError(
            f"q-analog hook quotient is not integral for {lam}, eps={eps}, q={q0}"
        )
    n_lambda = sum(i * part for i, part in enumerate(lam))
    return abs(quotient) * q0**n_lambda


def typea_cross_check_cell(ctx: GroupContext) -> tuple[int, list[str]]:
    """Compare every bound type A/2A row degree against the q-analog formula.

    Returns (labels checked, mismatch descriptions).  The row degree is the
    q'-part, so the hook-formula degree is reduced modulo the characteristic
    before comparison.  This is an identity of the row data and must hold
    whether or not the cell is in scope for the block theory.
    """
    if ctx.lie_type not in ("A", "2A"):
        raise UnsupportedTypeError("the hook-formula cross-check is for types A/2A")
    bindings = _int_bindings(ctx)
    checked = 0
    mismatches: list[str] = []
    for slot, rows in rows_for_cell(ctx).items():
        for row in rows:
            if not row_applicable(row, ctx):
                continue
            try:
                label = bind_label(row, ctx)
                table_value = evaluate(row.degree_expr, bindings, ctx.q)
            except (ValueError, InapplicableBindingError) as exc:
                mismatches.append(f"{row.row_id}: binding failed: {exc}")
                continue
            checked += 1
            hook_degree = unipotent_degree_typeA(label, ctx.eps, ctx.q)
            reduced = q_prime_part(hook_degree, ctx.q)
            if table_value != reduced:
                mismatches.append(
                    f"{row.row_id} ({slot}) label {format_partition(label)}:"
                    f" table degree {table_value} != hook-formula q'-part {reduced}"
                )
    return checked, mismatches


# --------------------------------------------------------------------------
# The D4 inequality and the exceptional families


def verify_d4(q: int, p: int) -> list[str]:
    """Check the rank-4 type D special pair at (q, p): chi1 > 2*chi2, both p'.

    The degree comparison and coprimality hold for every valid (q, p); the
    full row verification (block membership etc.) additionally runs when p
    divides the group order.
    """
    ctx = group_context("D", 4, q, p)
    problems: list[str] = []
    in_scope = cell_in_scope(ctx)
    bindings = _int_bindings(ctx)
    values: dict[str, Fraction] = {}
    for slot, rows in rows_for_cell(ctx).items():
        applicable = [row for row in rows if row_applicable(row, ctx)]
        if len(applicable) != 1:
            problems.append(
                f"expected exactly one applicable {slot} row, got"
                f" {[row.row_id for row in applicable]}"
            )
            continue
        row = applicable[0]
        try:
            value = evaluate(row.degree_expr, bindings, ctx.q)
        except InapplicableBindingError as exc:
            problems.append(f"{row.row_id}: degree expression degenerates: {exc}")
            continue
        values[slot] = value
        if p_valuation_of_value(value, ctx.p) != 0:
            problems.append(f"{row.row_id}: degree {value} is divisible by p={p}")
        if in_scope:
            outcome = verify_row(row, ctx)
            problems.extend(f"{row.row_id}: {item}" for item in outcome.problems)
    if "chi1" in values and "chi2" in values:
        if not values["chi1"] > 2 * values["chi2"]:
            problems.append(
                f"chi1 degree {values['chi1']} is not greater than twice chi2"
                f" degree {values['chi2']}"
            )
    return problems


EXCEPTION_FAMILIES = ("PSL2", "PSL3eps", "SmallA3")


def _exception_when_holds(when: str, q: int, p: int, eps: int) -> bool:
    if when == "p|q+1":
        return (q + 1) % p == 0
    if when == "p|q-1":
        return (q - 1) % p == 0
    if when == "p|q+eps":
        return (q + eps) % p == 0
    if when == "p!|q+eps":
        return (q + eps) % p != 0
    raise InternalConsistencyError(f"unknown exception condition {when!r}")


def check_exception_family(
    family: str, q: int, p: int, eps: int = 0
) -> tuple[int, list[str]]:
    """Check one small-rank exceptional family at (q, p[, eps]).

    Returns (cases checked, problems).  Checks per applicable case: the
    stated degree is coprime to p, exceeds 1, and does not divide the
    Steinberg degree.  Cells where the family does not apply (group not
    simple, or p coprime to the group order) are skipped.
    """
    if family not in EXCEPTION_FAMILIES:
        raise UnsupportedTypeError(f"unknown exceptional family {family!r}")
    if family == "PSL2":
        if eps:
            raise ValueError("the rank-1 family takes no eps")
        if q < 4:  # the groups over F_2 and F_3 are not simple
            return 0, []
    else:
        if eps not in (1, -1):
            raise ValueError("rank-2 linear/unitary families need eps = +1 or -1")
        if family == "SmallA3" and ((q**2 - 1) * (q**3 - eps)) % p != 0:
            return 0, []  # p does not divide the group order
    data = _load_data()["exception_families"][family]
    bindings = {"eps": eps} if eps else {}
    steinberg = evaluate(_parsed_degree(data["steinberg_dsl"]), bindings, q)
    if steinberg.denominator != 1:
        raise InternalConsistencyError(
            f"{family}: Steinberg degree {steinberg} is not an integer"
        )
    checked = 0
    problems: list[str] = []
    for case in data["cases"]:
        if not _exception_when_holds(case["when"], q, p, eps):
            continue
        checked += 1
        value = evaluate(_parsed_degree(case["degree_dsl"]), bindings, q)
        if value.denominator != 1 or value <= 0:
            problems.append(f"{case['when']}: degree {value} is not a positive integer")
            continue
        degree = int(value)
        if degree <= 1:
            problems.append(f"{case['when']}: degree {degree} is not above 1")
        if p_valuation_of_value(degree, p) != 0:
            problems.append(f"{case['when']}: degree {degree} is divisible by p={p}")
        if int(steinberg) % degree == 0:
            problems.append(
                f"{case['when']}: degree {degree} divides the Steinberg degree"
                f" {int(steinberg)}"
            )
    return checked, problems
