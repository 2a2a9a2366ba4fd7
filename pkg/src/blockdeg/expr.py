"""A small expression language for generic character degrees.

Grammar (whitespace-insensitive)::

    expr    := factor { ("*" | "/") factor }
    factor  := rational
             | "q" [ "^" exponent ]
             | "(" "q" ["^" exponent] ("+"|"-") "1" ")" [ "^" integer ]
             | "(" "q^" exponent "-" "eps^" exponent ")" [ "^" integer ]
             | "prod(" var "=" intexpr ".." intexpr ";" expr ")"
             | "(" expr ")" [ "^" integer ]
    exponent:= integer | "(" intexpr ")"
    intexpr := sum of products over {n, m, e, r, i, j} and integer literals
    rational:= ["-"] integer [ "/" integer ]

The two exponents of an eps-atom must be identical; the atom means
(q^k - eps^k) and expands at evaluation time according to the bound value
eps = +1 or -1 and the parity of k. Range products with an empty index range
equal 1. Evaluation is exact (fractions.Fraction); any factor that evaluates
to exactly zero (in particular a zero denominator) raises
InapplicableBindingError — the expression does not describe a degree at that
binding.

The canonical printer emits exponents always parenthesized ("q^(3)",
"(q^(1)-1)"); parse(print(tree)) == tree for every tree the parser produces,
and evaluation is invariant under the round trip.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .cyclo import CycloFactorization, factor_q_pochhammer
from .errors import InapplicableBindingError

__all__ = [
    "IntExpr",
    "IntLit",
    "IntVar",
    "IntAdd",
    "IntSub",
    "IntMul",
    "DegreeExpr",
    "Rational",
    "QPow",
    "CycloAtom",
    "EpsAtom",
    "Power",
    "Product",
    "RangeProduct",
    "parse_degree_expr",
    "parse_int_expr",
    "print_degree_expr",
    "int_eval",
    "evaluate",
    "to_factorization",
    "INT_VARIABLES",
]

INT_VARIABLES = ("n", "m", "e", "r", "i", "j")


# ---------------------------------------------------------------- intexpr AST


@dataclass(frozen=True)
class IntLit:
    value: int


@dataclass(frozen=True)
class IntVar:
    name: str

    def __post_init__(self) -> None:
        if self.name not in INT_VARIABLES:
            raise ValueError(f"unknown integer variable {self.name!r}")


@dataclass(frozen=True)
class IntAdd:
    left: "IntExpr"
    right: "IntExpr"


@dataclass(frozen=True)
class IntSub:
    left: "IntExpr"
    right: "IntExpr"


@dataclass(frozen=True)
class IntMul:
    left: "IntExpr"
    right: "IntExpr"


IntExpr = Union[IntLit, IntVar, IntAdd, IntSub, IntMul]


def int_eval(node: IntExpr, bindings: dict) -> int:
    if isinstance(node, IntLit):
        return node.value
    if isinstance(node, IntVar):
        if node.name not in bindings:
            raise ValueError(f"unbound variable {node.name!r}")
        return bindings[node.name]
    if isinstance(node, IntAdd):
        return int_eval(node.left, bindings) + int_eval(node.right, bindings)
    if isinstance(node, IntSub):
        return int_eval(node.left, bindings) - int_eval(node.right, bindings)
    if isinstance(node, IntMul):
        return int_eval(node.left, bindings) * int_eval(node.right, bindings)
    raise TypeError(f"not an integer expression: {node!r}")


def _print_int(node: IntExpr) -> str:
    if isinstance(node, IntLit):
        return str(node.value)
    if isinstance(node, IntVar):
        return node.name
    if isinstance(node, (IntAdd, IntSub)):
        op = "+" if isinstance(node, IntAdd) else "-"
        right = _print_int(node.right)
        if isinstance(node.right, (IntAdd, IntSub)):
            right = f"({right})"
        return f"{_print_int(node.left)}{op}{right}"
    if isinstance(node, IntMul):
        parts = []
        for child in (node.left, node.right):
            text = _print_int(child)
            if isinstance(child, (IntAdd, IntSub)):
                text = f"({text})"
            parts.append(text)
        return "*".join(parts)
    raise TypeError(f"not an integer expression: {node!r}")


# ------------------------------------------------------------ degree-expr AST


@dataclass(frozen=True)
class Rational:
    value: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class QPow:
    exponent: IntExpr


@dataclass(frozen=True)
class CycloAtom:
    """(q^exponent - 1) for sign=-1, (q^exponent + 1) for sign=+1."""

    exponent: IntExpr
    sign: int

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")


@dataclass(frozen=True)
class EpsAtom:
    """(q^exponent - eps^exponent); eps is bound to +1 or -1 at evaluation."""

    exponent: IntExpr


@dataclass(frozen=True)
class Power:
    base: "DegreeExpr"
    exponent: int


@dataclass(frozen=True)
class Product:
    """Left-to-right chain of factors; each paired with +1 (multiply) or -1 (divide)."""

    items: tuple[tuple["DegreeExpr", int], ...]

    def __post_init__(self) -> None:
        if len(self.items) < 2 and not (self.items and self.items[0][1] == -1):
            raise ValueError("a product needs at least two factors")
        if any(op not in (1, -1) for _, op in self.items):
            raise ValueError("product ops must be +1 or -1")


@dataclass(frozen=True)
class RangeProduct:
    var: str
    lo: IntExpr
    hi: IntExpr
    body: "DegreeExpr"

    def __post_init__(self) -> None:
        if self.var not in INT_VARIABLES:
            raise ValueError(f"unknown loop variable {self.var!r}")


DegreeExpr = Union[Rational, QPow, CycloAtom, EpsAtom, Power, Product, RangeProduct]


# ------------------------------------------------------------------ tokenizer


_TOKEN_RE = re.compile(r"\s*(\d+|[a-z]+|\.\.|[\^()*/+\-=;])")


class _Tokens:
    def __init__(self, text: str) -> None:
        self.toks: list[str] = []
        pos = 0
        while pos < len(text):
            match = _TOKEN_RE.match(text, pos)
            if match is None:
                if text[pos:].strip():
                    raise ValueError(
                        f"syntax error at position {pos}: {text[pos:pos + 10]!r}"
                    )
                break
            self.toks.append(match.group(1))
            pos = match.end()
        self.index = 0

    def peek(self, ahead: int = 0) -> str | None:
        i = self.index + ahead
        return self.toks[i] if i < len(self.toks) else None

    def next(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ValueError("unexpected end of expression")
        self.index += 1
        return tok

    def expect(self, tok: str) -> None:
        got = self.next()
        if got != tok:
            raise ValueError(f"expected {tok!r}, got {got!r} at token {self.index - 1}")

    def accept(self, tok: str) -> bool:
        if self.peek() == tok:
            self.index += 1
            return True
        return False

    def done(self) -> bool:
        return self.index >= len(self.toks)


# --------------------------------------------------------------------- parser


def _parse_intexpr(ts: _Tokens) -> IntExpr:
    node = _parse_intterm(ts)
    while ts.peek() in ("+", "-"):
        op = ts.next()
        right = _parse_intterm(ts)
        node = IntAdd(node, right) if op == "+" else IntSub(node, right)
    return node


def _parse_intterm(ts: _Tokens) -> IntExpr:
    node = _parse_intatom(ts)
    while ts.peek() == "*":
        ts.next()
        node = IntMul(node, _parse_intatom(ts))
    return node


def _parse_intatom(ts: _Tokens) -> IntExpr:
    tok = ts.next()
    if tok.isdigit():
        return IntLit(int(tok))
    if tok in INT_VARIABLES:
        return IntVar(tok)
    if tok == "(":
        inner = _parse_intexpr(ts)
        ts.expect(")")
        return inner
    raise ValueError(f"expected integer expression, got {tok!r}")


def _parse_exponent(ts: _Tokens) -> IntExpr:
    """Exponent after '^': a parenthesized intexpr or a bare integer."""
    if ts.accept("("):
        inner = _parse_intexpr(ts)
        ts.expect(")")
        return inner
    tok = ts.next()
    if not tok.isdigit():
        raise ValueError(f"expected exponent, got {tok!r}")
    return IntLit(int(tok))


def _try_parse_atom(ts: _Tokens) -> DegreeExpr | None:
    """Parse '(q...±...)' atoms after the opening paren; None to backtrack."""
    start = ts.index
    try:
        if not ts.accept("q"):
            raise ValueError("not an atom")
        exponent: IntExpr = IntLit(1)
        if ts.accept("^"):
            exponent = _parse_exponent(ts)
        op = ts.next()
        if op not in ("+", "-"):
            raise ValueError("not an atom")
        tok = ts.next()
        if tok == "1":
            ts.expect(")")
            return CycloAtom(exponent, 1 if op == "+" else -1)
        if tok == "eps" and op == "-":
            ts.expect("^")
            second = _parse_exponent(ts)
            if second != exponent:
                raise ValueError(
                    "eps-atom exponents must match: "
                    f"{_print_int(exponent)} vs {_print_int(second)}"
                )
            ts.expect(")")
            return EpsAtom(exponent)
        raise ValueError("not an atom")
    except ValueError as exc:
        if "must match" in str(exc):
            raise
        ts.index = start
        return None


def _parse_factor(ts: _Tokens) -> DegreeExpr:
    tok = ts.peek()
    if tok is None:
        raise ValueError("unexpected end of expression")
    if tok.isdigit() or tok == "-":
        negative = ts.accept("-")
        digits = ts.next()
        if not digits.isdigit():
            raise ValueError(f"expected integer, got {digits!r}")
        numerator = -int(digits) if negative else int(digits)
        if ts.peek() == "/" and (nxt := ts.peek(1)) is not None and nxt.isdigit():
            ts.next()
            denominator = int(ts.next())
            return Rational(Fraction(numerator, denominator))
        return Rational(Fraction(numerator))
    if tok == "q":
        ts.next()
        if ts.accept("^"):
            return QPow(_parse_exponent(ts))
        return QPow(IntLit(1))
    if tok == "prod":
        ts.next()
        ts.expect("(")
        var = ts.next()
        if var not in INT_VARIABLES:
            raise ValueError(f"unknown loop variable {var!r}")
        ts.expect("=")
        lo = _parse_intexpr(ts)
        ts.expect("..")
        hi = _parse_intexpr(ts)
        ts.expect(";")
        body = _parse_expr(ts)
        ts.expect(")")
        return RangeProduct(var, lo, hi, body)
    if tok == "(":
        ts.next()
        atom = _try_parse_atom(ts)
        if atom is None:
            atom = _parse_expr(ts)
            ts.expect(")")
        if ts.peek() == "^":
            ts.next()
            exp_tok = ts.next()
            if not exp_tok.isdigit():
                raise ValueError(f"expected integer exponent, got {exp_tok!r}")
            return Power(atom, int(exp_tok))
        return atom
    raise ValueError(f"unexpected token {tok!r}")


def _parse_expr(ts: _Tokens) -> DegreeExpr:
    items: list[tuple[DegreeExpr, int]] = [(_parse_factor(ts), 1)]
    while ts.peek() in ("*", "/"):
        op = 1 if ts.next() == "*" else -1
        items.append((_parse_factor(ts), op))
    if len(items) == 1:
        return items[0][0]
    return Product(tuple(items))


def parse_degree_expr(text: str) -> DegreeExpr:
    """Parse ``text`` into a DegreeExpr; raises ValueError with position info."""
    ts = _Tokens(text)
    node = _parse_expr(ts)
    if not ts.done():
        raise ValueError(f"trailing input at token {ts.index}: {ts.peek()!r}")
    return node


def parse_int_expr(text: str) -> IntExpr:
    """Parse a bare integer expression (used by label templates)."""
    ts = _Tokens(text)
    node = _parse_intexpr(ts)
    if not ts.done():
        raise ValueError(f"trailing input at token {ts.index}: {ts.peek()!r}")
    return node


# -------------------------------------------------------------------- printer


def _print_factor(node: DegreeExpr) -> str:
    if isinstance(node, Product):
        return f"({print_degree_expr(node)})"
    return print_degree_expr(node)


def print_degree_expr(node: DegreeExpr) -> str:
    """Canonical text form; parse_degree_expr inverts it."""
    if isinstance(node, Rational):
        return str(node.value)
    if isinstance(node, QPow):
        return f"q^({_print_int(node.exponent)})"
    if isinstance(node, CycloAtom):
        op = "+" if node.sign == 1 else "-"
        return f"(q^({_print_int(node.exponent)}){op}1)"
    if isinstance(node, EpsAtom):
        k = _print_int(node.exponent)
        return f"(q^({k})-eps^({k}))"
    if isinstance(node, Power):
        base = node.base
        if isinstance(base, (CycloAtom, EpsAtom)):
            return f"{print_degree_expr(base)}^{node.exponent}"
        return f"({print_degree_expr(base)})^{node.exponent}"
    if isinstance(node, RangeProduct):
        return (
            f"prod({node.var}={_print_int(node.lo)}..{_print_int(node.hi)}; "
            f"{print_degree_expr(node.body)})"
        )
    if isinstance(node, Product):
        first, first_op = node.items[0]
        out = "1" if first_op == -1 else ""
        if first_op == -1:
            out += "/" + _print_factor(first)
        else:
            out = _print_factor(first)
        for item, op in node.items[1:]:
            out += ("*" if op == 1 else "/") + _print_factor(item)
        return out
    raise TypeError(f"not a degree expression: {node!r}")


# ------------------------------------------------------------------ evaluator


def _atom_sign(node: EpsAtom, bindings: dict) -> tuple[int, int]:
    """Resolve an eps-atom at the bound eps into (exponent value, cyclo sign)."""
    if "eps" not in bindings:
        raise ValueError("unbound variable 'eps'")
    eps = bindings["eps"]
    if eps not in (1, -1):
        raise ValueError(f"eps must be +1 or -1, got {eps!r}")
    k = int_eval(node.exponent, bindings)
    if eps == 1 or k % 2 == 0:
        return k, -1  # q^k - 1
    return k, 1  # q^k + 1


def _check_nonzero(value: Fraction, node: DegreeExpr, bindings: dict) -> Fraction:
    if value == 0:
        raise InapplicableBindingError(
            f"factor {print_degree_expr(node)} vanishes at this binding"
        )
    return value


def evaluate(node: DegreeExpr, bindings: dict, q0) -> Fraction:
    """Exact value at q = q0 with the given integer (and eps) bindings.

    Raises InapplicableBindingError when any multiplicative factor is exactly
    zero, ValueError for unbound variables.
    """
    q0 = Fraction(q0)
    if isinstance(node, Rational):
        return _check_nonzero(node.value, node, bindings)
    if isinstance(node, QPow):
        return q0 ** int_eval(node.exponent, bindings)
    if isinstance(node, CycloAtom):
        k = int_eval(node.exponent, bindings)
        return _check_nonzero(q0**k + node.sign, node, bindings)
    if isinstance(node, EpsAtom):
        k, sign = _atom_sign(node, bindings)
        return _check_nonzero(q0**k + sign, node, bindings)
    if isinstance(node, Power):
        return evaluate(node.base, bindings, q0) ** node.exponent
    if isinstance(node, RangeProduct):
        lo = int_eval(node.lo, bindings)
        hi = int_eval(node.hi, bindings)
        value = Fraction(1)
        for loop_value in range(lo, hi + 1):
            inner = dict(bindings)
            inner[node.var] = loop_value
            value *= evaluate(node.body, inner, q0)
        return value
    if isinstance(node, Product):
        value = Fraction(1)
        for item, op in node.items:
            item_value = evaluate(item, bindings, q0)
            value = value * item_value if op == 1 else value / item_value
        return value
    raise TypeError(f"not a degree expression: {node!r}")


def to_factorization(node: DegreeExpr, bindings: dict) -> CycloFactorization:
    """Symbolic cyclotomic factorization at integer bindings (q stays formal)."""
    if isinstance(node, Rational):
        return CycloFactorization(scalar=node.value)
    if isinstance(node, QPow):
        return CycloFactorization(q_power=int_eval(node.exponent, bindings))
    if isinstance(node, (CycloAtom, EpsAtom)):
        if isinstance(node, EpsAtom):
            k, sign = _atom_sign(node, bindings)
        else:
            k, sign = int_eval(node.exponent, bindings), node.sign
        if k == 0 and sign == 1:
            return CycloFactorization(scalar=Fraction(2))
        if k <= 0:
            raise InapplicableBindingError(
                f"factor {print_degree_expr(node)} degenerates at this binding"
            )
        return factor_q_pochhammer(k, sign)
    if isinstance(node, Power):
        return to_factorization(node.base, bindings) ** node.exponent
    if isinstance(node, RangeProduct):
        lo = int_eval(node.lo, bindings)
        hi = int_eval(node.hi, bindings)
        out = CycloFactorization()
        for loop_value in range(lo, hi + 1):
            inner = dict(bindings)
            inner[node.var] = loop_value
            out = out * to_factorization(node.body, inner)
        return out
    if isinstance(node, Product):
        out = CycloFactorization()
        for item, op in node.items:
            part = to_factorization(item, bindings)
            out = out * part if op == 1 else out / part
        return out
    raise TypeError(f"not a degree expression: {node!r}")
