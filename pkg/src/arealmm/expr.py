"""Multivariable Laurent expressions: parsing, printing, complex evaluation.

The grammar covers variables ``[a-z][0-9]*``, integer/decimal literals,
``sqrt(k)`` for positive integer k, the operators ``+ - * / ^`` and
parentheses.  Precedence is ``^`` > unary ``-`` > ``* /`` > ``+ -`` with
left associativity for the binary operators.  Exponents are nonzero
integer literals (negative allowed, so ``1/x`` may also be written
``x^-1``).

ASTs are immutable after parsing and evaluation is pure, so expressions
may be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .core import DISK_SLACK, ParseError

__all__ = [
    "Var", "Lit", "SqrtLit", "Neg", "Sum", "Prod", "Quot", "Pow",
    "Expr", "POLE", "EvaluationPoint",
    "parse", "to_text", "variables", "evaluate", "evaluate_array",
    "log_abs", "log_abs_array",
]

UNDERFLOW_FLOOR = 1e-300


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lit:
    value: float


@dataclass(frozen=True)
class SqrtLit:
    radicand: int


@dataclass(frozen=True)
class Neg:
    child: "Expr"


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Prod:
    factors: tuple


@dataclass(frozen=True)
class Quot:
    num: "Expr"
    den: "Expr"


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exponent: int


Expr = Union[Var, Lit, SqrtLit, Neg, Sum, Prod, Quot, Pow]


class _Pole:
    """Distinguished return state for evaluation at a denominator zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "POLE"


POLE = _Pole()


# ---------------------------------------------------------------------------
# Parsing


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str, offset: int | None = None):
        raise ParseError(message, self.pos if offset is None else offset)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def accept(self, ch: str) -> bool:
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def expect(self, ch: str):
        if not self.accept(ch):
            self.error(f"expected '{ch}'")

    # expr := term (('+'|'-') term)*
    def parse_sum(self) -> Expr:
        terms = [self.parse_term()]
        while True:
            if self.accept("+"):
                terms.append(self.parse_term())
            elif self.accept("-"):
                terms.append(Neg(self.parse_term()))
            else:
                break
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    # term := unary (('*'|'/') unary)*
    def parse_term(self) -> Expr:
        factors = [self.parse_unary()]
        while True:
            if self.accept("*"):
                factors.append(self.parse_unary())
            elif self.peek() == "/":
                slash_at = self.pos
                self.pos += 1
                num = factors[0] if len(factors) == 1 else Prod(tuple(factors))
                den = self.parse_unary()
                self._reject_zero_constant(den, slash_at)
                factors = [Quot(num, den)]
            else:
                break
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def parse_unary(self) -> Expr:
        if self.accept("-"):
            return Neg(self.parse_unary())
        return self.parse_postfix()

    # postfix := primary ('^' exponent)*
    def parse_postfix(self) -> Expr:
        node = self.parse_primary()
        while self.accept("^"):
            node = Pow(node, self.parse_exponent())
        return node

    def parse_exponent(self) -> int:
        self.skip_ws()
        parenthesized = self.accept("(")
        sign = -1 if self.accept("-") else 1
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            self.error("expected integer exponent", start)
        if self.pos < len(self.text) and self.text[self.pos] == ".":
            self.error("non-integer exponent", start)
        value = sign * int(self.text[start:self.pos])
        if parenthesized:
            self.expect(")")
        if value == 0:
            self.error("zero exponent", start)
        return value

    def parse_primary(self) -> Expr:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_sum()
            self.expect(")")
            return inner
        if ch.isdigit() or ch == ".":
            return self.parse_number()
        if ch.isalpha() and ch.islower():
            return self.parse_name()
        self.error("expected a value" if ch else "unexpected end of input")

    def parse_number(self) -> Lit:
        start = self.pos
        seen_dot = False
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c.isdigit():
                self.pos += 1
            elif c == "." and not seen_dot:
                seen_dot = True
                self.pos += 1
            else:
                break
        token = self.text[start:self.pos]
        if token in (".",):
            self.error("malformed number", start)
        return Lit(float(token))

    def parse_name(self) -> Expr:
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        letters = self.text[start:self.pos]
        if letters == "sqrt":
            self.expect("(")
            self.skip_ws()
            dstart = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if dstart == self.pos:
                self.error("sqrt expects a positive integer", dstart)
            radicand = int(self.text[dstart:self.pos])
            if radicand <= 0:
                self.error("sqrt expects a positive integer", dstart)
            self.expect(")")
            return SqrtLit(radicand)
        if len(letters) != 1:
            self.error(f"unknown identifier '{letters}'", start)
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return Var(self.text[start:self.pos])

    def _reject_zero_constant(self, den: Expr, offset: int):
        if variables(den):
            return
        value = evaluate(den, ())
        if value is POLE or value == 0:
            self.error("division by a zero constant", offset)


def parse(text: str) -> Expr:
    """Parse expression text into an AST; raises :class:`ParseError` with offset."""
    p = _Parser(text)
    node = p.parse_sum()
    p.skip_ws()
    if p.pos != len(text):
        p.error("unexpected trailing input")
    return node


# ---------------------------------------------------------------------------
# Printing

_ATOMS = (Var, Lit, SqrtLit)


def _fmt_literal(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def to_text(expr: Expr) -> str:
    """Canonical parenthesized infix; ``parse(to_text(e))`` is structurally ``e``."""
    if isinstance(expr, Var):
        return expr.name
    if isinstance(expr, Lit):
        return _fmt_literal(expr.value)
    if isinstance(expr, SqrtLit):
        return f"sqrt({expr.radicand})"
    if isinstance(expr, Neg):
        inner = to_text(expr.child)
        if isinstance(expr.child, (Sum, Prod, Quot)):
            return f"-({inner})"
        return f"-{inner}"
    if isinstance(expr, Sum):
        parts = []
        for i, t in enumerate(expr.terms):
            if i > 0 and isinstance(t, Neg) and not isinstance(t.child, (Sum, Prod, Quot)):
                parts.append(f" - {to_text(t.child)}")
                continue
            body = f"({to_text(t)})" if isinstance(t, Sum) else to_text(t)
            parts.append(body if i == 0 else f" + {body}")
        return "".join(parts)
    if isinstance(expr, Prod):
        bodies = [
            f"({to_text(f)})" if isinstance(f, (Sum, Quot)) else to_text(f)
            for f in expr.factors
        ]
        return " * ".join(bodies)
    if isinstance(expr, Quot):
        num = to_text(expr.num)
        den = to_text(expr.den)
        if not isinstance(expr.num, _ATOMS + (Pow,)):
            num = f"({num})"
        if not isinstance(expr.den, _ATOMS + (Pow,)):
            den = f"({den})"
        return f"{num} / {den}"
    if isinstance(expr, Pow):
        base = to_text(expr.base)
        if not isinstance(expr.base, _ATOMS):
            base = f"({base})"
        return f"{base}^{expr.exponent}"
    raise TypeError(f"not an expression node: {expr!r}")


# ---------------------------------------------------------------------------
# Evaluation


def variables(expr: Expr) -> tuple[str, ...]:
    """Sorted tuple of distinct variable names appearing in the expression."""
    names: set[str] = set()

    def walk(node: Expr):
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, Neg):
            walk(node.child)
        elif isinstance(node, Sum):
            for t in node.terms:
                walk(t)
        elif isinstance(node, Prod):
            for f in node.factors:
                walk(f)
        elif isinstance(node, Quot):
            walk(node.num)
            walk(node.den)
        elif isinstance(node, Pow):
            walk(node.base)

    walk(expr)
    return tuple(sorted(names))


@dataclass(frozen=True)
class EvaluationPoint:
    """One complex value per variable, each inside the closed unit disk.

    The modulus check allows a slack of :data:`~arealmm.core.DISK_SLACK`
    for boundary points produced in floating point.
    """

    values: tuple

    def __post_init__(self):
        for v in self.values:
            if abs(v) > 1.0 + DISK_SLACK:
                raise ValueError(f"point component {v!r} lies outside the closed unit disk")

    def __len__(self):
        return len(self.values)


PointLike = Union[EvaluationPoint, Sequence[complex], Mapping[str, complex]]


def _env_for(expr: Expr, point: PointLike) -> dict:
    names = variables(expr)
    if isinstance(point, Mapping):
        missing = [n for n in names if n not in point]
        if missing:
            raise ValueError(f"point is missing variables {missing}")
        return {n: complex(point[n]) for n in names}
    values = point.values if isinstance(point, EvaluationPoint) else tuple(point)
    if len(values) != len(names):
        raise ValueError(
            f"expression has {len(names)} variables {list(names)} "
            f"but the point has {len(values)} components"
        )
    return {n: complex(v) for n, v in zip(names, values)}


def _eval_node(node: Expr, env: dict):
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Lit):
        return complex(node.value)
    if isinstance(node, SqrtLit):
        return complex(math.sqrt(node.radicand))
    if isinstance(node, Neg):
        v = _eval_node(node.child, env)
        return POLE if v is POLE else -v
    if isinstance(node, Sum):
        acc = 0j
        for t in node.terms:
            v = _eval_node(t, env)
            if v is POLE:
                return POLE
            acc += v
        return acc
    if isinstance(node, Prod):
        acc = 1 + 0j
        for f in node.factors:
            v = _eval_node(f, env)
            if v is POLE:
                return POLE
            acc *= v
        return acc
    if isinstance(node, Quot):
        num = _eval_node(node.num, env)
        den = _eval_node(node.den, env)
        if num is POLE or den is POLE or den == 0:
            return POLE
        return num / den
    if isinstance(node, Pow):
        base = _eval_node(node.base, env)
        if base is POLE:
            return POLE
        if base == 0 and node.exponent < 0:
            return POLE
        return base ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def evaluate(expr: Expr, point: PointLike):
    """Evaluate at a complex point; returns the value or :data:`POLE`."""
    return _eval_node(expr, _env_for(expr, point))


def log_abs(expr: Expr, point: PointLike) -> float:
    """log of the modulus, with -inf at zeros of the expression and +inf at poles."""
    v = evaluate(expr, point)
    if v is POLE:
        return math.inf
    mag = abs(v)
    if mag < UNDERFLOW_FLOOR:
        return -math.inf
    return math.log(mag)


# ---------------------------------------------------------------------------
# Vectorized evaluation (Monte Carlo backend)


def _eval_vec(node: Expr, env: Mapping[str, np.ndarray]) -> np.ndarray:
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Lit):
        return np.complex128(node.value)
    if isinstance(node, SqrtLit):
        return np.complex128(math.sqrt(node.radicand))
    if isinstance(node, Neg):
        return -_eval_vec(node.child, env)
    if isinstance(node, Sum):
        acc = _eval_vec(node.terms[0], env)
        for t in node.terms[1:]:
            acc = acc + _eval_vec(t, env)
        return acc
    if isinstance(node, Prod):
        acc = _eval_vec(node.factors[0], env)
        for f in node.factors[1:]:
            acc = acc * _eval_vec(f, env)
        return acc
    if isinstance(node, Quot):
        return _eval_vec(node.num, env) / _eval_vec(node.den, env)
    if isinstance(node, Pow):
        return _eval_vec(node.base, env) ** node.exponent
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_array(expr: Expr, env: Mapping[str, np.ndarray]) -> np.ndarray:
    """Elementwise evaluation over arrays of points (one array per variable).

    Zeros of denominators produce inf/nan entries rather than a pole state;
    callers filter non-finite results.
    """
    with np.errstate(all="ignore"):
        out = _eval_vec(expr, env)
    if np.isscalar(out) or out.ndim == 0:
        size = len(next(iter(env.values()))) if env else 1
        out = np.full(size, out, dtype=np.complex128)
    return out


def log_abs_array(expr: Expr, env: Mapping[str, np.ndarray]) -> np.ndarray:
    with np.errstate(all="ignore"):
        return np.log(np.abs(evaluate_array(expr, env)))
