"""Scalar expressions on coordinate charts.

Immutable expression trees over at most five chart variables ``x1``..``x5``.
The aliases ``x, y, p, q, z`` name ``x1, x2, x3, x4, x5`` in that order,
matching the Monge chart ``(x, y, p, q, z)``.

Grammar (recursive descent, ``^`` takes integer exponents only)::

    expr   := term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom ('^' int_exponent)*
    atom   := NUMBER | NAME | NAME '(' expr (',' expr)* ')' | '(' expr ')'

Functions: ``sin``, ``cos``, ``exp``, ``sqrt``.  Integer literals and
integer/integer quotients are kept as exact rationals until evaluation;
decimal literals are 64-bit floats.

The parser builds the tree verbatim apart from two literal folds (unary
minus of a constant, and the quotient of two exact integers, so that
``-3/4`` is a single rational constant).  The smart constructors ``add``,
``sub``, ``mul``, ``div``, ``neg``, ``pow_int`` used by `differentiate`
additionally fold constants and drop 0/1 units to bound tree growth; the
folds ``0*e -> 0`` and ``0/e -> 0`` enlarge the domain of the result,
which is the usual convention for derivative construction.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ArityError, DomainError, ExactnessError, ParseError

__all__ = [
    "ScalarExpr", "Const", "Var", "Add", "Sub", "Mul", "Div", "Neg", "Pow",
    "Fun", "const", "var", "add", "sub", "mul", "div", "neg", "pow_int",
    "fun", "parse", "serialize", "differentiate", "evaluate", "eval_exact",
    "fd_partial", "substitute", "max_slot", "FUNCTIONS", "VARIABLE_NAMES",
]

FUNCTIONS = ("sin", "cos", "exp", "sqrt")

MAX_VARS = 5

#: parser name -> 1-based variable index
VARIABLE_NAMES = {f"x{i}": i for i in range(1, MAX_VARS + 1)}
VARIABLE_NAMES.update({"x": 1, "y": 2, "p": 3, "q": 4, "z": 5})


class ScalarExpr:
    """Base class for expression nodes.  Nodes are frozen dataclasses;
    equality is structural."""

    __slots__ = ()

    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    def __rmul__(self, other):
        return mul(_coerce(other), self)

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return pow_int(self, exponent)

    def __str__(self):
        return serialize(self)


@dataclass(frozen=True, slots=True)
class Const(ScalarExpr):
    value: Fraction | float


@dataclass(frozen=True, slots=True)
class Var(ScalarExpr):
    slot: int  # 0-based


@dataclass(frozen=True, slots=True)
class Add(ScalarExpr):
    lhs: ScalarExpr
    rhs: ScalarExpr


@dataclass(frozen=True, slots=True)
class Sub(ScalarExpr):
    lhs: ScalarExpr
    rhs: ScalarExpr


@dataclass(frozen=True, slots=True)
class Mul(ScalarExpr):
    lhs: ScalarExpr
    rhs: ScalarExpr


@dataclass(frozen=True, slots=True)
class Div(ScalarExpr):
    lhs: ScalarExpr
    rhs: ScalarExpr


@dataclass(frozen=True, slots=True)
class Neg(ScalarExpr):
    arg: ScalarExpr


@dataclass(frozen=True, slots=True)
class Pow(ScalarExpr):
    base: ScalarExpr
    exponent: int


@dataclass(frozen=True, slots=True)
class Fun(ScalarExpr):
    name: str
    arg: ScalarExpr


_ZERO = Const(Fraction(0))
_ONE = Const(Fraction(1))


def _coerce(value) -> ScalarExpr:
    if isinstance(value, ScalarExpr):
        return value
    if isinstance(value, (int, Fraction, float)):
        return const(value)
    raise TypeError(f"cannot use {type(value).__name__} as an expression")


def const(value) -> Const:
    """Exact constant for int/Fraction input, float constant otherwise."""
    if isinstance(value, bool):
        raise TypeError("bool is not a constant")
    if isinstance(value, int):
        return Const(Fraction(value))
    if isinstance(value, (Fraction, float)):
        return Const(value)
    raise TypeError(f"cannot use {type(value).__name__} as a constant")


def var(i: int) -> Var:
    """Chart variable x_i, 1-based, 1 <= i <= 5."""
    if not isinstance(i, int) or not 1 <= i <= MAX_VARS:
        raise ValueError(f"variable index must be 1..{MAX_VARS}, got {i!r}")
    return Var(i - 1)


def _is_const(e: ScalarExpr, value=None) -> bool:
    if not isinstance(e, Const):
        return False
    return value is None or e.value == value


def add(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return Add(a, b)


def sub(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return Sub(a, b)


def mul(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return _ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    return Mul(a, b)


def div(a: ScalarExpr, b: ScalarExpr) -> ScalarExpr:
    if isinstance(a, Const) and isinstance(b, Const) and b.value != 0:
        va, vb = a.value, b.value
        if isinstance(va, Fraction) and isinstance(vb, Fraction):
            return Const(va / vb)
        return Const(float(va) / float(vb))
    if _is_const(a, 0):
        return _ZERO
    if _is_const(b, 1):
        return a
    return Div(a, b)


def neg(a: ScalarExpr) -> ScalarExpr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def pow_int(base: ScalarExpr, exponent: int) -> ScalarExpr:
    if not isinstance(exponent, int) or isinstance(exponent, bool):
        raise TypeError("exponent must be an integer")
    if exponent == 0:
        return _ONE  # x^0 == 1 by convention, also at x == 0
    if exponent == 1:
        return base
    if isinstance(base, Const):
        v = base.value
        if v == 0 and exponent < 0:
            return Pow(base, exponent)  # keep; evaluation reports it
        if isinstance(v, Fraction):
            return Const(v ** exponent)
        try:
            return Const(float(v) ** exponent)
        except OverflowError:
            return Pow(base, exponent)
    return Pow(base, exponent)


def fun(name: str, arg: ScalarExpr) -> Fun:
    if name not in FUNCTIONS:
        raise ValueError(f"unknown function {name!r}")
    return Fun(name, arg)


# --- differentiation -------------------------------------------------------

def differentiate(e: ScalarExpr, i: int) -> ScalarExpr:
    """Exact partial derivative with respect to x_i (1-based)."""
    if not isinstance(i, int) or not 1 <= i <= MAX_VARS:
        raise ValueError(f"variable index must be 1..{MAX_VARS}, got {i!r}")
    return _diff(e, i - 1)


def _diff(e: ScalarExpr, slot: int) -> ScalarExpr:
    if isinstance(e, Const):
        return _ZERO
    if isinstance(e, Var):
        return _ONE if e.slot == slot else _ZERO
    if isinstance(e, Add):
        return add(_diff(e.lhs, slot), _diff(e.rhs, slot))
    if isinstance(e, Sub):
        return sub(_diff(e.lhs, slot), _diff(e.rhs, slot))
    if isinstance(e, Mul):
        return add(mul(_diff(e.lhs, slot), e.rhs), mul(e.lhs, _diff(e.rhs, slot)))
    if isinstance(e, Div):
        # (u/v)' = (u'v - uv') / v^2
        u, v = e.lhs, e.rhs
        num = sub(mul(_diff(u, slot), v), mul(u, _diff(v, slot)))
        return div(num, pow_int(v, 2))
    if isinstance(e, Neg):
        return neg(_diff(e.arg, slot))
    if isinstance(e, Pow):
        k = e.exponent
        return mul(mul(const(k), pow_int(e.base, k - 1)), _diff(e.base, slot))
    if isinstance(e, Fun):
        inner = _diff(e.arg, slot)
        if e.name == "sin":
            return mul(Fun("cos", e.arg), inner)
        if e.name == "cos":
            return neg(mul(Fun("sin", e.arg), inner))
        if e.name == "exp":
            return mul(e, inner)
        if e.name == "sqrt":
            return div(inner, mul(const(2), e))
    raise TypeError(f"not an expression node: {e!r}")


# --- evaluation ------------------------------------------------------------

def _check_point(e: ScalarExpr, point) -> tuple:
    pt = tuple(point)
    need = max_slot(e) + 1
    if need > len(pt):
        raise ValueError(
            f"expression references x{need} but the point has {len(pt)} coordinates"
        )
    return pt


def evaluate(e: ScalarExpr, point) -> float:
    """Evaluate at a point (sequence of floats), IEEE double arithmetic.

    Raises DomainError naming the offending subexpression on division by
    zero, sqrt of a negative number, or 0 to a negative power.
    """
    return _eval(e, _check_point(e, point))


def _domain_error(op: str, node: ScalarExpr) -> DomainError:
    text = serialize(node)
    if len(text) > 120:
        text = text[:117] + "..."
    return DomainError(f"{op} in '{text}'")


def _eval(e: ScalarExpr, pt: tuple) -> float:
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        return float(pt[e.slot])
    if isinstance(e, Add):
        return _eval(e.lhs, pt) + _eval(e.rhs, pt)
    if isinstance(e, Sub):
        return _eval(e.lhs, pt) - _eval(e.rhs, pt)
    if isinstance(e, Mul):
        return _eval(e.lhs, pt) * _eval(e.rhs, pt)
    if isinstance(e, Div):
        den = _eval(e.rhs, pt)
        if den == 0.0:
            raise _domain_error("division by zero", e)
        return _eval(e.lhs, pt) / den
    if isinstance(e, Neg):
        return -_eval(e.arg, pt)
    if isinstance(e, Pow):
        base = _eval(e.base, pt)
        if base == 0.0 and e.exponent < 0:
            raise _domain_error("zero to a negative power", e)
        if e.exponent == 2:   # same operation order as the batch backends
            return base * base
        if e.exponent == 3:
            return base * base * base
        try:
            return math.pow(base, float(e.exponent))
        except OverflowError:
            sign = -1.0 if (base < 0.0 and e.exponent % 2 == 1) else 1.0
            return sign * math.inf
    if isinstance(e, Fun):
        a = _eval(e.arg, pt)
        if e.name == "sin":
            return math.sin(a)
        if e.name == "cos":
            return math.cos(a)
        if e.name == "exp":
            try:
                return math.exp(a)
            except OverflowError:
                return math.inf
        if e.name == "sqrt":
            if a < 0.0:
                raise _domain_error("square root of a negative number", e)
            return math.sqrt(a)
    raise TypeError(f"not an expression node: {e!r}")


def _exact_sqrt(v: Fraction) -> Fraction:
    if v < 0:
        raise DomainError("square root of a negative number")
    num, den = v.numerator, v.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        raise ExactnessError(f"sqrt({v}) is irrational")
    return Fraction(rn, rd)


def eval_exact(e: ScalarExpr, point) -> Fraction:
    """Evaluate with exact rational arithmetic.

    Coordinates may be ints, Fractions, or floats (floats are exact binary
    rationals).  sqrt succeeds only on perfect rational squares; sin, cos,
    exp only at 0.  Anything else raises ExactnessError.
    """
    pt = tuple(Fraction(c) for c in _check_point(e, point))
    return _eval_exact(e, pt)


def _eval_exact(e: ScalarExpr, pt: tuple) -> Fraction:
    if isinstance(e, Const):
        return Fraction(e.value)
    if isinstance(e, Var):
        return pt[e.slot]
    if isinstance(e, Add):
        return _eval_exact(e.lhs, pt) + _eval_exact(e.rhs, pt)
    if isinstance(e, Sub):
        return _eval_exact(e.lhs, pt) - _eval_exact(e.rhs, pt)
    if isinstance(e, Mul):
        return _eval_exact(e.lhs, pt) * _eval_exact(e.rhs, pt)
    if isinstance(e, Div):
        den = _eval_exact(e.rhs, pt)
        if den == 0:
            raise _domain_error("division by zero", e)
        return _eval_exact(e.lhs, pt) / den
    if isinstance(e, Neg):
        return -_eval_exact(e.arg, pt)
    if isinstance(e, Pow):
        base = _eval_exact(e.base, pt)
        if base == 0 and e.exponent < 0:
            raise _domain_error("zero to a negative power", e)
        return base ** e.exponent
    if isinstance(e, Fun):
        a = _eval_exact(e.arg, pt)
        if e.name == "sqrt":
            return _exact_sqrt(a)
        if a == 0:
            return Fraction(0) if e.name == "sin" else Fraction(1)
        raise ExactnessError(f"{e.name}({a}) is not rational")
    raise TypeError(f"not an expression node: {e!r}")


def fd_partial(e: ScalarExpr, i: int, point, h: float = 1e-5) -> float:
    """Central finite difference in x_i: (f(p + h e_i) - f(p - h e_i)) / 2h."""
    if not isinstance(i, int) or not 1 <= i <= MAX_VARS:
        raise ValueError(f"variable index must be 1..{MAX_VARS}, got {i!r}")
    if not h > 0.0:
        raise ValueError("step h must be positive")
    pt = tuple(float(c) for c in point)
    if i > len(pt):
        raise ValueError(f"point has {len(pt)} coordinates, cannot vary x{i}")
    up = pt[: i - 1] + (pt[i - 1] + h,) + pt[i:]
    dn = pt[: i - 1] + (pt[i - 1] - h,) + pt[i:]
    return (evaluate(e, up) - evaluate(e, dn)) / (2.0 * h)


def substitute(e: ScalarExpr, mapping: dict[int, ScalarExpr]) -> ScalarExpr:
    """Replace variables by expressions; keys are 1-based indices.
    Built with the smart constructors, so units fold away."""
    repl = {}
    for i, sub_e in mapping.items():
        if not isinstance(i, int) or not 1 <= i <= MAX_VARS:
            raise ValueError(f"variable index must be 1..{MAX_VARS}, got {i!r}")
        repl[i - 1] = _coerce(sub_e)
    return _subst(e, repl)


def _subst(e: ScalarExpr, repl: dict) -> ScalarExpr:
    if isinstance(e, Const):
        return e
    if isinstance(e, Var):
        return repl.get(e.slot, e)
    if isinstance(e, Add):
        return add(_subst(e.lhs, repl), _subst(e.rhs, repl))
    if isinstance(e, Sub):
        return sub(_subst(e.lhs, repl), _subst(e.rhs, repl))
    if isinstance(e, Mul):
        return mul(_subst(e.lhs, repl), _subst(e.rhs, repl))
    if isinstance(e, Div):
        return div(_subst(e.lhs, repl), _subst(e.rhs, repl))
    if isinstance(e, Neg):
        return neg(_subst(e.arg, repl))
    if isinstance(e, Pow):
        return pow_int(_subst(e.base, repl), e.exponent)
    if isinstance(e, Fun):
        return Fun(e.name, _subst(e.arg, repl))
    raise TypeError(f"not an expression node: {e!r}")


def max_slot(e: ScalarExpr) -> int:
    """Largest 0-based variable slot used, or -1 for constant expressions."""
    if isinstance(e, Const):
        return -1
    if isinstance(e, Var):
        return e.slot
    if isinstance(e, (Add, Sub, Mul, Div)):
        return max(max_slot(e.lhs), max_slot(e.rhs))
    if isinstance(e, Neg):
        return max_slot(e.arg)
    if isinstance(e, Pow):
        return max_slot(e.base)
    if isinstance(e, Fun):
        return max_slot(e.arg)
    raise TypeError(f"not an expression node: {e!r}")


# --- serialization ---------------------------------------------------------

_PREC_ADD = 1
_PREC_MUL = 2
_PREC_NEG = 3
_PREC_POW = 4
_PREC_ATOM = 9


def serialize(e: ScalarExpr) -> str:
    """Canonical infix text; parse(serialize(e)) == e for parser output
    and for anything the smart constructors build."""
    return _ser(e)[0]


def _ser(e: ScalarExpr) -> tuple[str, int]:
    if isinstance(e, Const):
        v = e.value
        if isinstance(v, Fraction):
            if v.denominator == 1:
                return str(v.numerator), _PREC_ATOM if v >= 0 else _PREC_NEG
            # rational literal: reparses via the int/int fold
            return f"{v.numerator}/{v.denominator}", _PREC_MUL
        return repr(v), _PREC_ATOM if v >= 0 else _PREC_NEG
    if isinstance(e, Var):
        return f"x{e.slot + 1}", _PREC_ATOM
    if isinstance(e, Add):
        return f"{_left(e.lhs, _PREC_ADD)} + {_right(e.rhs, _PREC_ADD)}", _PREC_ADD
    if isinstance(e, Sub):
        return f"{_left(e.lhs, _PREC_ADD)} - {_right(e.rhs, _PREC_ADD)}", _PREC_ADD
    if isinstance(e, Mul):
        return f"{_left(e.lhs, _PREC_MUL)} * {_right(e.rhs, _PREC_MUL)}", _PREC_MUL
    if isinstance(e, Div):
        return f"{_left(e.lhs, _PREC_MUL)} / {_right(e.rhs, _PREC_MUL)}", _PREC_MUL
    if isinstance(e, Neg):
        text, prec = _ser(e.arg)
        if prec < _PREC_NEG:
            text = f"({text})"
        return f"-{text}", _PREC_NEG
    if isinstance(e, Pow):
        text, prec = _ser(e.base)
        if prec <= _PREC_POW:
            text = f"({text})"
        k = e.exponent
        return (f"{text}^{k}" if k >= 0 else f"{text}^(-{-k})"), _PREC_POW
    if isinstance(e, Fun):
        return f"{e.name}({_ser(e.arg)[0]})", _PREC_ATOM
    raise TypeError(f"not an expression node: {e!r}")


def _left(e: ScalarExpr, op_prec: int) -> str:
    text, prec = _ser(e)
    return f"({text})" if prec < op_prec else text


def _right(e: ScalarExpr, op_prec: int) -> str:
    text, prec = _ser(e)
    return f"({text})" if prec <= op_prec else text


# --- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"(?P<num>\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?"
    r"|\d+[eE][+-]?\d+|\d+)"
    r"|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
    r"|(?P<op>[-+*/^(),])"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self):
        return self.tokens[self.idx]

    def next(self):
        tok = self.tokens[self.idx]
        self.idx += 1
        return tok

    def expect_op(self, op: str):
        kind, text, pos = self.peek()
        if kind != "op" or text != op:
            got = repr(text) if kind != "end" else "end of input"
            raise ParseError(f"expected {op!r}, got {got}", pos)
        return self.next()

    def at_op(self, *ops) -> bool:
        kind, text, _ = self.peek()
        return kind == "op" and text in ops

    def parse(self) -> ScalarExpr:
        e = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {text!r} after expression", pos)
        return e

    def expr(self) -> ScalarExpr:
        e = self.term()
        while self.at_op("+", "-"):
            op = self.next()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> ScalarExpr:
        e = self.unary()
        while self.at_op("*", "/"):
            op = self.next()[1]
            rhs = self.unary()
            if op == "*":
                e = Mul(e, rhs)
            elif (
                isinstance(e, Const) and isinstance(rhs, Const)
                and isinstance(e.value, Fraction) and isinstance(rhs.value, Fraction)
                and rhs.value != 0
            ):
                e = Const(e.value / rhs.value)  # rational literal
            else:
                e = Div(e, rhs)
        return e

    def unary(self) -> ScalarExpr:
        if self.at_op("-"):
            self.next()
            inner = self.unary()
            if isinstance(inner, Const):
                return Const(-inner.value)
            return Neg(inner)
        return self.power()

    def power(self) -> ScalarExpr:
        e = self.atom()
        while self.at_op("^"):
            self.next()
            e = Pow(e, self.int_exponent())
        return e

    def int_exponent(self) -> int:
        paren = self.at_op("(")
        if paren:
            self.next()
        sign = 1
        if self.at_op("-"):
            self.next()
            sign = -1
        kind, text, pos = self.peek()
        if kind != "num" or any(c in text for c in ".eE"):
            raise ParseError("exponent must be an integer literal", pos)
        self.next()
        if paren:
            self.expect_op(")")
        return sign * int(text)

    def atom(self) -> ScalarExpr:
        kind, text, pos = self.next()
        if kind == "num":
            if any(c in text for c in ".eE"):
                return Const(float(text))
            return Const(Fraction(int(text)))
        if kind == "name":
            if self.at_op("("):
                return self.call(text, pos)
            i = VARIABLE_NAMES.get(text)
            if i is None:
                raise ParseError(f"unknown variable {text!r}", pos)
            return Var(i - 1)
        if kind == "op" and text == "(":
            e = self.expr()
            self.expect_op(")")
            return e
        got = repr(text) if kind != "end" else "end of input"
        raise ParseError(f"expected a value, got {got}", pos)

    def call(self, name: str, name_pos: int) -> ScalarExpr:
        if name not in FUNCTIONS:
            raise ParseError(f"unknown function {name!r}", name_pos)
        self.expect_op("(")
        args = [self.expr()]
        while self.at_op(","):
            self.next()
            args.append(self.expr())
        self.expect_op(")")
        if len(args) != 1:
            raise ArityError(
                f"{name} takes 1 argument, got {len(args)}", name_pos
            )
        return Fun(name, args[0])


def parse(text: str) -> ScalarExpr:
    """Parse expression text into a ScalarExpr."""
    if not isinstance(text, str):
        raise TypeError("expression source must be a string")
    return _Parser(text).parse()
