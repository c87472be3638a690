"""Complex-valued expressions in a single free variable.

Grammar (whitespace-insensitive, no implicit multiplication)::

    expr    = term , { ("+" | "-") , term } ;
    term    = factor , { ("*" | "/") , factor } ;
    factor  = "-" , factor | power ;
    power   = primary , [ "^" , factor ] ;
    primary = number | constant | variable
            | function , "(" , expr , ")"
            | "(" , expr , ")" ;
    constant = "pi" | "e" | "i" ;
    function = "sin" | "cos" | "exp" | "log" | "abs" | "sqrt" | "re" | "im" | "conj" ;

``^`` binds tighter than unary minus (``-2^2 == -4``) and is right-associative;
the exponent may itself carry a unary minus (``2^-1``).

Evaluation is vectorised over numpy arrays so that generator symbols can be
sampled at a million indices cheaply.  Integer-valued exponents are computed
by repeated squaring, which keeps ``(-1)^n`` exactly ``+-1``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator, Union

import numpy as np

from .errors import DomainError, ExprSyntaxError, UnknownIdentifier

CONSTANTS = {"pi": math.pi, "e": math.e, "i": 1j}
FUNCTIONS = ("sin", "cos", "exp", "log", "abs", "sqrt", "re", "im", "conj")
RESERVED = frozenset(CONSTANTS) | frozenset(FUNCTIONS)

# Largest magnitude for which a float exponent is treated as an exact integer.
_EXACT_INT_LIMIT = 2.0**53


@dataclass(frozen=True)
class Num:
    value: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.value) and self.value >= 0):
            raise ValueError(f"numeric literal must be finite and non-negative, got {self.value!r}")


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Pow:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Const, Neg, Add, Sub, Mul, Div, Pow, Call]

_BINARY = {"+": Add, "-": Sub, "*": Mul, "/": Div, "^": Pow}
_SYMBOL_OF = {cls: sym for sym, cls in _BINARY.items()}


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "num", "ident", "op", "end"
    text: str
    pos: int  # 0-based


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos + 1, text)
        if m.lastgroup != "ws":
            tokens.append(_Token(m.lastgroup, m.group(), pos))
        pos = m.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# ---------------------------------------------------------------------------
# Parser


class _Parser:
    def __init__(self, text: str, var_name: str | None) -> None:
        self.text = text
        self.var_name = var_name
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None) -> ExprSyntaxError:
        tok = tok or self.tok
        return ExprSyntaxError(message, tok.pos + 1, self.text)

    def accept(self, op: str) -> bool:
        if self.tok.kind == "op" and self.tok.text == op:
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> None:
        if not self.accept(op):
            found = "end of input" if self.tok.kind == "end" else repr(self.tok.text)
            raise self.error(f"expected {op!r}, found {found}")

    def parse(self) -> Expr:
        node = self.expr()
        if self.tok.kind != "end":
            raise self.error(f"unexpected token {self.tok.text!r}")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.tok.text
            self.i += 1
            node = _BINARY[op](node, self.term())
        return node

    def term(self) -> Expr:
        node = self.factor()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.tok.text
            self.i += 1
            node = _BINARY[op](node, self.factor())
        return node

    def factor(self) -> Expr:
        if self.accept("-"):
            return Neg(self.factor())
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.accept("^"):
            return Pow(base, self.factor())
        return base

    def primary(self) -> Expr:
        tok = self.tok
        if tok.kind == "num":
            self.i += 1
            return Num(float(tok.text))
        if tok.kind == "ident":
            self.i += 1
            name = tok.text
            if name in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            if name in CONSTANTS:
                return Const(name)
            if name == self.var_name:
                return Var(name)
            raise UnknownIdentifier(name, tok.pos + 1, self.text)
        if self.accept("("):
            node = self.expr()
            self.expect(")")
            return node
        if tok.kind == "end":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {tok.text!r}")


def parse(text: str, var_name: str | None = "x") -> Expr:
    """Parse ``text`` into an expression tree.

    ``var_name`` is the only identifier accepted as a free variable; pass
    ``None`` for a constant expression.  Errors carry 1-based offsets.
    """
    if var_name is not None and var_name in RESERVED:
        raise ValueError(f"variable name {var_name!r} collides with a reserved name")
    if not text or not text.strip():
        raise ExprSyntaxError("empty expression", 1, text)
    return _Parser(text, var_name).parse()


# ---------------------------------------------------------------------------
# Printing


def to_text(node: Expr) -> str:
    """Serialise so that ``parse(to_text(e)) == e``.

    Binary nodes are fully parenthesised; negation is wrapped as ``(-x)``.
    """
    match node:
        case Num(value):
            return repr(value)
        case Var(name) | Const(name):
            return name
        case Neg(operand):
            return f"(-{to_text(operand)})"
        case Call(func, arg):
            return f"{func}({to_text(arg)})"
        case _:
            sym = _SYMBOL_OF[type(node)]
            return f"({to_text(node.left)} {sym} {to_text(node.right)})"


def walk(node: Expr) -> Iterator[Expr]:
    yield node
    match node:
        case Neg(operand) | Call(_, operand):
            yield from walk(operand)
        case Add() | Sub() | Mul() | Div() | Pow():
            yield from walk(node.left)
            yield from walk(node.right)


def free_variables(node: Expr) -> set[str]:
    return {n.name for n in walk(node) if isinstance(n, Var)}


def complex_literal(z: complex) -> Expr:
    """Build an expression tree that evaluates exactly to ``z``."""
    z = complex(z)

    def real(x: float) -> Expr:
        return Neg(Num(-x)) if math.copysign(1.0, x) < 0 else Num(x)

    if z.imag == 0:
        return real(z.real)
    imag = Mul(Num(abs(z.imag)), Const("i"))
    if z.real == 0:
        return Neg(imag) if z.imag < 0 else imag
    return (Sub if z.imag < 0 else Add)(real(z.real), imag)


# ---------------------------------------------------------------------------
# Evaluation


def _principal(v: np.ndarray) -> np.ndarray:
    # Adding +0 clears negative-zero imaginary parts, so values on the
    # negative real axis land on the principal side of the branch cut.
    return v + 0.0


def _int_power(base: np.ndarray, k: np.ndarray) -> np.ndarray:
    """base**k for integer arrays k >= 0 by repeated squaring."""
    result = np.ones(np.broadcast(base, k).shape, dtype=complex)
    b = np.broadcast_to(base, result.shape).astype(complex)
    k = np.broadcast_to(k, result.shape).astype(np.int64)
    while np.any(k > 0):
        odd = (k & 1).astype(bool)
        result = np.where(odd, result * b, result)
        k = k >> 1
        b = b * b
    return result


def _power(base: np.ndarray, expo: np.ndarray) -> np.ndarray:
    base, expo = np.broadcast_arrays(base, expo)
    out = np.empty(base.shape, dtype=complex)
    ints = (expo.imag == 0) & np.isfinite(expo.real) & (np.abs(expo.real) < _EXACT_INT_LIMIT)
    ints &= expo.real == np.floor(expo.real)

    if np.any(ints):
        k = expo.real[ints].astype(np.int64)
        b = base[ints]
        neg = k < 0
        if np.any(neg & (b == 0)):
            raise DomainError("zero raised to a negative power")
        val = _int_power(b, np.abs(k))
        val[neg] = 1.0 / val[neg]
        out[ints] = val

    rest = ~ints
    if np.any(rest):
        b = _principal(base[rest])
        w = expo[rest]
        zero = b == 0
        if np.any(zero & (w.real <= 0)):
            raise DomainError("zero raised to a power with non-positive real part")
        val = np.zeros(b.shape, dtype=complex)
        nz = ~zero
        val[nz] = np.exp(w[nz] * np.log(b[nz]))
        out[rest] = val
    return out


def _eval(node: Expr, x: np.ndarray) -> np.ndarray:
    match node:
        case Num(value):
            return np.asarray(complex(value))
        case Const(name):
            return np.asarray(complex(CONSTANTS[name]))
        case Var():
            return x
        case Neg(operand):
            return -_eval(operand, x)
        case Add(left, right):
            return _eval(left, x) + _eval(right, x)
        case Sub(left, right):
            return _eval(left, x) - _eval(right, x)
        case Mul(left, right):
            return _eval(left, x) * _eval(right, x)
        case Div(left, right):
            num, den = _eval(left, x), _eval(right, x)
            if np.any(den == 0):
                raise DomainError("division by zero")
            return num / den
        case Pow(left, right):
            return _power(_eval(left, x), _eval(right, x))
        case Call(func, arg):
            v = _eval(arg, x)
            if func == "log":
                if np.any(v == 0):
                    raise DomainError("log(0)")
                return np.log(_principal(v))
            if func == "abs":
                return np.abs(v).astype(complex)
            if func == "re":
                return np.real(v).astype(complex)
            if func == "im":
                return np.imag(v).astype(complex)
            if func == "conj":
                return np.conj(v)
            if func == "sqrt":
                return np.sqrt(_principal(v))
            return getattr(np, func)(v)
    raise TypeError(f"not an expression node: {node!r}")


def evaluate_array(node: Expr, values) -> np.ndarray:
    """Evaluate ``node`` at every entry of ``values``; returns a complex array."""
    x = np.asarray(values, dtype=complex)
    with np.errstate(all="ignore"):
        out = _eval(node, x)
    return np.broadcast_to(out, x.shape).astype(complex)


def evaluate(node: Expr, value: complex = 0.0) -> complex:
    """Evaluate ``node`` at a single point."""
    return complex(evaluate_array(node, np.array([value]))[0])
