"""Closed-form scalar expressions: parse, print, differentiate, evaluate.

Grammar (EBNF in docs/grammar.md):

    expr  := term (("+" | "-") term)*
    term  := unary (("*" | "/") unary)*
    unary := "-" unary | power
    power := atom ("^" unary)?
    atom  := NUMBER | NAME | NAME "(" expr ")" | "(" expr ")"
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Mapping, Optional, Union

from .exceptions import (
    DivisionByZeroConstantTermError,
    DomainError,
    JetOrderError,
    ParseError,
    UnboundVariableError,
    UnsupportedNodeError,
)
from .jets import Jet, jet_elementary

FUNCTIONS = ("sin", "cos", "sinh", "cosh", "tan", "exp", "log", "sqrt")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    func: str
    arg: "Expr"


Expr = Union[Num, Var, Neg, BinOp, Call]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

TOKEN_RE = re.compile(r"""
    (?P<NUMBER>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<NAME>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<OP>[-+*/^()])
  | (?P<WS>\s+)
  | (?P<MISMATCH>.)
""", re.VERBOSE)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


def tokenize(text: str) -> List[Token]:
    tokens = []
    for match in TOKEN_RE.finditer(text):
        kind = match.lastgroup
        if kind == "WS":
            continue
        offset = _byte_offset(text, match.start())
        if kind == "MISMATCH":
            raise ParseError(offset, "a number, name, operator or parenthesis", repr(match.group()))
        tokens.append(Token(kind, match.group(), offset))
    tokens.append(Token("END", "", _byte_offset(text, len(text))))
    return tokens


def _describe(token: Token) -> str:
    return "end of input" if token.kind == "END" else repr(token.text)


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _accept(self, text: str) -> bool:
        if self.current.kind == "OP" and self.current.text == text:
            self.pos += 1
            return True
        return False

    def _expect(self, text: str) -> None:
        if not self._accept(text):
            raise ParseError(self.current.offset, repr(text), _describe(self.current))

    def parse(self) -> Expr:
        node = self.expr()
        if self.current.kind != "END":
            raise ParseError(self.current.offset, "an operator or end of input", _describe(self.current))
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.current.kind == "OP" and self.current.text in "+-":
            op = self.current.text
            self.pos += 1
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.current.kind == "OP" and self.current.text in "*/":
            op = self.current.text
            self.pos += 1
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Expr:
        if self._accept("-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self._accept("^"):
            return BinOp("^", base, self.unary())
        return base

    def atom(self) -> Expr:
        token = self.current
        if token.kind == "NUMBER":
            self.pos += 1
            return Num(float(token.text))
        if token.kind == "NAME":
            self.pos += 1
            if self.current.kind == "OP" and self.current.text == "(":
                if token.text not in FUNCTIONS:
                    raise ParseError(token.offset, f"one of {', '.join(FUNCTIONS)}", repr(token.text))
                self.pos += 1
                arg = self.expr()
                self._expect(")")
                return Call(token.text, arg)
            return Var(token.text)
        if self._accept("("):
            node = self.expr()
            self._expect(")")
            return node
        raise ParseError(token.offset, "a number, name or '('", _describe(token))


def parse(text: str) -> Expr:
    """Parse expression text into an AST.

    Args:
        text: Expression source

    Returns:
        The root node

    Raises:
        ParseError: With the byte offset of the first offending token
    """
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "^": 4}
_NEG_PREC = 3
_ATOM_PREC = 5


def _prec(node: Expr) -> int:
    if isinstance(node, BinOp):
        return _PRECEDENCE[node.op]
    if isinstance(node, Neg):
        return _NEG_PREC
    if isinstance(node, Num) and node.value < 0:
        return _NEG_PREC
    return _ATOM_PREC


def _format_number(value: float) -> str:
    if value.is_integer() and abs(value) < 1e15:
        return str(int(value))
    return repr(value)


def to_text(node: Expr) -> str:
    """Print an AST so that parse(to_text(e)) == e for parsed trees."""
    match node:
        case Num(value):
            if value < 0:
                return f"-{_format_number(-value)}"
            return _format_number(value)
        case Var(name):
            return name
        case Call(func, arg):
            return f"{func}({to_text(arg)})"
        case Neg(operand):
            inner = to_text(operand)
            return f"-{inner}" if _prec(operand) >= _NEG_PREC else f"-({inner})"
        case BinOp("^", left, right):
            lhs = to_text(left)
            rhs = to_text(right)
            if _prec(left) < _ATOM_PREC:
                lhs = f"({lhs})"
            if _prec(right) < _NEG_PREC:
                rhs = f"({rhs})"
            return f"{lhs}^{rhs}"
        case BinOp(op, left, right):
            p = _PRECEDENCE[op]
            lhs = to_text(left)
            rhs = to_text(right)
            if _prec(left) < p:
                lhs = f"({lhs})"
            if _prec(right) <= p:
                rhs = f"({rhs})"
            return f"{lhs} {op} {rhs}"
    raise UnsupportedNodeError(f"cannot print node {node!r}")


# ---------------------------------------------------------------------------
# Structure
# ---------------------------------------------------------------------------

def variables(node: Expr) -> FrozenSet[str]:
    match node:
        case Num():
            return frozenset()
        case Var(name):
            return frozenset({name})
        case Neg(operand):
            return variables(operand)
        case Call(_, arg):
            return variables(arg)
        case BinOp(_, left, right):
            return variables(left) | variables(right)
    raise UnsupportedNodeError(f"unknown node {node!r}")


def substitute(node: Expr, values: Mapping[str, float]) -> Expr:
    """Replace named variables by numeric literals."""
    match node:
        case Num():
            return node
        case Var(name):
            return Num(float(values[name])) if name in values else node
        case Neg(operand):
            return Neg(substitute(operand, values))
        case Call(func, arg):
            return Call(func, substitute(arg, values))
        case BinOp(op, left, right):
            return BinOp(op, substitute(left, values), substitute(right, values))
    raise UnsupportedNodeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Differentiation (0/1 folding only)
# ---------------------------------------------------------------------------

ZERO = Num(0.0)
ONE = Num(1.0)


def _is(node: Expr, value: float) -> bool:
    return isinstance(node, Num) and node.value == value


def _add(a: Expr, b: Expr) -> Expr:
    if _is(a, 0.0):
        return b
    if _is(b, 0.0):
        return a
    return BinOp("+", a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is(b, 0.0):
        return a
    if _is(a, 0.0):
        return _neg(b)
    return BinOp("-", a, b)


def _neg(a: Expr) -> Expr:
    if _is(a, 0.0):
        return ZERO
    if isinstance(a, Neg):
        return a.operand
    return Neg(a)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is(a, 0.0) or _is(b, 0.0):
        return ZERO
    if _is(a, 1.0):
        return b
    if _is(b, 1.0):
        return a
    return BinOp("*", a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is(a, 0.0):
        return ZERO
    if _is(b, 1.0):
        return a
    return BinOp("/", a, b)


def _pow(a: Expr, b: Expr) -> Expr:
    if _is(b, 1.0):
        return a
    if _is(b, 0.0):
        return ONE
    return BinOp("^", a, b)


_CHAIN: Dict[str, Callable[[Expr], Expr]] = {
    "sin": lambda a: Call("cos", a),
    "cos": lambda a: _neg(Call("sin", a)),
    "sinh": lambda a: Call("cosh", a),
    "cosh": lambda a: Call("sinh", a),
    "tan": lambda a: _div(ONE, _pow(Call("cos", a), Num(2.0))),
    "exp": lambda a: Call("exp", a),
    "log": lambda a: _div(ONE, a),
    "sqrt": lambda a: _div(ONE, _mul(Num(2.0), Call("sqrt", a))),
}


def diff(node: Expr, var: str) -> Expr:
    """Symbolic partial derivative with respect to ``var``.

    Raises:
        UnsupportedNodeError: For node types outside the grammar
    """
    match node:
        case Num():
            return ZERO
        case Var(name):
            return ONE if name == var else ZERO
        case Neg(operand):
            return _neg(diff(operand, var))
        case BinOp("+", left, right):
            return _add(diff(left, var), diff(right, var))
        case BinOp("-", left, right):
            return _sub(diff(left, var), diff(right, var))
        case BinOp("*", left, right):
            return _add(_mul(diff(left, var), right), _mul(left, diff(right, var)))
        case BinOp("/", left, right):
            numerator = _sub(_mul(diff(left, var), right), _mul(left, diff(right, var)))
            return _div(numerator, _pow(right, Num(2.0)))
        case BinOp("^", left, right):
            if var not in variables(right):
                exponent = Num(right.value - 1.0) if isinstance(right, Num) else _sub(right, ONE)
                return _mul(_mul(right, _pow(left, exponent)), diff(left, var))
            # d(a^b) = a^b (b' log a + b a'/a)
            inner = _add(_mul(diff(right, var), Call("log", left)),
                         _div(_mul(right, diff(left, var)), left))
            return _mul(node, inner)
        case Call(func, arg):
            if func not in _CHAIN:
                raise UnsupportedNodeError(f"no derivative rule for '{func}'")
            return _mul(_CHAIN[func](arg), diff(arg, var))
    raise UnsupportedNodeError(f"unknown node {node!r}")


# ---------------------------------------------------------------------------
# Evaluation
# ---------------------------------------------------------------------------

def _binding_order(bindings: Mapping[str, Union[Jet, float]], order: Optional[int]) -> int:
    orders = {value.order for value in bindings.values() if isinstance(value, Jet)}
    if len(orders) > 1:
        raise JetOrderError(f"bound jets have different orders {sorted(orders)}")
    if orders:
        return orders.pop()
    return 0 if order is None else order


def eval_jet(node: Expr, bindings: Mapping[str, Union[Jet, float]], order: Optional[int] = None) -> Jet:
    """Evaluate an expression on jet-valued bindings.

    Float bindings are treated as constant jets. ``order`` is only used when
    no binding is a jet.

    Raises:
        UnboundVariableError: If a variable has no binding
        DomainError: Propagated from elementary functions and powers
    """
    k = _binding_order(bindings, order)

    def walk(n: Expr) -> Jet:
        match n:
            case Num(value):
                return Jet.constant(value, k)
            case Var(name):
                if name not in bindings:
                    raise UnboundVariableError(name)
                value = bindings[name]
                return value if isinstance(value, Jet) else Jet.constant(float(value), k)
            case Neg(operand):
                return -walk(operand)
            case BinOp("+", left, right):
                return walk(left) + walk(right)
            case BinOp("-", left, right):
                return walk(left) - walk(right)
            case BinOp("*", left, right):
                return walk(left) * walk(right)
            case BinOp("/", left, right):
                return walk(left) / walk(right)
            case BinOp("^", left, right):
                base = walk(left)
                exponent = walk(right)
                if exponent.is_constant() and float(exponent.value).is_integer():
                    return base ** int(exponent.value)
                if base.value <= 0.0:
                    raise DomainError(f"power with non-integer exponent of base {base.value}")
                return base ** exponent
            case Call(func, arg):
                return jet_elementary(walk(arg), func)
        raise UnsupportedNodeError(f"unknown node {n!r}")

    return walk(node)


def _checked_log(x: float) -> float:
    if x <= 0.0:
        raise DomainError(f"log of {x}")
    return math.log(x)


def _checked_sqrt(x: float) -> float:
    if x < 0.0:
        raise DomainError(f"sqrt of {x}")
    return math.sqrt(x)


_SCALAR_FUNCS: Dict[str, Callable[[float], float]] = {
    "sin": math.sin,
    "cos": math.cos,
    "sinh": math.sinh,
    "cosh": math.cosh,
    "tan": math.tan,
    "exp": math.exp,
    "log": _checked_log,
    "sqrt": _checked_sqrt,
}


def _scalar_div(a: float, b: float) -> float:
    if b == 0.0:
        raise DivisionByZeroConstantTermError("division by zero")
    return a / b


def _scalar_pow(a: float, b: float) -> float:
    if not float(b).is_integer() and a <= 0.0:
        raise DomainError(f"power with non-integer exponent of base {a}")
    return a ** b


_SCALAR_OPS: Dict[str, Callable[[float, float], float]] = {
    "+": lambda a, b: a + b,
    "-": lambda a, b: a - b,
    "*": lambda a, b: a * b,
    "/": _scalar_div,
    "^": _scalar_pow,
}


def compile_scalar(node: Expr) -> Callable[[Mapping[str, float]], float]:
    """Build a closure evaluating the expression on float bindings."""
    match node:
        case Num(value):
            return lambda env: value
        case Var(name):
            def lookup(env):
                if name not in env:
                    raise UnboundVariableError(name)
                return env[name]
            return lookup
        case Neg(operand):
            inner = compile_scalar(operand)
            return lambda env: -inner(env)
        case BinOp(op, left, right):
            fn = _SCALAR_OPS[op]
            lhs = compile_scalar(left)
            rhs = compile_scalar(right)
            return lambda env: fn(lhs(env), rhs(env))
        case Call(func, arg):
            fn = _SCALAR_FUNCS[func]
            inner = compile_scalar(arg)
            return lambda env: fn(inner(env))
    raise UnsupportedNodeError(f"unknown node {node!r}")


def eval_scalar(node: Expr, bindings: Mapping[str, float]) -> float:
    return float(compile_scalar(node)(bindings))
