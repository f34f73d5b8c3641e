"""Height-function expressions with exact first and second derivatives.

Grammar (precedence low to high)::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := '-' unary | power
    power := atom ('^' unary)?          # right associative
    atom  := NUMBER | 'x1' | 'x2' | FUNC '(' expr ')' | '(' expr ')'

Evaluation uses second-order forward-mode jets. Jet components may be
floats or numpy arrays, so a whole grid can be evaluated in one pass.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ExprError

FUNCTIONS = ("exp", "sin", "cos", "sqrt", "ln")
VARIABLES = ("x1", "x2")


@dataclass(frozen=True)
class Num:
    value: float


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "Node"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Call:
    fn: str
    arg: "Node"


Node = Union[Num, Var, Neg, Bin, Call]

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<id>[A-Za-z_]\w*)|(?P<op>[-+*/^(),]))"
)


def _tokenize(src: str):
    toks = []
    pos = 0
    n = len(src)
    while pos < n:
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            if src[pos:].strip() == "":
                break
            off = pos + len(src[pos:]) - len(src[pos:].lstrip())
            raise ExprError(f"unexpected character {src[off]!r}", _byte_off(src, off))
        kind = m.lastgroup
        start = m.start(kind)
        toks.append((kind, m.group(kind), _byte_off(src, start)))
        pos = m.end()
    toks.append(("end", "", len(src.encode())))
    return toks


def _byte_off(src, i):
    return len(src[:i].encode())


class _Parser:
    def __init__(self, src):
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, val):
        t = self.take()
        if t[1] != val:
            what = "end of input" if t[0] == "end" else repr(t[1])
            raise ExprError(f"expected {val!r}, found {what}", t[2])
        return t

    def parse(self):
        node = self.expr()
        t = self.peek()
        if t[0] != "end":
            raise ExprError(f"unexpected token {t[1]!r}", t[2])
        return node

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            node = Bin(op, node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] in ("*", "/"):
            op = self.take()[1]
            node = Bin(op, node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            return Bin("^", base, self.unary())
        return base

    def atom(self):
        kind, val, off = self.take()
        if kind == "num":
            return Num(float(val))
        if kind == "id":
            if val in VARIABLES:
                return Var(val)
            if val in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                t = self.peek()
                if t[1] == ",":
                    raise ExprError(f"{val} takes exactly one argument", t[2])
                self.expect(")")
                return Call(val, arg)
            raise ExprError(f"unknown identifier {val!r}", off)
        if val == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "end" else repr(val)
        raise ExprError(f"unexpected {what}", off)


def parse(source: str) -> Node:
    if not source or not source.strip():
        raise ExprError("empty expression", 0)
    return _Parser(source).parse()


def to_source(node: Node) -> str:
    """Fully parenthesized text that parses back to the same tree."""
    if isinstance(node, Num):
        return repr(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        return f"(-{to_source(node.arg)})"
    if isinstance(node, Call):
        return f"{node.fn}({to_source(node.arg)})"
    return f"({to_source(node.left)} {node.op} {to_source(node.right)})"


def _has_var(node):
    if isinstance(node, Var):
        return True
    if isinstance(node, Num):
        return False
    if isinstance(node, (Neg, Call)):
        return _has_var(node.arg)
    return _has_var(node.left) or _has_var(node.right)


class Jet2:
    """Value, gradient and Hessian (stored as h11, h12, h22) of a function of (x1, x2)."""

    __slots__ = ("v", "g1", "g2", "h11", "h12", "h22")

    def __init__(self, v, g1=0.0, g2=0.0, h11=0.0, h12=0.0, h22=0.0):
        self.v = v
        self.g1 = g1
        self.g2 = g2
        self.h11 = h11
        self.h12 = h12
        self.h22 = h22

    @property
    def value(self):
        return self.v

    @property
    def grad(self):
        return (self.g1, self.g2)

    @property
    def hess(self):
        return ((self.h11, self.h12), (self.h12, self.h22))

    def astuple(self):
        return (self.v, self.g1, self.g2, self.h11, self.h12, self.h22)

    def __repr__(self):
        return f"Jet2(value={self.v!r}, grad={self.grad!r}, hess={self.hess!r})"

    def __add__(self, o):
        return Jet2(self.v + o.v, self.g1 + o.g1, self.g2 + o.g2,
                    self.h11 + o.h11, self.h12 + o.h12, self.h22 + o.h22)

    def __sub__(self, o):
        return Jet2(self.v - o.v, self.g1 - o.g1, self.g2 - o.g2,
                    self.h11 - o.h11, self.h12 - o.h12, self.h22 - o.h22)

    def __neg__(self):
        return Jet2(-self.v, -self.g1, -self.g2, -self.h11, -self.h12, -self.h22)

    def __mul__(self, o):
        a, b = self, o
        return Jet2(a.v * b.v,
                    a.g1 * b.v + a.v * b.g1,
                    a.g2 * b.v + a.v * b.g2,
                    a.h11 * b.v + 2.0 * a.g1 * b.g1 + a.v * b.h11,
                    a.h12 * b.v + a.g1 * b.g2 + a.g2 * b.g1 + a.v * b.h12,
                    a.h22 * b.v + 2.0 * a.g2 * b.g2 + a.v * b.h22)

    def chain(self, d0, d1, d2):
        """Compose with a scalar function having value d0 and derivatives d1, d2."""
        return Jet2(d0, d1 * self.g1, d1 * self.g2,
                    d1 * self.h11 + d2 * self.g1 * self.g1,
                    d1 * self.h12 + d2 * self.g1 * self.g2,
                    d1 * self.h22 + d2 * self.g2 * self.g2)


def _lib(x):
    return np if isinstance(x, np.ndarray) else math


def _any(cond):
    return bool(np.any(cond))


def _recip(u, node):
    if _any(u.v == 0):
        raise DomainError(f"division by zero in {to_source(node)}")
    inv = 1.0 / u.v
    return u.chain(inv, -inv * inv, 2.0 * inv * inv * inv)


def _pow_const(u, c, node):
    lib = _lib(u.v)
    v = u.v
    if c == 0.0:
        return Jet2(v * 0.0 + 1.0, v * 0.0, v * 0.0, v * 0.0, v * 0.0, v * 0.0)
    if c == 1.0:
        return u
    if c == 2.0:
        return u * u
    integer = float(c).is_integer()
    if not integer and _any(v < 0):
        raise DomainError(f"negative base with non-integer exponent in {to_source(node)}")
    if _any(v == 0) and c < 2.0:
        raise DomainError(f"derivative undefined at zero base in {to_source(node)}")
    if lib is math:
        p2 = v ** (c - 2.0)
    else:
        p2 = np.power(v, c - 2.0)
    p1 = p2 * v
    return u.chain(p1 * v, c * p1, c * (c - 1.0) * p2)


def _call(fn, u, node):
    lib = _lib(u.v)
    v = u.v
    if fn == "exp":
        e = lib.exp(v)
        return u.chain(e, e, e)
    if fn == "sin":
        s, c = lib.sin(v), lib.cos(v)
        return u.chain(s, c, -s)
    if fn == "cos":
        s, c = lib.sin(v), lib.cos(v)
        return u.chain(c, -s, -c)
    if fn == "sqrt":
        if _any(v < 0):
            raise DomainError(f"sqrt of negative value in {to_source(node)}")
        if _any(v == 0):
            raise DomainError(f"sqrt derivative undefined at zero in {to_source(node)}")
        r = lib.sqrt(v)
        return u.chain(r, 0.5 / r, -0.25 / (r * v))
    if fn == "ln":
        if _any(v <= 0):
            raise DomainError(f"ln of non-positive value in {to_source(node)}")
        return u.chain(lib.log(v), 1.0 / v, -1.0 / (v * v))
    raise ExprError(f"unknown function {fn!r}")


def _eval(node, x1, x2):
    if isinstance(node, Num):
        z = x1 * 0.0
        return Jet2(z + node.value, z, z, z, z, z)
    if isinstance(node, Var):
        z = x1 * 0.0
        if node.name == "x1":
            return Jet2(x1 + z, z + 1.0, z, z, z, z)
        return Jet2(x2 + z, z, z + 1.0, z, z, z)
    if isinstance(node, Neg):
        return -_eval(node.arg, x1, x2)
    if isinstance(node, Call):
        return _call(node.fn, _eval(node.arg, x1, x2), node)
    a = _eval(node.left, x1, x2)
    if node.op == "^" and not _has_var(node.right):
        c = _eval(node.right, 0.0, 0.0).v
        return _pow_const(a, c, node)
    b = _eval(node.right, x1, x2)
    if node.op == "+":
        return a + b
    if node.op == "-":
        return a - b
    if node.op == "*":
        return a * b
    if node.op == "/":
        return a * _recip(b, node)
    # u^v = exp(v ln u) for a variable exponent
    if _any(a.v <= 0):
        raise DomainError(f"non-positive base with variable exponent in {to_source(node)}")
    return _call("exp", b * _call("ln", a, node), node)


def eval_jet2(e: Node, x1, x2) -> Jet2:
    """Jet of ``e`` at (x1, x2). Scalars give float components, arrays broadcast."""
    if isinstance(x1, np.ndarray) or isinstance(x2, np.ndarray):
        x1, x2 = np.broadcast_arrays(np.asarray(x1, float), np.asarray(x2, float))
    else:
        x1, x2 = float(x1), float(x2)
        if not (math.isfinite(x1) and math.isfinite(x2)):
            raise DomainError("evaluation point must be finite")
    return _eval(e, x1, x2)
