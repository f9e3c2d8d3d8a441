"""Set-expression trees over F_p subsets, with a small text grammar.

    expr    := term (('+' | '-') term)*
    term    := prefix (('*' | '/') prefix)*
    prefix  := INT '·' prefix      dilation, e.g. 3·A   (ASCII '.' also accepted)
             | INT prefix          iterated sumset, e.g. 2A = A + A
             | postfix
    postfix := primary ('^' INT)*  iterated product set, e.g. (A-A)^2
    primary := NAME | '(' expr ')'

'2A' and '2·A' differ: the first is A+A, the second {2a}. A scalar may be
negative only in dilations ('-1·A'). '^{k}' is accepted alongside '^k', and
the unicode minus is normalized, so printed set algebra pastes back in.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Union

from fplab.errors import FormatError, UnboundVariable
from fplab.setalg import (
    FpSet,
    difference_set,
    dilate,
    fold_prod,
    fold_sum,
    product_set,
    quotient_set,
    sumset,
)


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class BinOp:
    op: str  # one of + - * /
    left: "SetExpr"
    right: "SetExpr"


@dataclass(frozen=True)
class Dilate:
    scalar: int
    inner: "SetExpr"


@dataclass(frozen=True)
class Fold:
    k: int
    op: str  # '+' for iterated sumset, '*' for iterated product
    inner: "SetExpr"


SetExpr = Union[Var, BinOp, Dilate, Fold]


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = text.replace("−", "-").replace(".", "·")
    toks: list[tuple[str, str]] = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(("INT", text[i:j]))
            i = j
        elif c.isalpha() or c == "_":
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("NAME", text[i:j]))
            i = j
        elif c in "+-*/^()·{}":
            toks.append(("OP", c))
            i += 1
        else:
            raise FormatError(f"unexpected character {c!r} in set expression")
    return toks


class _Parser:
    def __init__(self, toks: list[tuple[str, str]]):
        self.toks = toks
        self.pos = 0

    def peek(self, ahead: int = 0) -> tuple[str, str]:
        i = self.pos + ahead
        return self.toks[i] if i < len(self.toks) else ("END", "")

    def take(self) -> tuple[str, str]:
        t = self.peek()
        self.pos += 1
        return t

    def expect_op(self, op: str) -> None:
        kind, val = self.take()
        if kind != "OP" or val != op:
            raise FormatError(f"expected {op!r}, found {val or 'end of input'!r}")

    def parse(self) -> SetExpr:
        e = self.expr()
        if self.peek()[0] != "END":
            raise FormatError(f"trailing input at {self.peek()[1]!r}")
        return e

    def expr(self) -> SetExpr:
        e = self.term()
        while self.peek() in (("OP", "+"), ("OP", "-")):
            op = self.take()[1]
            e = BinOp(op, e, self.term())
        return e

    def term(self) -> SetExpr:
        e = self.prefix()
        while self.peek() in (("OP", "*"), ("OP", "/")):
            op = self.take()[1]
            e = BinOp(op, e, self.prefix())
        return e

    def prefix(self) -> SetExpr:
        kind, val = self.peek()
        if kind == "OP" and val == "-" and self.peek(1)[0] == "INT" and self.peek(2) == ("OP", "·"):
            self.take()
            scalar = -int(self.take()[1])
            self.take()
            return Dilate(scalar, self.prefix())
        if kind == "INT":
            self.take()
            n = int(val)
            if self.peek() == ("OP", "·"):
                self.take()
                return Dilate(n, self.prefix())
            if n < 1:
                raise FormatError("iterated sumset count must be >= 1")
            return Fold(n, "+", self.prefix())
        return self.postfix()

    def postfix(self) -> SetExpr:
        e = self.primary()
        while self.peek() == ("OP", "^"):
            self.take()
            braced = self.peek() == ("OP", "{")
            if braced:
                self.take()
            kind, val = self.take()
            if kind != "INT":
                raise FormatError("'^' must be followed by an integer")
            if braced:
                self.expect_op("}")
            k = int(val)
            if k < 1:
                raise FormatError("iterated product count must be >= 1")
            e = Fold(k, "*", e)
        return e

    def primary(self) -> SetExpr:
        kind, val = self.take()
        if kind == "NAME":
            return Var(val)
        if (kind, val) == ("OP", "("):
            e = self.expr()
            self.expect_op(")")
            return e
        raise FormatError(f"expected a set name or '(', found {val or 'end of input'!r}")


def parse_expr(text: str) -> SetExpr:
    """Parse the grammar above into an expression tree."""
    toks = _tokenize(text)
    if not toks:
        raise FormatError("empty set expression")
    return _Parser(toks).parse()


def expr_to_str(e: SetExpr) -> str:
    """Canonical text form; parse_expr(expr_to_str(e)) == e."""

    def wrap(child: SetExpr) -> str:
        s = expr_to_str(child)
        return s if isinstance(child, Var) else f"({s})"

    if isinstance(e, Var):
        return e.name
    if isinstance(e, BinOp):
        # conservative parenthesization keeps precedence unambiguous
        return f"{wrap(e.left)} {e.op} {wrap(e.right)}"
    if isinstance(e, Dilate):
        return f"{e.scalar}·{wrap(e.inner)}"
    if isinstance(e, Fold):
        if e.op == "+":
            return f"{e.k}{wrap(e.inner)}"
        return f"{wrap(e.inner)}^{e.k}"
    raise TypeError(f"not a set expression: {e!r}")


def eval_expr(e: SetExpr | str, env: Mapping[str, FpSet]) -> FpSet:
    """Evaluate over an environment of named sets (all over one field)."""
    if isinstance(e, str):
        e = parse_expr(e)
    if isinstance(e, Var):
        if e.name not in env:
            raise UnboundVariable(f"set {e.name!r} is not bound")
        return env[e.name]
    if isinstance(e, BinOp):
        left = eval_expr(e.left, env)
        right = eval_expr(e.right, env)
        fn = {"+": sumset, "-": difference_set, "*": product_set, "/": quotient_set}[e.op]
        return fn(left, right)
    if isinstance(e, Dilate):
        return dilate(eval_expr(e.inner, env), e.scalar)
    if isinstance(e, Fold):
        inner = eval_expr(e.inner, env)
        return fold_sum(inner, e.k) if e.op == "+" else fold_prod(inner, e.k)
    raise TypeError(f"not a set expression: {e!r}")
