"""A small expression language over the tree algebra.

Grammar::

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := "-" factor | rational | tree | call | "(" expr ")"
    call   := ("graft" | "bplus" | "antipode" | "coproduct") "(" args ")"
    tree   := 't"' forest-text '"' | bare parenthesis group

A ``(`` starts a bare tree literal when the run of parenthesis characters
beginning there closes it; otherwise it opens a group.  So ``(())`` is the
two-vertex ladder while ``(() + ())`` is a grouped sum.  ``t"..."`` accepts
the forest grammar, including ``t"1"`` for the unit.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from rootedhopf import hopf
from rootedhopf.errors import DomainError, ParseError, ResourceBoundError
from rootedhopf.hopf import HElem, Tensor
from rootedhopf.trees import Forest, parse_forest

__all__ = ["DEFAULT_BOUND", "HARD_CAP", "Node", "parse", "evaluate", "evaluate_text", "render"]

DEFAULT_BOUND = 8
HARD_CAP = 12
FUNCTIONS = {"graft": 2, "bplus": 1, "antipode": 1, "coproduct": 1}


@dataclass(frozen=True)
class Node:
    kind: str  # num, forest, add, sub, mul, neg, call
    value: object = None
    args: tuple = ()
    offset: int = 0


class _Parser:
    def __init__(self, text: str):
        self.s = text
        self.i = 0

    def error(self, msg: str, at: int | None = None):
        raise ParseError(msg, self.i if at is None else at)

    def skip(self):
        while self.i < len(self.s) and self.s[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.s[self.i] if self.i < len(self.s) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = repr(self.s[self.i]) if self.i < len(self.s) else "end of input"
            self.error(f"expected {ch!r}, got {got}")
        self.i += 1

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            self.error(f"unexpected {self.s[self.i]!r}")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek() in ("+", "-"):
            op, at = self.s[self.i], self.i
            self.i += 1
            node = Node("add" if op == "+" else "sub", args=(node, self.term()), offset=at)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek() == "*":
            at = self.i
            self.i += 1
            node = Node("mul", args=(node, self.factor()), offset=at)
        return node

    def factor(self) -> Node:
        ch = self.peek()
        at = self.i
        if not ch:
            self.error("unexpected end of input")
        if ch == "-":
            self.i += 1
            return Node("neg", args=(self.factor(),), offset=at)
        if ch.isdigit():
            return self.number()
        if ch == "(":
            end = self._bare_tree_end()
            if end is not None:
                return self._forest_literal(self.s[at:end], at, end)
            self.i += 1
            node = self.expr()
            self.expect(")")
            return node
        if ch == "t" and self.s.startswith('t"', at):
            close = self.s.find('"', at + 2)
            if close < 0:
                self.error("unterminated tree literal", at)
            return self._forest_literal(self.s[at + 2:close], at + 2, close + 1)
        if ch.isalpha():
            j = at
            while j < len(self.s) and (self.s[j].isalnum() or self.s[j] == "_"):
                j += 1
            name = self.s[at:j]
            if name not in FUNCTIONS:
                self.error(f"unknown function {name!r}", at)
            self.i = j
            self.expect("(")
            args = [self.expr()]
            while self.peek() == ",":
                self.i += 1
                args.append(self.expr())
            self.expect(")")
            if len(args) != FUNCTIONS[name]:
                self.error(f"{name} takes {FUNCTIONS[name]} argument(s), got {len(args)}", at)
            return Node("call", name, tuple(args), at)
        self.error(f"unexpected {ch!r}")

    def _bare_tree_end(self) -> int | None:
        depth = 0
        j = self.i
        while j < len(self.s) and self.s[j] in "()":
            depth += 1 if self.s[j] == "(" else -1
            j += 1
            if depth == 0:
                return j
        return None

    def _forest_literal(self, text: str, at: int, end: int) -> Node:
        try:
            f = parse_forest(text)
        except ParseError as e:
            raise ParseError(e.message, at + e.offset) from None
        self.i = end
        return Node("forest", f, offset=at)

    def number(self) -> Node:
        at = self.i
        j = at
        while j < len(self.s) and self.s[j].isdigit():
            j += 1
        num = int(self.s[at:j])
        den = 1
        if j < len(self.s) and self.s[j] == "/":
            k = j + 1
            while k < len(self.s) and self.s[k].isdigit():
                k += 1
            if k == j + 1:
                self.error("expected denominator", k)
            den = int(self.s[j + 1:k])
            if den == 0:
                self.error("zero denominator", j + 1)
            j = k
        self.i = j
        return Node("num", Fraction(num, den), offset=at)


def parse(text: str) -> Node:
    return _Parser(text).parse()


def _max_degree(v) -> int:
    if isinstance(v, Tensor):
        return max((sum(f.weight for f in k) for k in v.terms), default=0)
    return hopf.degree(v)


def _check(v, bound: int, at: int):
    if _max_degree(v) > bound:
        raise ResourceBoundError(f"degree {_max_degree(v)} exceeds bound {bound} at offset {at}")
    return v


def _need_h(v, what: str, at: int) -> HElem:
    if isinstance(v, Tensor):
        raise DomainError(f"{what} expects an element of H, got a tensor (offset {at})")
    return v


def _eval(node: Node, bound: int):
    k = node.kind
    if k == "num":
        return HElem.scalar(node.value)
    if k == "forest":
        f: Forest = node.value
        return _check(HElem.of(f), bound, node.offset)
    if k == "neg":
        return -_eval(node.args[0], bound)
    if k in ("add", "sub", "mul"):
        a, b = (_eval(x, bound) for x in node.args)
        if isinstance(a, Tensor) != isinstance(b, Tensor):
            # a scalar may still scale a tensor
            for x, y in ((a, b), (b, a)):
                if (k == "mul" and isinstance(x, HElem) and all(f.is_unit for f in x.terms)):
                    return y.scale(x.coefficient(Forest()))
            raise DomainError(f"cannot combine a tensor with an element of H (offset {node.offset})")
        try:
            out = a + b if k == "add" else a - b if k == "sub" else a * b
        except DomainError as e:
            raise DomainError(f"{e} (offset {node.offset})") from None
        return _check(out, bound, node.offset)
    name = node.value
    args = [_eval(x, bound) for x in node.args]
    if name == "graft":
        out = hopf.graft_top(_need_h(args[0], name, node.offset), _need_h(args[1], name, node.offset))
    elif name == "bplus":
        out = hopf.b_plus_linear(_need_h(args[0], name, node.offset))
    elif name == "antipode":
        out = hopf.antipode(_need_h(args[0], name, node.offset))
    else:
        out = hopf.coproduct(_need_h(args[0], name, node.offset))
    return _check(out, bound, node.offset)


def evaluate(node: Node, bound: int = DEFAULT_BOUND):
    """Evaluate to an :class:`HElem` or a :class:`Tensor`."""
    if bound > HARD_CAP:
        raise ResourceBoundError(f"bound {bound} exceeds hard cap {HARD_CAP}")
    return _eval(node, bound)


def evaluate_text(text: str, bound: int = DEFAULT_BOUND):
    return evaluate(parse(text), bound)


def render(value) -> str:
    return str(value)
