"""Text syntax for elements and tensors of U_q.

::

    tensor  := summand (('+' | '-') summand)*
    summand := product ('(x)' product)*
    product := power (['*' | '/'] power)*
    power   := atom ['^' SINT]
    atom    := GEN | INT | 'q' | 'z' | '(' tensor ')'
    GEN     := ('E' | 'F' | 'K') INT

``(x)`` binds tighter than ``+``, so ``E1 (x) K1 + 1 (x) E1`` is Δ(E_1). The output of
:meth:`QuantumAlgebra.format` and :meth:`QuantumAlgebra.format_tensor` parses back to
the same element.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache
from typing import TYPE_CHECKING, Union

import pyparsing as pp

from .errors import ParseError

if TYPE_CHECKING:
    from .qring import Scalar
    from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement

pp.ParserElement.enable_packrat()

logger = logging.getLogger(__name__)


@dataclass(frozen=True, slots=True)
class Number:
    value: int


@dataclass(frozen=True, slots=True)
class Variable:
    name: str
    column: int


@dataclass(frozen=True, slots=True)
class Generator:
    letter: str
    index: int
    column: int


@dataclass(frozen=True, slots=True)
class Power:
    base: Node
    exponent: int
    column: int


@dataclass(frozen=True, slots=True)
class Product:
    first: Node
    rest: tuple[tuple[str, Node], ...]
    column: int


@dataclass(frozen=True, slots=True)
class Tensor:
    legs: tuple[Node, ...]
    column: int


@dataclass(frozen=True, slots=True)
class Sum:
    terms: tuple[tuple[str, Node], ...]
    column: int


Node = Union[Number, Variable, Generator, Power, Product, Tensor, Sum]


def _column(s: str, loc: int) -> int:
    return pp.col(loc, s)


@cache
def grammar() -> pp.ParserElement:
    tensor = pp.Forward()
    integer = pp.Regex(r"\d+")
    signed = pp.Regex(r"[+-]?\d+")
    generator = pp.Regex(r"([EFK])(\d+)")
    generator.set_parse_action(lambda s, loc, t: Generator(t[0][0], int(t[0][1:]), _column(s, loc)))
    variable = pp.Regex(r"[qz](?![A-Za-z0-9_])")
    variable.set_parse_action(lambda s, loc, t: Variable(t[0], _column(s, loc)))
    number = integer.copy().set_parse_action(lambda t: Number(int(t[0])))
    otimes = pp.Literal("(x)") | pp.Literal("⊗")
    group = ~otimes + pp.Suppress("(") + tensor + pp.Suppress(")")
    atom = generator | variable | number | group

    power = atom + pp.Opt(pp.Suppress("^") + signed)

    def make_power(s: str, loc: int, t: pp.ParseResults) -> Node:
        if len(t) == 1:
            return t[0]
        return Power(t[0], int(t[1]), _column(s, loc))

    power.set_parse_action(make_power)

    operator = pp.Opt(pp.one_of("* /"), default="*")
    product = power + pp.ZeroOrMore(pp.Group(operator + power))

    def make_product(s: str, loc: int, t: pp.ParseResults) -> Node:
        if len(t) == 1:
            return t[0]
        return Product(t[0], tuple((op, node) for op, node in t[1:]), _column(s, loc))

    product.set_parse_action(make_product)

    summand = product + pp.ZeroOrMore(pp.Suppress(otimes) + product)

    def make_summand(s: str, loc: int, t: pp.ParseResults) -> Node:
        if len(t) == 1:
            return t[0]
        return Tensor(tuple(t), _column(s, loc))

    summand.set_parse_action(make_summand)

    sign = pp.one_of("+ -")
    first = pp.Group(pp.Opt(sign, default="+") + summand)
    terms = first + pp.ZeroOrMore(pp.Group(sign + summand))

    def make_sum(s: str, loc: int, t: pp.ParseResults) -> Node:
        if len(t) == 1 and t[0][0] == "+":
            return t[0][1]
        return Sum(tuple((op, node) for op, node in t), _column(s, loc))

    terms.set_parse_action(make_sum)
    tensor <<= terms
    return tensor


def parse(text: str) -> Node:
    """Syntax tree of ``text``; raises :class:`ParseError` with the 1-based column."""
    try:
        return grammar().parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as exc:
        raise ParseError(f"cannot parse {text!r}: {exc.msg}", exc.col) from None


Value = Union["Scalar", "AlgebraElement", "TensorElement"]


class Evaluator:
    """Evaluates syntax trees in one algebra."""

    def __init__(self, algebra: QuantumAlgebra) -> None:
        self.algebra = algebra
        self.ring = algebra.ring

    def _is_scalar(self, value: Value) -> bool:
        from .uqcore import AlgebraElement, TensorElement

        return not isinstance(value, (AlgebraElement, TensorElement))

    def _element(self, value: Value) -> AlgebraElement | TensorElement:
        return self.algebra.coerce(value) if self._is_scalar(value) else value

    def evaluate(self, node: Node) -> Value:
        algebra = self.algebra
        match node:
            case Number(value):
                return self.ring(value)
            case Variable(name, column):
                generic = algebra.root_of_unity is None
                if (name == "q") != generic:
                    expected = "q" if generic else "z"
                    raise ParseError(f"use {expected!r} for the scalar parameter of this algebra", column)
                return self.ring.qpow(1)
            case Generator(letter, index, column):
                if not 1 <= index <= algebra.rank:
                    raise ParseError(f"generator index {index} is outside 1..{algebra.rank}", column)
                return {"E": algebra.E, "F": algebra.F, "K": algebra.K}[letter](index)
            case Power(base, exponent, column):
                return self._power(base, exponent, column)
            case Product(first, rest, column):
                value = self.evaluate(first)
                for op, factor in rest:
                    other = self.evaluate(factor)
                    if op == "/":
                        if not self._is_scalar(other):
                            raise ParseError("only scalars can divide", column)
                        if not other:
                            raise ParseError("division by zero", column)
                        other = self.ring.one / other
                    value = self._multiply(value, other, column)
                return value
            case Tensor(legs, column):
                values = [self.evaluate(leg) for leg in legs]
                if any(not self._is_scalar(v) and hasattr(v, "legs") for v in values):
                    raise ParseError("tensor legs must be elements", column)
                if len(values) not in (2, 3):
                    raise ParseError("tensors have two or three legs", column)
                return algebra.tensor(*(self._element(v) for v in values))
            case Sum(terms, column):
                return self._sum(terms, column)
        raise TypeError(f"unknown node {node!r}")

    def _power(self, base: Node, exponent: int, column: int) -> Value:
        algebra = self.algebra
        if isinstance(base, Generator):
            if base.letter == "K":
                if not 1 <= base.index <= algebra.rank:
                    raise ParseError(f"generator index {base.index} is outside 1..{algebra.rank}", base.column)
                return algebra.K(base.index, exponent)
            if exponent < 0:
                raise ParseError(f"{base.letter}{base.index} has no inverse", column)
        value = self.evaluate(base)
        if self._is_scalar(value):
            if exponent < 0:
                if not value:
                    raise ParseError("division by zero", column)
                return (self.ring.one / value) ** -exponent
            return value**exponent
        if exponent < 0:
            raise ParseError("negative powers are only defined for scalars and K", column)
        return value**exponent

    def _multiply(self, x: Value, y: Value, column: int) -> Value:
        if self._is_scalar(x) and self._is_scalar(y):
            return x * y
        if self._is_scalar(x):
            return y * x
        if self._is_scalar(y):
            return x * y
        if getattr(x, "legs", None) != getattr(y, "legs", None):
            raise ParseError("cannot multiply an element with a tensor", column)
        return x * y

    def _sum(self, terms: tuple[tuple[str, Node], ...], column: int) -> Value:
        values = [(op, self.evaluate(node)) for op, node in terms]
        legs = {getattr(v, "legs", None) for _, v in values if not self._is_scalar(v)}
        legs.discard(None)
        if len(legs) > 1:
            raise ParseError("summands have different numbers of legs", column)
        if legs and any(self._is_scalar(v) or not hasattr(v, "legs") for _, v in values):
            raise ParseError("cannot add an element to a tensor", column)
        if not legs and all(self._is_scalar(v) for _, v in values):
            total = self.ring.zero
            for op, v in values:
                total = total + v if op == "+" else total - v
            return total
        result = None
        for op, v in values:
            v = self._element(v)
            if op == "-":
                v = -v
            result = v if result is None else result + v
        return result


def parse_element(algebra: QuantumAlgebra, text: str) -> AlgebraElement | TensorElement:
    """Parse ``text`` into an element (or a 2- or 3-fold tensor) of ``algebra``."""
    value = Evaluator(algebra).evaluate(parse(text))
    from .uqcore import AlgebraElement, TensorElement

    if isinstance(value, (AlgebraElement, TensorElement)):
        return value
    return algebra.coerce(value)


__all__ = ["Evaluator", "Node", "parse", "parse_element"]
