"""Expression parsing and ordinal formatting.

Grammar:

    expr   := term (("+" | "-") term)*
    term   := factor ("*" factor)*
    factor := atom ("^" atom)?
    atom   := NAT | "w" | "chi(" NAT ")" | "(" expr ")" | "[" expr "]"

Outside brackets the operators are On_p field operations and "^" raises to
a natural-number power. Inside "[...]" (or everywhere in ordinal mode) they
are ordinary ordinal arithmetic on Cantor normal forms.
"""
from __future__ import annotations

import logging
import re
from typing import Iterator, List, NamedTuple, Optional, Tuple, Union, TYPE_CHECKING

from onp.core.errors import ExpressionSyntaxError, ResourceLimitError
from onp.ordinals.cantor import ONE, OMEGA, CantorOrdinal
from onp.ordinals.ordinal import ExpOrdinal, Ordinal

if TYPE_CHECKING:
    from onp.arithmetic.context import Context
    from onp.ordinals.element import Element

logger = logging.getLogger(__name__)

FIELD = "field"
ORDINAL = "ordinal"

STYLE_CNF = "cnf"
STYLE_P_EXPANSION = "p-expansion"


class Token(NamedTuple):
    type: str
    value: Union[str, int]
    where: Tuple[int, int]


_TOKENS = {
    "chi": r"chi",
    "omega": r"w|ω",
    "nat": r"\d+",
    "lpar": r"\(",
    "rpar": r"\)",
    "lbrack": r"\[",
    "rbrack": r"\]",
    "plus": r"\+",
    "minus": r"-",
    "mul": r"\*",
    "pow": r"\^",
    "skip": r"\s+",
    "error": r".",
}
_REGEX = re.compile("|".join(f"(?P<{name}>{text})" for name, text in _TOKENS.items()))


def tokenize(source: str) -> Iterator[Token]:
    for mo in _REGEX.finditer(source):
        kind = str(mo.lastgroup)
        value: Union[str, int] = mo.group()
        where = mo.start(), mo.end()
        if kind == "skip":
            continue
        if kind == "error":
            raise ExpressionSyntaxError(f"unexpected character {value!r}", where, source)
        if kind == "nat":
            value = int(value)
        yield Token(kind, value, where)
    yield Token("end", "", (len(source), len(source) + 1))


# Syntax tree


class Nat(NamedTuple):
    value: int
    where: Tuple[int, int]


class Omega(NamedTuple):
    where: Tuple[int, int]


class Chi(NamedTuple):
    r: int
    where: Tuple[int, int]


class Bracket(NamedTuple):
    inner: "Node"
    where: Tuple[int, int]


class BinOp(NamedTuple):
    op: str
    left: "Node"
    right: "Node"
    where: Tuple[int, int]


Node = Union[Nat, Omega, Chi, Bracket, BinOp]


class Parser:
    """Recursive-descent parser producing a small syntax tree."""

    def __init__(self, source: str):
        self.source = source
        self.tokens: List[Token] = list(tokenize(source))
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def error(self, message: str, token: Optional[Token] = None) -> ExpressionSyntaxError:
        token = token or self.current
        return ExpressionSyntaxError(message, token.where, self.source)

    def advance(self, kind: Optional[str] = None) -> Token:
        token = self.current
        if kind is not None and token.type != kind:
            expected = {"rpar": "')'", "rbrack": "']'", "lpar": "'('", "nat": "a natural number"}.get(kind, kind)
            raise self.error(f"expected {expected}")
        self.index += 1
        return token

    def parse(self) -> Node:
        if self.current.type == "end":
            raise self.error("empty expression")
        node = self.expr()
        if self.current.type != "end":
            raise self.error("unexpected token")
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.current.type in ("plus", "minus"):
            op = self.advance()
            node = BinOp(str(op.value), node, self.term(), op.where)
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.current.type == "mul":
            op = self.advance()
            node = BinOp("*", node, self.factor(), op.where)
        return node

    def factor(self) -> Node:
        node = self.atom()
        if self.current.type == "pow":
            op = self.advance()
            node = BinOp("^", node, self.atom(), op.where)
        return node

    def atom(self) -> Node:
        token = self.current
        if token.type == "nat":
            self.advance()
            return Nat(int(token.value), token.where)
        if token.type == "omega":
            self.advance()
            return Omega(token.where)
        if token.type == "chi":
            self.advance()
            self.advance("lpar")
            r = self.advance("nat")
            self.advance("rpar")
            if int(r.value) < 1:
                raise self.error("chi index must be a positive integer", r)
            return Chi(int(r.value), r.where)
        if token.type == "lpar":
            self.advance()
            node = self.expr()
            self.advance("rpar")
            return node
        if token.type == "lbrack":
            self.advance()
            node = self.expr()
            close = self.advance("rbrack")
            return Bracket(node, (token.where[0], close.where[1]))
        raise self.error("expected a number, 'w', 'chi(...)', '(' or '['")


# Evaluation


def _eval_ordinal(node: Node, parser: Parser, ctx: "Context") -> CantorOrdinal:
    if isinstance(node, Nat):
        return CantorOrdinal.from_int(node.value)
    if isinstance(node, Omega):
        return OMEGA
    if isinstance(node, Chi):
        from onp.ordinals.element import element_to_ordinal
        from onp.structure.chi import chi_h

        return element_to_ordinal(chi_h(node.r, ctx)[0], ctx).to_cnf()
    if isinstance(node, Bracket):
        return _eval_ordinal(node.inner, parser, ctx)
    left = _eval_ordinal(node.left, parser, ctx)
    right = _eval_ordinal(node.right, parser, ctx)
    if node.op == "+":
        return left + right
    if node.op == "*":
        return left * right
    if node.op == "^":
        return left ** right
    raise ExpressionSyntaxError("subtraction is not defined on ordinals", node.where, parser.source)


def _eval_field(node: Node, parser: Parser, ctx: "Context") -> "Element":
    from onp.arithmetic import engine
    from onp.ordinals.element import int_to_element, ordinal_to_element

    if isinstance(node, Nat):
        return int_to_element(node.value, ctx)
    if isinstance(node, Omega):
        return ordinal_to_element(Ordinal.from_cnf(OMEGA, ctx.p), ctx)
    if isinstance(node, Chi):
        from onp.structure.chi import chi_h

        return chi_h(node.r, ctx)[0]
    if isinstance(node, Bracket):
        return ordinal_to_element(Ordinal.from_cnf(_eval_ordinal(node.inner, parser, ctx), ctx.p), ctx)
    if node.op == "^":
        exponent = _eval_ordinal(node.right, parser, ctx)
        if not exponent.is_finite():
            raise ExpressionSyntaxError("field exponent must be a natural number", node.where, parser.source)
        return engine.power(_eval_field(node.left, parser, ctx), exponent.to_int(), ctx)
    left = _eval_field(node.left, parser, ctx)
    right = _eval_field(node.right, parser, ctx)
    if node.op == "+":
        return engine.add(left, right, ctx)
    if node.op == "-":
        return engine.sub(left, right, ctx)
    return engine.mul(left, right, ctx)


def parse(text: str, ctx: "Context", mode: str = FIELD) -> Ordinal:
    """Evaluate `text` and return the result in base-p expansion.

    Args:
        text: Expression in the grammar above.
        ctx: Context fixing the characteristic p.
        mode: "field" for On_p operations outside brackets, "ordinal" to read
            the whole text as an ordinal literal.

    Returns:
        The resulting Ordinal.
    """
    if mode == ORDINAL:
        parser = Parser(text)
        return Ordinal.from_cnf(_eval_ordinal(parser.parse(), parser, ctx), ctx.p)
    if mode != FIELD:
        raise ValueError(f"unknown parse mode {mode!r}")
    from onp.ordinals.element import element_to_ordinal

    return element_to_ordinal(evaluate(text, ctx), ctx)


def evaluate(text: str, ctx: "Context") -> "Element":
    """Field-mode evaluation returning the internal Element."""
    parser = Parser(text)
    tree = parser.parse()
    logger.debug(f"evaluating {text!r} with p={ctx.p}")
    return _eval_field(tree, parser, ctx)


# Formatting


def _wrap(text: str) -> str:
    return f"({text})" if any(ch in text for ch in "+*^") else text


def _decimal(n: int) -> str:
    try:
        return str(n)
    except ValueError as e:
        # int -> str conversion limit (sys.get_int_max_str_digits)
        raise ResourceLimitError(f"coefficient of {n.bit_length()} bits is too long to print in decimal") from e


def format_cnf(value: CantorOrdinal) -> str:
    """Cantor normal form with `w` for omega, e.g. "w^(w*3)+w^2*2+5".

    Raises ResourceLimitError when a coefficient is beyond the interpreter's
    integer-to-string limit.
    """
    if value.is_zero():
        return "0"
    parts = []
    for exponent, coefficient in value.terms:
        if exponent.is_zero():
            parts.append(_decimal(coefficient))
            continue
        head = "w" if exponent == ONE else f"w^{_wrap(format_cnf(exponent))}"
        parts.append(head if coefficient == 1 else f"{head}*{_decimal(coefficient)}")
    return "+".join(parts)


def format_exponent(delta: ExpOrdinal) -> str:
    return format_cnf(delta.to_cnf())


def format_p_expansion(o: Ordinal) -> str:
    """Sum of p^delta*a terms in decreasing delta, e.g. "3^(w*3)+3*2+1"."""
    if o.is_zero():
        return "0"
    parts = []
    for delta, digit in o.digits:
        if not delta.terms:
            parts.append(str(digit))
            continue
        exponent = format_exponent(delta)
        head = str(o.p) if exponent == "1" else f"{o.p}^{_wrap(exponent)}"
        parts.append(head if digit == 1 else f"{head}*{digit}")
    return "+".join(parts)


def format_ordinal(o: Ordinal, style: str = STYLE_CNF) -> str:
    """Render in `style`; CNF falls back to the p-expansion when a coefficient is too long."""
    if style == STYLE_CNF:
        try:
            return format_cnf(o.to_cnf())
        except ResourceLimitError as e:
            logger.warning(f"{e.message}; printing the base-{o.p} expansion instead")
            return format_p_expansion(o)
    if style in (STYLE_P_EXPANSION, "p"):
        return format_p_expansion(o)
    raise ValueError(f"unknown style {style!r}")


__all__ = [
    "FIELD",
    "ORDINAL",
    "STYLE_CNF",
    "STYLE_P_EXPANSION",
    "Token",
    "tokenize",
    "Parser",
    "parse",
    "evaluate",
    "format_cnf",
    "format_p_expansion",
    "format_ordinal",
]
