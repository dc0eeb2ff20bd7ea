"""Text syntax for argument expressions and conditional queries.

    expr   :  name | "!" expr | expr "&" expr | expr "|" expr | "(" expr ")"
    query  :  ["T(" expr ")" | expr] "=>" expr theta number
    theta  :  ">=" | "<=" | ">" | "<"
"""

from dataclasses import dataclass

from lark import Lark, Transformer, v_args
from lark.exceptions import LarkError

from .errors import SchemaError
from .expr import And, Atom, Expr, Not, Or

GRAMMAR = r"""
    ?start: query | expr_only

    expr_only: expr

    query: antecedent "=>" expr THETA NUMBER

    ?antecedent: typical | expr
    typical: TYP expr ")"

    ?expr: or_expr
    ?or_expr: and_expr ("|" and_expr)*
    ?and_expr: unary ("&" unary)*
    ?unary: "!" unary -> neg
          | atom
    ?atom: NAME -> name
         | "(" expr ")"

    THETA: ">=" | "<=" | ">" | "<"
    TYP: /T\s*\(/
    NAME: /(?!T\s*\()[A-Za-z_][A-Za-z0-9_]*/

    %import common.NUMBER
    %import common.WS
    %ignore WS
"""


@dataclass(frozen=True)
class ParsedQuery:
    antecedent: Expr
    typicality: bool
    consequent: Expr
    theta: str
    threshold: float


@v_args(inline=True)
class _ToAst(Transformer):
    def name(self, token):
        return Atom(str(token))

    def neg(self, operand):
        return Not(operand)

    def or_expr(self, *parts):
        result = parts[0]
        for part in parts[1:]:
            result = Or(result, part)
        return result

    def and_expr(self, *parts):
        result = parts[0]
        for part in parts[1:]:
            result = And(result, part)
        return result

    def typical(self, _open, expr):
        return ("typical", expr)

    def expr_only(self, expr):
        return expr

    def query(self, antecedent, consequent, theta, number):
        typicality = isinstance(antecedent, tuple)
        if typicality:
            antecedent = antecedent[1]
        return ParsedQuery(antecedent, typicality, consequent, str(theta), float(number))


_parser = Lark(GRAMMAR, start="start", parser="lalr")


def _parse(text: str):
    try:
        return _ToAst().transform(_parser.parse(text))
    except LarkError as e:
        raise SchemaError(f"cannot parse {text!r}: {e}") from None


def parse_expr(text: str) -> Expr:
    result = _parse(text)
    if isinstance(result, ParsedQuery):
        raise SchemaError(f"expected an expression, got a query: {text!r}")
    return result


def parse_query(text: str) -> ParsedQuery:
    result = _parse(text)
    if not isinstance(result, ParsedQuery):
        raise SchemaError(f"expected `T(<expr>) => <expr> <theta> <n>`, got {text!r}")
    return result
