"""Boolean expression trees shared by concepts (kb) and argument expressions (arggraph).

A concept may use every node kind. An argument expression is restricted to `Atom`, `Not`,
`And` and `Or`.
"""

from collections.abc import Callable, Iterator
from dataclasses import dataclass
from typing import Any, TypeAlias

from typing_extensions import assert_never

from .errors import SchemaError
from .fuzzy import Connective, FuzzyLogic


@dataclass(frozen=True, slots=True)
class Top:
    pass


@dataclass(frozen=True, slots=True)
class Bot:
    pass


@dataclass(frozen=True, slots=True)
class Atom:
    name: str


@dataclass(frozen=True, slots=True)
class Not:
    operand: "Expr"


@dataclass(frozen=True, slots=True)
class And:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True, slots=True)
class Or:
    left: "Expr"
    right: "Expr"


Expr: TypeAlias = Top | Bot | Atom | Not | And | Or
ConceptExpr: TypeAlias = Expr
ArgExpr: TypeAlias = Expr

TOP = Top()
BOT = Bot()


def conj(*operands: Expr) -> Expr:
    """Left-nested conjunction of one or more operands."""
    if not operands:
        raise SchemaError("empty conjunction")
    result = operands[0]
    for operand in operands[1:]:
        result = And(result, operand)
    return result


def atoms(expr: Expr) -> Iterator[str]:
    match expr:
        case Top() | Bot():
            return
        case Atom(name):
            yield name
        case Not(operand):
            yield from atoms(operand)
        case And(left, right) | Or(left, right):
            yield from atoms(left)
            yield from atoms(right)
        case _:
            assert_never(expr)


def is_arg_expr(expr: Expr) -> bool:
    match expr:
        case Top() | Bot():
            return False
        case Atom():
            return True
        case Not(operand):
            return is_arg_expr(operand)
        case And(left, right) | Or(left, right):
            return is_arg_expr(left) and is_arg_expr(right)
        case _:
            assert_never(expr)


def evaluate(expr: Expr, value_of: Callable[[str], float], logic: FuzzyLogic) -> float:
    """Compositional fuzzy evaluation; `value_of` supplies atom degrees."""
    match expr:
        case Top():
            return 1.0
        case Bot():
            return 0.0
        case Atom(name):
            return value_of(name)
        case Not(operand):
            return logic.combine(Connective.NOT, evaluate(operand, value_of, logic))
        case And(left, right):
            return logic.combine(
                Connective.AND,
                evaluate(left, value_of, logic),
                evaluate(right, value_of, logic),
            )
        case Or(left, right):
            return logic.combine(
                Connective.OR,
                evaluate(left, value_of, logic),
                evaluate(right, value_of, logic),
            )
        case _:
            assert_never(expr)


def render(expr: Expr, concept: bool = True) -> str:
    """Human rendering: DL symbols for concepts, the query syntax for argument expressions."""
    and_, or_, not_ = ("⊓", "⊔", "¬") if concept else ("&", "|", "!")
    match expr:
        case Top():
            return "⊤"
        case Bot():
            return "⊥"
        case Atom(name):
            return name
        case Not(operand):
            return f"{not_}{render(operand, concept)}"
        case And(left, right):
            return f"({render(left, concept)} {and_} {render(right, concept)})"
        case Or(left, right):
            return f"({render(left, concept)} {or_} {render(right, concept)})"
        case _:
            assert_never(expr)


def to_json(expr: Expr) -> dict[str, Any]:
    match expr:
        case Top():
            return {"op": "top"}
        case Bot():
            return {"op": "bot"}
        case Atom(name):
            return {"op": "atom", "name": name}
        case Not(operand):
            return {"op": "not", "arg": to_json(operand)}
        case And(left, right):
            return {"op": "and", "args": [to_json(left), to_json(right)]}
        case Or(left, right):
            return {"op": "or", "args": [to_json(left), to_json(right)]}
        case _:
            assert_never(expr)


def from_json(data: Any) -> Expr:
    """Read the nested `{"op": ...}` form. A bare string is shorthand for an atom.

    `and`/`or` accept two or more `args` (folded to the left); `not` takes `arg`.
    """
    if isinstance(data, str):
        return Atom(data)
    if not isinstance(data, dict) or "op" not in data:
        raise SchemaError(f"expression must be a name or an object with 'op', got {data!r}")
    op = data["op"]
    match op:
        case "top":
            return TOP
        case "bot" | "bottom":
            return BOT
        case "atom" | "arg":
            name = data.get("name")
            if not isinstance(name, str) or not name:
                raise SchemaError(f"atom needs a non-empty 'name': {data!r}")
            return Atom(name)
        case "not":
            if "arg" in data:
                return Not(from_json(data["arg"]))
            args = data.get("args")
            if isinstance(args, list) and len(args) == 1:
                return Not(from_json(args[0]))
            raise SchemaError(f"'not' takes exactly one operand: {data!r}")
        case "and" | "or":
            args = data.get("args")
            if not isinstance(args, list) or len(args) < 2:
                raise SchemaError(f"'{op}' takes two or more 'args': {data!r}")
            parts = [from_json(a) for a in args]
            node = And if op == "and" else Or
            result = parts[0]
            for part in parts[1:]:
                result = node(result, part)
            return result
        case _:
            raise SchemaError(f"unknown expression op {op!r}")
