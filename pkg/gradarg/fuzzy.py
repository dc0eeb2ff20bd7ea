"""Truth-functional machinery: degrees, the extended reals used for weights, and the fuzzy
combination-function families."""

import math
from dataclasses import dataclass
from enum import StrEnum
from typing import Annotated

from pydantic import Field

from .errors import SchemaError, UsageError

EPS_DEG: float = 1e-9
EPS_W: float = 1e-7

Degree = Annotated[float, Field(ge=0.0, le=1.0)]


def check_degree(value: float, what: str = "degree") -> float:
    """Return `value` as a float, raising SchemaError unless it lies in [0, 1]."""
    value = float(value)
    if math.isnan(value) or not 0.0 <= value <= 1.0:
        raise SchemaError(f"{what} must be in [0, 1], got {value!r}")
    return value


@dataclass(frozen=True, slots=True)
class ExtendedReal:
    """A finite real or bottom. Bottom sits below every real and absorbs addition."""

    value: float | None = None

    @property
    def is_bottom(self) -> bool:
        return self.value is None

    def __add__(self, other: "ExtendedReal | float") -> "ExtendedReal":
        if isinstance(other, ExtendedReal):
            if self.value is None or other.value is None:
                return BOTTOM
            return ExtendedReal(self.value + other.value)
        if self.value is None:
            return BOTTOM
        return ExtendedReal(self.value + float(other))

    __radd__ = __add__

    def __lt__(self, other: "ExtendedReal") -> bool:
        if self.value is None:
            return other.value is not None
        if other.value is None:
            return False
        return self.value < other.value

    def __le__(self, other: "ExtendedReal") -> bool:
        return self == other or self < other

    def __gt__(self, other: "ExtendedReal") -> bool:
        return other < self

    def __ge__(self, other: "ExtendedReal") -> bool:
        return other <= self

    def greater(self, other: "ExtendedReal", eps: float = EPS_W) -> bool:
        """Strictly greater with a tolerance on finite values."""
        if self.value is None:
            return False
        if other.value is None:
            return True
        return self.value > other.value + eps

    def to_json(self) -> float | None:
        return self.value

    def __str__(self) -> str:
        return "-inf" if self.value is None else f"{self.value:g}"


BOTTOM = ExtendedReal(None)


def finite(value: float) -> ExtendedReal:
    return ExtendedReal(float(value))


class LogicFamily(StrEnum):
    ZADEH = "zadeh"
    GOEDEL = "goedel"
    LUKASIEWICZ = "lukasiewicz"
    PRODUCT = "product"


class Connective(StrEnum):
    AND = "and"
    OR = "or"
    IMPLIES = "implies"
    NOT = "not"


BINARY = frozenset({Connective.AND, Connective.OR, Connective.IMPLIES})


def _clamp(x: float) -> float:
    return min(1.0, max(0.0, x))


@dataclass(frozen=True, slots=True)
class FuzzyLogic:
    """A t-norm, s-norm, implication and negation chosen together as one family."""

    family: LogicFamily = LogicFamily.ZADEH

    @classmethod
    def parse(cls, name: str) -> "FuzzyLogic":
        try:
            return cls(LogicFamily(name.strip().lower()))
        except ValueError:
            choices = "|".join(f.value for f in LogicFamily)
            raise SchemaError(f"unknown logic {name!r}, expected one of {choices}") from None

    def tnorm(self, a: float, b: float) -> float:
        match self.family:
            case LogicFamily.ZADEH | LogicFamily.GOEDEL:
                return min(a, b)
            case LogicFamily.LUKASIEWICZ:
                return max(0.0, a + b - 1.0)
            case LogicFamily.PRODUCT:
                return a * b

    def snorm(self, a: float, b: float) -> float:
        match self.family:
            case LogicFamily.ZADEH | LogicFamily.GOEDEL:
                return max(a, b)
            case LogicFamily.LUKASIEWICZ:
                return min(1.0, a + b)
            case LogicFamily.PRODUCT:
                return _clamp(a + b - a * b)

    def implication(self, a: float, b: float) -> float:
        match self.family:
            case LogicFamily.ZADEH:
                return max(1.0 - a, b)
            case LogicFamily.GOEDEL:
                return 1.0 if a <= b else b
            case LogicFamily.LUKASIEWICZ:
                return min(1.0, 1.0 - a + b)
            case LogicFamily.PRODUCT:
                return 1.0 if a <= b else b / a

    def negation(self, a: float) -> float:
        match self.family:
            case LogicFamily.ZADEH | LogicFamily.LUKASIEWICZ:
                return 1.0 - a
            case LogicFamily.GOEDEL | LogicFamily.PRODUCT:
                return 1.0 if a == 0.0 else 0.0

    def combine(self, connective: Connective, a: float, b: float | None = None) -> float:
        if (b is not None) != (connective in BINARY):
            arity = "two operands" if connective in BINARY else "one operand"
            raise UsageError(f"connective {connective.value} takes {arity}")
        match connective:
            case Connective.AND:
                assert b is not None
                return self.tnorm(a, b)
            case Connective.OR:
                assert b is not None
                return self.snorm(a, b)
            case Connective.IMPLIES:
                assert b is not None
                return self.implication(a, b)
            case Connective.NOT:
                return self.negation(a)

    def __str__(self) -> str:
        return self.family.value


ZADEH = FuzzyLogic(LogicFamily.ZADEH)
GOEDEL = FuzzyLogic(LogicFamily.GOEDEL)


def combine(logic: FuzzyLogic, connective: Connective, a: float, b: float | None = None) -> float:
    return logic.combine(connective, a, b)


def deg_less(a: float, b: float, eps: float = EPS_DEG) -> bool:
    return a < b - eps
