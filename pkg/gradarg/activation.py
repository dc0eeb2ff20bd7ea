"""Activation families phi: R -> [0, 1]."""

from abc import ABCMeta, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, Literal, overload

import numpy as np
from numpy.typing import NDArray

from .errors import SchemaError
from .fuzzy import ExtendedReal

ActivationName = Literal["logistic", "relu-clamped", "ramp"]

FloatArray = NDArray[np.float64]


class Activation(metaclass=ABCMeta):
    """Abstract base class for activation functions."""

    name: ClassVar[ActivationName]
    strictly_increasing: ClassVar[bool]
    # True when 0 is outside the range, i.e. phi: R -> (0, 1]
    positive_range: ClassVar[bool]

    @abstractmethod
    def _apply(self, x: FloatArray) -> FloatArray: ...

    @abstractmethod
    def _derivative(self, x: FloatArray) -> FloatArray: ...

    @property
    @abstractmethod
    def spec(self) -> str:
        """The flag/config identifier this activation parses from."""
        ...

    @overload
    def __call__(self, x: float) -> float: ...

    @overload
    def __call__(self, x: FloatArray) -> FloatArray: ...

    def __call__(self, x):
        if isinstance(x, np.ndarray):
            return np.clip(self._apply(x.astype(np.float64)), 0.0, 1.0)
        return float(np.clip(self._apply(np.asarray(float(x))), 0.0, 1.0))

    @overload
    def derivative(self, x: float) -> float: ...

    @overload
    def derivative(self, x: FloatArray) -> FloatArray: ...

    def derivative(self, x):
        if isinstance(x, np.ndarray):
            return self._derivative(x.astype(np.float64))
        return float(self._derivative(np.asarray(float(x))))

    def __str__(self) -> str:
        return self.spec


@dataclass(frozen=True)
class Logistic(Activation):
    gain: float = 1.0
    offset: float = 0.0

    name = "logistic"
    strictly_increasing = True
    positive_range = True

    def __post_init__(self):
        if not self.gain > 0:
            raise SchemaError(f"logistic gain must be > 0, got {self.gain}")

    def _apply(self, x: FloatArray) -> FloatArray:
        # tanh form never overflows
        return 0.5 * (1.0 + np.tanh(0.5 * self.gain * (x - self.offset)))

    def _derivative(self, x: FloatArray) -> FloatArray:
        s = self._apply(x)
        return self.gain * s * (1.0 - s)

    @property
    def spec(self) -> str:
        return f"logistic:{self.gain:g}:{self.offset:g}"


@dataclass(frozen=True)
class ReLUClamped(Activation):
    name = "relu-clamped"
    strictly_increasing = False
    positive_range = False

    def _apply(self, x: FloatArray) -> FloatArray:
        return np.minimum(np.maximum(x, 0.0), 1.0)

    def _derivative(self, x: FloatArray) -> FloatArray:
        return ((x > 0.0) & (x < 1.0)).astype(np.float64)

    @property
    def spec(self) -> str:
        return "relu-clamped"


@dataclass(frozen=True)
class PiecewiseRamp(Activation):
    lo: float = 0.0
    hi: float = 1.0

    name = "ramp"
    strictly_increasing = False
    positive_range = False

    def __post_init__(self):
        if not self.hi > self.lo:
            raise SchemaError(f"ramp needs hi > lo, got lo={self.lo} hi={self.hi}")

    def _apply(self, x: FloatArray) -> FloatArray:
        return np.clip((x - self.lo) / (self.hi - self.lo), 0.0, 1.0)

    def _derivative(self, x: FloatArray) -> FloatArray:
        inside = (x > self.lo) & (x < self.hi)
        return inside.astype(np.float64) / (self.hi - self.lo)

    @property
    def spec(self) -> str:
        return f"ramp:{self.lo:g}:{self.hi:g}"


def parse_activation(spec: str) -> Activation:
    """Parse `logistic:<gain>:<offset>`, `relu-clamped` or `ramp:<lo>:<hi>`."""
    head, *params = spec.strip().lower().split(":")
    try:
        values = [float(p) for p in params]
    except ValueError:
        raise SchemaError(f"bad activation parameters in {spec!r}") from None
    match head, values:
        case "logistic", []:
            return Logistic()
        case "logistic", [gain]:
            return Logistic(gain)
        case "logistic", [gain, offset]:
            return Logistic(gain, offset)
        case "relu-clamped" | "relu", []:
            return ReLUClamped()
        case "ramp", [lo, hi]:
            return PiecewiseRamp(lo, hi)
        case _:
            raise SchemaError(
                f"unknown activation {spec!r}, expected logistic:<gain>:<offset>|relu-clamped|ramp:<lo>:<hi>"
            )


def apply_activation(phi: Activation, x: ExtendedReal | float) -> float:
    """Apply phi to an extended real; bottom maps to 0."""
    if isinstance(x, ExtendedReal):
        if x.value is None:
            return 0.0
        return phi(x.value)
    return phi(float(x))
