"""Check modes and the report values every checker returns."""

from dataclasses import dataclass, field
from typing import Any, Literal

from .activation import Activation
from .errors import UsageError
from .fuzzy import EPS_DEG, EPS_W, ExtendedReal, deg_less

ViolationKind = Literal["axiom", "assertion", "coherence", "faithfulness", "phi-coherence"]


@dataclass(frozen=True)
class Coherent:
    name = "coherent"


@dataclass(frozen=True)
class Faithful:
    name = "faithful"


@dataclass(frozen=True)
class PhiCoherent:
    phi: Activation
    name = "phi-coherent"


CheckMode = Coherent | Faithful | PhiCoherent


def parse_mode(name: str, phi: Activation | None = None) -> CheckMode:
    match name.strip().lower().replace("_", "-"):
        case "coherent":
            return Coherent()
        case "faithful":
            return Faithful()
        case "phi-coherent" | "phi":
            if phi is None:
                raise UsageError("phi-coherent mode needs an activation (--phi)")
            return PhiCoherent(phi)
        case other:
            raise UsageError(f"unknown mode {other!r}, expected coherent|faithful|phi-coherent")


@dataclass(frozen=True, kw_only=True)
class Violation:
    """One failed condition. `x`/`y` are domain elements or arguments."""

    kind: ViolationKind
    subject: str
    x: str | None = None
    y: str | None = None
    lhs: float | None = None
    rhs: float | None = None
    detail: str = ""

    def to_json(self) -> dict[str, Any]:
        return {k: v for k, v in self.__dict__.items() if v is not None and v != ""}


@dataclass(frozen=True, kw_only=True)
class CheckReport:
    """Outcome of a model or labelling check."""

    mode: str
    violations: tuple[Violation, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __add__(self, other: "CheckReport") -> "CheckReport":
        mode = self.mode if self.mode == other.mode else f"{self.mode}+{other.mode}"
        return CheckReport(mode=mode, violations=self.violations + other.violations)

    def pairs(self) -> set[tuple[str, str | None, str | None]]:
        return {(v.subject, v.x, v.y) for v in self.violations}

    def to_json(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "mode": self.mode,
            "violations": [v.to_json() for v in self.violations],
        }


def breaks_order(
    mode: Coherent | Faithful,
    deg_x: float,
    deg_y: float,
    w_x: ExtendedReal,
    w_y: ExtendedReal,
    eps_deg: float = EPS_DEG,
    eps_w: float = EPS_W,
) -> bool:
    """Whether ranking x over y breaks `mode`.

    A degree gap wider than `eps_deg` needs a strictly larger weight. Under Coherent, a weight
    gap wider than `eps_w` also needs a strictly larger degree. The conclusions compare exactly.
    """
    if deg_less(deg_y, deg_x, eps_deg) and not w_x.greater(w_y, 0.0):
        return True
    return isinstance(mode, Coherent) and w_x.greater(w_y, eps_w) and not deg_less(deg_y, deg_x, 0.0)
