"""Settings read from the environment (and `.env`), overridden by command-line flags."""

import os

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import SchemaError
from .solver import SolveOptions

ENV_PREFIX = "GRADARG_"


class Settings(BaseModel):
    log_level: str = "WARNING"
    tol: float = Field(default=1e-9, gt=0)
    max_iters: int = Field(default=10_000, ge=0)
    damping: float = Field(default=1.0, gt=0, le=1)
    restarts: int = Field(default=16, ge=1)
    seed: int = 0
    dedupe_tol: float = Field(default=1e-6, gt=0)

    @field_validator("log_level")
    @classmethod
    def _known_level(cls, value: str) -> str:
        level = value.strip().upper()
        if level not in {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}:
            raise ValueError(f"unknown log level {value!r}")
        return level

    def solve_options(self) -> SolveOptions:
        return SolveOptions(
            tol=self.tol,
            max_iters=self.max_iters,
            damping=self.damping,
            restarts=self.restarts,
            rng_seed=self.seed,
            dedupe_tol=self.dedupe_tol,
        )


def load_settings(dotenv: bool = True) -> Settings:
    if dotenv:
        load_dotenv()
    values = {}
    for name in Settings.model_fields:
        raw = os.getenv(f"{ENV_PREFIX}{name.upper()}")
        if raw is not None and raw.strip():
            values[name] = raw.strip()
    try:
        return Settings.model_validate(values)
    except ValidationError as e:
        first = e.errors()[0]
        name = f"{ENV_PREFIX}{str(first['loc'][0]).upper()}" if first["loc"] else ENV_PREFIX
        raise SchemaError(f"bad configuration {name}: {first['msg']}") from None
