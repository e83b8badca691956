"""
Run configuration for the command-line front end.

Values are merged with the precedence: explicit flags > JSON config file > defaults.
"""

import json
import logging
import math
from enum import Enum
from pathlib import Path
from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from .density.angular import DensityRoute
from .errors import ConfigError
from .matsim.sampler import Group

logger = logging.getLogger(__name__)


class Subcommand(str, Enum):
    REGION = "region"
    DENSITY = "density"
    BIANE = "biane"
    SHADOW = "shadow"
    HJ = "hj"
    SIMULATE = "simulate"
    VERIFY = "verify"


class Tolerances(BaseModel):
    """Numerical tolerances shared by the root finders and cross-checks."""

    model_config = ConfigDict(extra="forbid")

    root_tol: float = Field(default=1e-12, gt=0.0)
    band_tol: float = Field(default=1e-9, gt=0.0)
    cross_check_tol: float = Field(default=1e-6, gt=0.0)
    bracket_width: float = Field(default=1e-8, gt=0.0)


class RunConfig(BaseModel):
    """Merged configuration of one CLI invocation."""

    model_config = ConfigDict(extra="forbid", use_enum_values=False)

    subcommand: Subcommand = Subcommand.VERIFY
    t: float = Field(default=2.0, gt=0.0)
    n: int = Field(default=256, ge=16)
    N: int = Field(default=500, ge=2)
    steps: Optional[int] = Field(default=None, ge=1)
    samples: int = Field(default=4, ge=1)
    seed: int = Field(default=7, ge=0, lt=2**64)
    out: Path = Path("output")
    route: DensityRoute = DensityRoute.OMEGA
    quick: bool = False
    group: Group = Group.GL
    lambda0: complex = complex(2.0, 0.0)
    x0: float = Field(default=1.0, ge=0.0)
    workers: int = Field(default=1, ge=1)
    svg: bool = False
    tolerances: Tolerances = Field(default_factory=Tolerances)

    @field_validator("lambda0", mode="before")
    @classmethod
    def _parse_complex(cls, value: Any) -> complex:
        if isinstance(value, (list, tuple)) and len(value) == 2:
            return complex(float(value[0]), float(value[1]))
        if isinstance(value, str):
            return complex(value.replace(" ", ""))
        return complex(value)

    @field_validator("lambda0")
    @classmethod
    def _nonzero(cls, value: complex) -> complex:
        if value == 0:
            raise ValueError("lambda0 = 0 is not supported by the characteristic maps")
        return value

    @model_validator(mode="after")
    def _live_characteristic(self) -> "RunConfig":
        # lambda0 = 1 with x0 = 0 is the fixed point with t_star = 0
        if self.lambda0 == 1 and self.x0 == 0.0:
            raise ValueError("lambda0 = 1 needs x0 > 0: the characteristic from (1, 0) has zero lifetime")
        return self

    def effective_steps(self) -> int:
        """steps, defaulting to the coarsest admissible grid of 100 steps per unit time."""
        if self.steps is not None:
            return self.steps
        return max(1, math.ceil(100.0 * self.t))

    def to_json_dict(self) -> dict[str, Any]:
        data = self.model_dump(mode="json")
        data["lambda0"] = [self.lambda0.real, self.lambda0.imag]
        return data


def load_config_file(path: Optional[Path]) -> dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError(f"config file {path} must hold a JSON object")
    return data


def merge_config(
    subcommand: str, flags: dict[str, Any], config_path: Optional[Path] = None
) -> RunConfig:
    """Build a RunConfig from file values overridden by explicitly given flags."""
    data = load_config_file(config_path)
    data.update({key: value for key, value in flags.items() if value is not None})
    data["subcommand"] = subcommand
    try:
        cfg = RunConfig.model_validate(data)
    except ValidationError as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc
    logger.debug(f"Merged configuration: {cfg.to_json_dict()}")
    return cfg
