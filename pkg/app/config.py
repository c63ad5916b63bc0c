"""
Runtime settings read from the environment (and a local .env file).
No variable is required; CLI flags override whatever is set here.
"""
import logging
import os
from fractions import Fraction
from typing import Optional

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.errors import ConfigParseError
from app.models.numeric import to_rational
from app.schemas.params import ExtractionParams

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class Settings(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    beta: Fraction = Field(Fraction(1, 2), description="Default degeneracy fraction")
    oracle_cap: int = Field(10 ** 7, gt=0, description="Default oracle subset cap")
    retry_cap: int = Field(32, gt=0, description="Default projection redraw cap")
    projection_bound: int = Field(10 ** 4, gt=0, description="Entry bound of random projections")
    rich_divisor: int = Field(4, gt=0, description="Divisor of the richness threshold")
    log_level: str = Field("INFO", description="Root logging level")

    @field_validator("beta", mode="before")
    @classmethod
    def parse_beta(cls, value):
        return to_rational(value)

    @field_validator("log_level")
    @classmethod
    def known_level(cls, value: str) -> str:
        value = value.upper()
        if value not in LOG_LEVELS:
            raise ValueError(f"unknown log level {value!r}")
        return value

    def extraction_params(self, **overrides) -> ExtractionParams:
        values = {
            "beta": self.beta,
            "oracle_cap": self.oracle_cap,
            "retry_cap": self.retry_cap,
            "projection_bound": self.projection_bound,
            "rich_divisor": self.rich_divisor,
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return ExtractionParams(**values)


ENV_VARS = {
    "beta": "BICLIQUE_BETA",
    "oracle_cap": "BICLIQUE_ORACLE_CAP",
    "retry_cap": "BICLIQUE_RETRY_CAP",
    "projection_bound": "BICLIQUE_PROJECTION_BOUND",
    "rich_divisor": "BICLIQUE_RICH_DIVISOR",
    "log_level": "BICLIQUE_LOG_LEVEL",
}


def load_settings(env_file: Optional[str] = None) -> Settings:
    load_dotenv(env_file)
    values = {field: os.getenv(var) for field, var in ENV_VARS.items()}
    try:
        return Settings(**{k: v for k, v in values.items() if v is not None})
    except ValueError as e:
        raise ConfigParseError(f"invalid environment settings: {e}") from e
