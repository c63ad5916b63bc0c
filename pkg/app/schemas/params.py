from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from app.models.numeric import to_rational


class ExtractionParams(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    beta: Fraction = Field(Fraction(1, 2), description="Degeneracy fraction, strictly between 0 and 1")
    c1: Fraction = Field(Fraction(1), description="Constant of the plane-multiplicity threshold s0")
    c5: Fraction = Field(Fraction(1), description="Constant of the line-richness threshold r0")
    t0_const: Fraction = Field(Fraction(1), description="Constant of the five-dimensional threshold t0")
    rich_divisor: int = Field(4, gt=0, description="Objects with fewer than I/(rich_divisor*n) incidences are dropped")
    retry_cap: int = Field(32, gt=0, description="Redraws allowed for a generic projection")
    oracle_cap: int = Field(10 ** 7, gt=0, description="Largest subset count the oracle will enumerate")
    projection_bound: int = Field(10 ** 4, gt=0, description="Entries of random projections are drawn from [-B, B]")

    @field_validator("beta", "c1", "c5", "t0_const", mode="before")
    @classmethod
    def parse_rational(cls, value):
        return to_rational(value)

    @field_validator("beta")
    @classmethod
    def beta_in_unit_interval(cls, value: Fraction) -> Fraction:
        if not 0 < value < 1:
            raise ValueError(f"beta must lie in (0, 1), got {value}")
        return value

    @field_validator("c1", "c5", "t0_const")
    @classmethod
    def positive_constant(cls, value: Fraction) -> Fraction:
        if value <= 0:
            raise ValueError(f"constants must be positive, got {value}")
        return value


class PlantedFlat(BaseModel):
    flat_dim: int = Field(..., ge=0, description="Dimension of the planted flat")
    points_on_flat: int = Field(0, ge=0, description="Points drawn on the flat")
    hyperplanes_through_flat: int = Field(0, ge=0, description="Hyperplanes drawn through the flat")
    parent: Optional[int] = Field(None, ge=0, description="Index of an earlier planted flat that holds this one")


class GeneratorSpec(BaseModel):
    """
    ``random`` draws ``noise_points`` points and ``noise_hyperplanes``
    hyperplanes and nothing else; ``grid`` ignores the noise counts.
    """
    kind: Literal["planted", "grid", "random"] = Field("planted", description="Generator family")
    dim: int = Field(..., ge=2, le=5, description="Ambient dimension")
    planted: List[PlantedFlat] = Field(default_factory=list, description="Planted flats, drawn in order")
    noise_points: int = Field(0, ge=0, description="Extra random points")
    noise_hyperplanes: int = Field(0, ge=0, description="Extra random hyperplanes")
    grid_side: int = Field(3, ge=1, description="Side s of the grid {0..s-1}^d")
    seed: int = Field(0, ge=0, lt=2 ** 64, description="64-bit seed that fully determines the output")
    coord_bound: int = Field(10, ge=1, description="Random integers are drawn from [-coord_bound, coord_bound]")
    denominator_bound: int = Field(4, ge=1, description="Random rational denominators are drawn from [1, bound]")

    @model_validator(mode="after")
    def check_planted(self) -> "GeneratorSpec":
        for index, entry in enumerate(self.planted):
            if entry.flat_dim > self.dim - 1:
                raise ValueError(f"planted flat {index} has dimension {entry.flat_dim} >= {self.dim}")
            if entry.parent is not None:
                if entry.parent >= index:
                    raise ValueError(f"planted flat {index} names parent {entry.parent}, which is not earlier")
                if self.planted[entry.parent].flat_dim <= entry.flat_dim:
                    raise ValueError(f"planted flat {index} must be lower-dimensional than its parent")
        return self
