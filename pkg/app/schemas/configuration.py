from typing import List

from pydantic import BaseModel, Field


class HyperplaneDocument(BaseModel):
    coeffs: List[str] = Field(..., description="Coefficients as integer or p/q strings")
    offset: str = Field("0", description="Right-hand side of coeffs . x = offset")


class ConfigDocument(BaseModel):
    """On-disk configuration: rationals are kept as strings so they stay exact."""
    dim: int = Field(..., description="Ambient dimension")
    points: List[List[str]] = Field(default_factory=list, description="Point coordinates")
    hyperplanes: List[HyperplaneDocument] = Field(default_factory=list, description="Hyperplanes")
    provenance: List[str] = Field(default_factory=list, description="How the configuration was produced")
