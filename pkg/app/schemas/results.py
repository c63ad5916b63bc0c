from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class BicliqueResponse(BaseModel):
    r: int = Field(..., description="Number of points")
    s: int = Field(..., description="Number of hyperplanes")
    rs: int = Field(..., description="Size r*s")
    point_indices: List[int] = Field(..., description="Indices of the points")
    hyperplane_indices: List[int] = Field(..., description="Indices of the hyperplanes")
    witness_flat: Optional[str] = Field(None, description="Flat certifying the biclique")
    source: str = Field("", description="Where the biclique came from")
    valid: bool = Field(True, description="Every listed pair is incident")


class IncidenceResponse(BaseModel):
    d: int = Field(..., description="Ambient dimension")
    m: int = Field(..., description="Number of points")
    n: int = Field(..., description="Number of hyperplanes")
    I: int = Field(..., description="Number of incidences")
    max_point_degree: int = Field(0, description="Largest number of hyperplanes through one point")
    max_hyperplane_degree: int = Field(0, description="Largest number of points on one hyperplane")


class StepResponse(BaseModel):
    step: str = Field(..., description="Pipeline stage")
    branch: str = Field(..., description="Branch taken at this stage")
    level: Optional[int] = Field(None, description="Dyadic level chosen, if any")
    counts: Dict[str, Any] = Field(default_factory=dict, description="Intermediate counts")
    flags: List[str] = Field(default_factory=list, description="Threshold and boundary flags")
    best_rs: int = Field(0, description="Best candidate harvested at this stage")


class ExtractResponse(BaseModel):
    biclique: BicliqueResponse = Field(..., description="Best biclique found")
    incidences: int = Field(..., description="Number of incidences")
    s0: Optional[float] = Field(None, description="Plane multiplicity threshold")
    r0: Optional[float] = Field(None, description="Line richness threshold")
    t0: Optional[float] = Field(None, description="Five-dimensional plane threshold")
    steps: List[StepResponse] = Field(default_factory=list, description="Trace of the pipeline")


class VerdictResponse(BaseModel):
    index: int = Field(..., description="Index of the classified object")
    kind: str = Field(..., description="hyperplane or point")
    verdict: str = Field(..., description="degenerate or nondegenerate")
    total: int = Field(..., description="Incidences of the object")
    witness: Optional[str] = Field(None, description="Witness flat")
    witness_count: int = Field(0, description="Objects carried by the witness")
    core_count: int = Field(0, description="Objects carried by the richest flat")
    boundary: bool = Field(False, description="The richest flat sits exactly on the beta threshold")


class BoundResponse(BaseModel):
    name: str = Field(..., description="Bound name")
    value: float = Field(..., description="Bound value")
    exact: Optional[str] = Field(None, description="Exact rational value, when available")
    constant: str = Field("1", description="Constant the formula was multiplied by")
