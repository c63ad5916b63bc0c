from typing import Optional

from pydantic import BaseModel, Field

BOUND_COLUMNS = ("thm4d", "thm5d", "as_lower", "as_upper", "et")

# Fixed column order of CSV and JSON-lines reports.
REPORT_COLUMNS = (
    ("row", "d", "m", "n", "I", "rs_oracle", "rs_extracted", "r", "s", "source")
    + BOUND_COLUMNS
    + tuple(f"ratio_{b}" for b in BOUND_COLUMNS)
    + ("seed", "varied", "error", "wall_time_s")
)


class ExperimentRow(BaseModel):
    row: int = Field(0, description="Row index in the sweep")
    d: int = Field(..., description="Ambient dimension")
    m: int = Field(..., description="Number of points")
    n: int = Field(..., description="Number of hyperplanes")
    I: int = Field(..., description="Number of incidences")
    rs_oracle: Optional[int] = Field(None, description="Exact maximum biclique size, when the oracle ran")
    rs_extracted: int = Field(0, description="Size of the biclique found by extraction")
    r: int = Field(0, description="Points in the extracted biclique")
    s: int = Field(0, description="Hyperplanes in the extracted biclique")
    source: str = Field("", description="Pipeline branch that produced the extracted biclique")
    thm4d: Optional[float] = Field(None, description="Four-dimensional guarantee")
    thm5d: Optional[float] = Field(None, description="Five-dimensional guarantee")
    as_lower: Optional[float] = Field(None, description="Biclique lower bound")
    as_upper: Optional[float] = Field(None, description="Biclique upper bound")
    et: Optional[float] = Field(None, description="Nondegenerate incidence bound")
    ratio_thm4d: Optional[float] = Field(None, description="rs_extracted / thm4d")
    ratio_thm5d: Optional[float] = Field(None, description="rs_extracted / thm5d")
    ratio_as_lower: Optional[float] = Field(None, description="rs_extracted / as_lower")
    ratio_as_upper: Optional[float] = Field(None, description="rs_extracted / as_upper")
    ratio_et: Optional[float] = Field(None, description="rs_extracted / et")
    seed: int = Field(0, description="Seed the row was generated and extracted with")
    varied: str = Field("", description="parameter=value for sweep rows")
    error: str = Field("", description="Error recorded for this row, if any")
    wall_time_s: Optional[float] = Field(None, description="Seconds spent on the row, when timing is enabled")

    def cells(self) -> list:
        values = self.model_dump()
        return [values[c] for c in REPORT_COLUMNS]
