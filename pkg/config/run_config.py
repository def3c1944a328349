from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from calculus.quotients import SamplingPlan

OUTPUT_FORMATS = ("text", "json")


class RunConfig(BaseModel):
    """Options shared by every command: output format, plan overrides and the spec source."""
    model_config = ConfigDict(frozen=True)

    output_format: Literal["text", "json"] = "text"
    t0: Optional[float] = Field(default=None, gt=0)
    ratio: Optional[float] = Field(default=None, gt=0, lt=1)
    count: Optional[int] = Field(default=None, ge=1)
    limit_tol: Optional[float] = Field(default=None, gt=0)
    cluster_tol: Optional[float] = Field(default=None, gt=0)
    spec: Optional[str] = None
    spec_file: Optional[Path] = None

    @model_validator(mode="after")
    def _one_spec_source(self) -> "RunConfig":
        if self.spec is not None and self.spec_file is not None:
            raise ValueError("Give either --spec or --spec-file, not both")
        return self

    def plan(self) -> SamplingPlan:
        """SamplingPlan with the overrides applied on top of the configured defaults."""
        overrides = {
            name: getattr(self, name)
            for name in ("t0", "ratio", "count", "limit_tol", "cluster_tol")
            if getattr(self, name) is not None
        }
        return SamplingPlan(**overrides)

    def spec_source(self) -> str:
        if self.spec is not None:
            return self.spec
        if self.spec_file is not None:
            with open(self.spec_file, "r", encoding="utf-8") as f:
                return f.read()
        raise ValueError("A function spec is required: pass --spec or --spec-file")
