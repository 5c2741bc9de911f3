# src/homfin/core/models.py

import json
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator

from homfin.algebra.scalars import parse_field
from homfin.core.exceptions import FieldSpecError

REPORT_SCHEMA = 1

Side = Literal["left", "right", "weak-bi", "bi"]
OutputFormat = Literal["table", "json", "csv"]
Level = Literal["fast", "exhaustive"]
Status = Literal["certified", "inconclusive", "failed"]


class JobConfig(BaseModel):
    """
    The merged settings for one command run: config file, environment and
    command-line flags, in increasing priority.
    """
    command: str
    input_path: Optional[str] = None
    field: str = "Q"
    degree_bound: int = Field(default=8, ge=2)
    hom_bound: int = Field(default=4, ge=0)
    output_format: OutputFormat = "table"
    side: Side = "left"
    level: Level = "fast"
    seed: int = 20240601
    workers: int = Field(default=1, ge=1)

    @field_validator("field")
    @classmethod
    def _known_field(cls, value: str) -> str:
        try:
            parse_field(value)
        except FieldSpecError as e:
            raise ValueError(str(e)) from e
        return value


class ReportTable(BaseModel):
    """A titled grid of cells; CSV output has one row per cell."""
    title: str
    headers: List[str]
    rows: List[List[Any]]


class CheckResult(BaseModel):
    """
    Represents the result of a single named check or verification fixture.
    """
    name: str
    success: bool
    message: str
    seconds: float = 0.0


class Report(BaseModel):
    """A command's machine-readable result, versioned by `schema`."""
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=REPORT_SCHEMA, alias="schema")
    command: str
    status: Status
    config: Dict[str, Any] = Field(default_factory=dict)
    data: Dict[str, Any] = Field(default_factory=dict)
    tables: List[ReportTable] = Field(default_factory=list)
    checks: List[CheckResult] = Field(default_factory=list)

    def to_json(self) -> str:
        return json.dumps(self.model_dump(by_alias=True, mode="json"), sort_keys=True, indent=2, ensure_ascii=False)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.model_validate(json.loads(text))

    @property
    def exit_code(self) -> int:
        return {"certified": 0, "inconclusive": 2, "failed": 1}[self.status]
