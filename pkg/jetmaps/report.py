# jetmaps/report.py

from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field


class Verdict(str, Enum):
    VERIFIED = "VERIFIED"
    FALSIFIED = "FALSIFIED"
    ERROR = "ERROR"


class ResidualEntry(BaseModel):
    equation: str
    normal_form: str

    @property
    def vanishes(self) -> bool:
        return self.normal_form == "0"


class SpotCheck(BaseModel):
    equation: str
    assignment: Dict[str, str]
    value: str


class Report(BaseModel):
    """Outcome of one verification run.

    ``timing`` is kept out of the JSON form so that machine-readable
    output is byte-stable across runs.
    """

    verdict: Verdict
    residuals: List[ResidualEntry] = Field(default_factory=list)
    spot_checks: List[SpotCheck] = Field(default_factory=list)
    options: Dict[str, str] = Field(default_factory=dict)
    notes: List[str] = Field(default_factory=list)
    timing: Optional[float] = Field(default=None, exclude=True)

    @classmethod
    def from_residuals(cls, residuals: List[ResidualEntry], **kwargs) -> "Report":
        verdict = (
            Verdict.VERIFIED if all(entry.vanishes for entry in residuals) else Verdict.FALSIFIED
        )
        return cls(verdict=verdict, residuals=residuals, **kwargs)

    @property
    def exit_code(self) -> int:
        return {Verdict.VERIFIED: 0, Verdict.FALSIFIED: 1, Verdict.ERROR: 2}[self.verdict]

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)


def format_value(value: Union[Fraction, float, None]) -> str:
    if value is None:
        return "undefined"
    if isinstance(value, Fraction):
        return str(value)
    return f"{value:.12g}"
