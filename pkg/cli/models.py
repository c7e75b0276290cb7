from enum import Enum
from typing import Dict, List

from pydantic import BaseModel, Field


class CommandName(str, Enum):
    VERIFY_MAP = "verify-map"
    REDUCE = "reduce"
    PROLONG = "prolong"
    DET_EQS = "det-eqs"
    PARAM_VERIFY = "param-verify"


class ReduceResult(BaseModel):
    expr: str
    normal_form: str
    options: Dict[str, str] = Field(default_factory=dict)


class ComponentEntry(BaseModel):
    atom: str
    expr: str


class ProlongListing(BaseModel):
    components: List[ComponentEntry] = Field(default_factory=list)
    determinant: str
    determinant_spot: str
    options: Dict[str, str] = Field(default_factory=dict)


class CoefficientEntry(BaseModel):
    monomial: str
    coefficient: str


class DeterminingListing(BaseModel):
    equations: List[CoefficientEntry] = Field(default_factory=list)
    options: Dict[str, str] = Field(default_factory=dict)
