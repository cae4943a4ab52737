"""
Verification harness models for coxout
"""
from typing import Any, Dict, List

from pydantic import BaseModel, Field, field_validator, model_validator

from coxout.exceptions import InputError
from coxout.utils import format_duration, is_prime_power


class GraphSampler(BaseModel):
    """Distribution of random labelled graphs, deterministic given the seed"""
    min_vertices: int = 3
    max_vertices: int = 6
    edge_probability: float = 0.5
    label_choices: List[int] = Field(default_factory=lambda: [2])
    seed: int = 0

    @field_validator("label_choices")
    @classmethod
    def _check_labels(cls, value: List[int]) -> List[int]:
        if not value:
            raise InputError("label_choices must not be empty")
        for p in value:
            if not is_prime_power(p):
                raise InputError(f"label {p} is not a prime power >= 2")
        return value

    @model_validator(mode="after")
    def _check_ranges(self) -> "GraphSampler":
        if not 0 <= self.min_vertices <= self.max_vertices:
            raise InputError("need 0 <= min_vertices <= max_vertices")
        if not 0.0 <= self.edge_probability <= 1.0:
            raise InputError("edge_probability must lie in [0, 1]")
        return self

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return self.model_dump()


class SuiteFailure(BaseModel):
    """A failed or inconclusive instance, complete enough to replay"""
    suite: str
    trial: int
    graph: Dict[str, Any]
    instance: Dict[str, Any]
    message: str
    verdicts: Dict[str, Any] = Field(default_factory=dict)
    bound: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return self.model_dump()


class VerificationReport(BaseModel):
    """Pass / fail / inconclusive counts of one suite run"""
    suite: str
    seed: int
    bound: int
    trials: int
    graphs: int = 0
    skipped: int = 0
    instances: int = 0
    passed: int = 0
    failures: List[SuiteFailure] = Field(default_factory=list)
    inconclusive: List[SuiteFailure] = Field(default_factory=list)
    duration_seconds: float = 0.0
    report_paths: List[str] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def summary_rows(self) -> List[List[str]]:
        return [
            ["suite", self.suite],
            ["seed", str(self.seed)],
            ["bound", str(self.bound)],
            ["graphs", f"{self.graphs} (skipped {self.skipped})"],
            ["instances", str(self.instances)],
            ["passed", str(self.passed)],
            ["failed", str(len(self.failures))],
            ["inconclusive", str(len(self.inconclusive))],
            ["time", format_duration(self.duration_seconds)],
        ]

    def format_table(self) -> str:
        """Human-readable two column table"""
        rows = self.summary_rows()
        width = max(len(key) for key, _ in rows)
        lines = [f"{key.ljust(width)}  {value}" for key, value in rows]
        for failure in self.failures:
            lines.append(f"FAIL trial {failure.trial}: {failure.message}")
        for item in self.inconclusive:
            lines.append(f"INCONCLUSIVE trial {item.trial}: {item.message}")
        return "\n".join(lines)

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        """Convert to dictionary; timing is left out unless asked for"""
        data = self.model_dump()
        if not include_timing:
            data.pop("duration_seconds")
        return data
