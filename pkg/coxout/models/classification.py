"""
Classification models for coxout
"""
from enum import Enum
from typing import Any, Dict, List, Optional, Union

from pydantic import BaseModel, Field

from coxout.models.graph import LabelledGraph
from coxout.models.witness import (
    FsilWitness,
    NonCoxeterSilWitness,
    SilWitness,
    StilWitness,
)


class Verdict(str, Enum):
    """Size of the outer automorphism group"""
    FINITE = "finite"
    VIRTUALLY_ABELIAN_INFINITE = "virtually-abelian-infinite"
    LARGE = "large"


class GraphSummary(BaseModel):
    vertex_count: int
    edge_count: int
    components: List[List[str]] = Field(default_factory=list)
    coxeter: bool = True


class Classification(BaseModel):
    """Verdict with the witness and the cited steps that produced it"""
    verdict: Verdict
    witness: Optional[Union[FsilWitness, StilWitness, NonCoxeterSilWitness, SilWitness]] = None
    justification: List[str] = Field(default_factory=list)
    summary: Optional[GraphSummary] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        data = self.model_dump(mode="json", exclude_none=True)
        data["witness"] = self.witness.to_dict() if self.witness is not None else None
        return data


class ComponentQuotient(BaseModel):
    """One component Γi with its central clique Ki and the remainder Γi∖Ki"""
    component: List[str]
    central_clique: List[str]
    remainder: LabelledGraph

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "component": list(self.component),
            "central_clique": list(self.central_clique),
            "remainder": self.remainder.to_dict(),
        }


class DisconnectedStructure(BaseModel):
    """Out⁰ of a two-component graph as a right-angled Coxeter group"""
    out0_defining_graph: LabelledGraph
    factor_quotients: List[ComponentQuotient]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "out0_defining_graph": self.out0_defining_graph.to_dict(),
            "factor_quotients": [q.to_dict() for q in self.factor_quotients],
        }
