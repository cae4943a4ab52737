"""
Witness models for coxout

A witness is the vertex and component data certifying a configuration in
the graph. Components are stored whole, sorted by identifier.
"""
from typing import Any, Dict, FrozenSet, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, field_validator

from coxout.utils import format_vertex_set


class BaseWitness(BaseModel):
    """Base model for all witness types"""
    model_config = ConfigDict(frozen=True)

    kind: str

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return self.model_dump(mode="json")


class SilWitness(BaseWitness):
    """(x1, x2 | Z): Z is a component of Γ∖(lk(x1)∩lk(x2)) missing x1 and x2"""
    kind: Literal["sil"] = "sil"
    x1: str
    x2: str
    z_component: Tuple[str, ...]

    @field_validator("z_component", mode="before")
    @classmethod
    def _sort_component(cls, value):
        return tuple(sorted(value))

    @property
    def component(self) -> FrozenSet[str]:
        return frozenset(self.z_component)

    def vertices(self) -> Tuple[str, ...]:
        return (self.x1, self.x2)

    def pair(self) -> FrozenSet[str]:
        return frozenset((self.x1, self.x2))

    def describe(self) -> str:
        return f"SIL ({self.x1},{self.x2} | {format_vertex_set(self.z_component)})"


class StilWitness(BaseWitness):
    """(x1, x2, x3 | Z) over the triple link intersection"""
    kind: Literal["stil"] = "stil"
    x1: str
    x2: str
    x3: str
    z_component: Tuple[str, ...]

    @field_validator("z_component", mode="before")
    @classmethod
    def _sort_component(cls, value):
        return tuple(sorted(value))

    @property
    def component(self) -> FrozenSet[str]:
        return frozenset(self.z_component)

    def vertices(self) -> Tuple[str, ...]:
        return (self.x1, self.x2, self.x3)

    def describe(self) -> str:
        return f"STIL ({self.x1},{self.x2},{self.x3} | {format_vertex_set(self.z_component)})"


class FsilWitness(BaseWitness):
    """Triple whose pairs are SILs witnessed by the remaining vertex"""
    kind: Literal["fsil"] = "fsil"
    x1: str
    x2: str
    x3: str
    sils: Tuple[SilWitness, SilWitness, SilWitness]

    def vertices(self) -> Tuple[str, ...]:
        return (self.x1, self.x2, self.x3)

    def describe(self) -> str:
        return f"FSIL {{{self.x1},{self.x2},{self.x3}}}"


class NonCoxeterSilWitness(BaseWitness):
    """SIL with a defining vertex of order at least 3"""
    kind: Literal["non-coxeter-sil"] = "non-coxeter-sil"
    underlying: SilWitness
    heavy_vertex: str

    def vertices(self) -> Tuple[str, ...]:
        return self.underlying.vertices()

    def describe(self) -> str:
        return f"non-Coxeter {self.underlying.describe()} with heavy vertex {self.heavy_vertex}"


LargeWitness = Union[StilWitness, FsilWitness, NonCoxeterSilWitness]
Witness = Union[SilWitness, StilWitness, FsilWitness, NonCoxeterSilWitness]


class StilfindOutcome(BaseModel):
    """Which clause of the two-SIL trichotomy holds"""
    model_config = ConfigDict(frozen=True)

    case: Literal["fsil", "stil", "same-component"]
    fsil: Optional[FsilWitness] = None
    stil: Optional[StilWitness] = None

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return self.model_dump(mode="json")
