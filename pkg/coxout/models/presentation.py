"""
Presentation models for coxout
"""
import re
from typing import Any, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from coxout.exceptions import InputError

# A relator is a list of syllables (generator, nonzero exponent)
Syllable = Tuple[str, int]
Relator = Tuple[Syllable, ...]

PC_NAME = re.compile(r"^chi\[([^|\]]+)\|([^\]]*)\]$")


class GeneratorTag(BaseModel):
    """The partial conjugation a generator denotes"""
    multiplier: str
    support: Tuple[str, ...]

    @classmethod
    def from_name(cls, name: str) -> Optional["GeneratorTag"]:
        """Read the tag off a name like chi[x|y,z]"""
        match = PC_NAME.match(name)
        if not match:
            return None
        support = tuple(sorted(s for s in match.group(2).split(",") if s))
        return cls(multiplier=match.group(1), support=support)


class Presentation(BaseModel):
    """
    Finite presentation ⟨generators | relators⟩

    Generators are ordered names; generators standing for partial
    conjugations carry a tag. Presentations built from a STIL also record
    the template case and the relabelled quadruple (x1, x2, x3, x4).
    """
    generators: List[str] = Field(default_factory=list)
    relators: List[Relator] = Field(default_factory=list)
    tags: Dict[str, GeneratorTag] = Field(default_factory=dict)
    case: Optional[str] = None
    quad: Optional[Tuple[str, str, str, str]] = None

    @model_validator(mode="after")
    def _check_generators(self) -> "Presentation":
        declared = set(self.generators)
        if len(declared) != len(self.generators):
            raise InputError("duplicate generator in presentation")
        for relator in self.relators:
            for name, exponent in relator:
                if name not in declared:
                    raise InputError(f"relator mentions undeclared generator {name}")
                if exponent == 0:
                    raise InputError(f"zero exponent on {name} in relator")
        for name in self.tags:
            if name not in declared:
                raise InputError(f"tag for undeclared generator {name}")
        return self

    def format_relator(self, relator: Relator) -> str:
        """Relator literal, `1` when empty"""
        if not relator:
            return "1"
        return " ".join(name if e == 1 else f"{name}^{e}" for name, e in relator)

    def format(self) -> str:
        """Render as ⟨gens | rels⟩ on one line"""
        gens = ", ".join(self.generators)
        rels = ", ".join(self.format_relator(r) for r in self.relators)
        return f"< {gens} | {rels} >"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "generators": list(self.generators),
            "relators": [self.format_relator(r) for r in self.relators],
            "case": self.case,
            "quad": list(self.quad) if self.quad else None,
        }


class AbelianInvariants(BaseModel):
    """Z^free_rank ⊕ Z/t1 ⊕ ... ⊕ Z/tk with t1 | t2 | ..."""
    free_rank: int
    torsion: Tuple[int, ...] = ()

    def format(self) -> str:
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


FORM_DISPLAY = {
    "Z2FreeProductRank3": "Z2*Z2*Z2",
    "KleinFourStarZ2": "(Z2xZ2)*Z2",
    "Unrecognized": "unrecognized",
}


class FormTag(BaseModel):
    """Recognised target form of a simplified presentation"""
    form: Literal["Z2FreeProductRank3", "KleinFourStarZ2", "Unrecognized"]
    presentation: Optional[Presentation] = None

    @property
    def display(self) -> str:
        return FORM_DISPLAY[self.form]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "form": self.form,
            "display": self.display,
            "presentation": self.presentation.to_dict() if self.presentation else None,
        }
