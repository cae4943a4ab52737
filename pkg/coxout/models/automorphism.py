"""
Automorphism models for coxout
"""
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, Optional, Tuple

from coxout.models.graph import LabelledGraph
from coxout.models.word import NormalForm
from coxout.utils import format_vertex_set

# (multiplier, support, power) of a partial conjugation in a factorisation
Factor = Tuple[str, FrozenSet[str], int]


@dataclass(frozen=True)
class PartialConjugation:
    """
    χ^v_C: conjugates every generator of C by v and fixes the others.

    The support is a union of components of Γ∖st(v) not containing v.
    """
    multiplier: str
    support: FrozenSet[str]

    def __post_init__(self):
        object.__setattr__(self, "support", frozenset(self.support))

    @property
    def name(self) -> str:
        """Generator name, e.g. chi[x|y,z]"""
        return f"chi[{self.multiplier}|{','.join(sorted(self.support))}]"

    def sort_key(self) -> Tuple[str, Tuple[str, ...]]:
        return (self.multiplier, tuple(sorted(self.support)))

    def describe(self) -> str:
        return f"χ^{self.multiplier}_{format_vertex_set(self.support)}"

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {"multiplier": self.multiplier, "support": sorted(self.support)}


@dataclass(frozen=True)
class Automorphism:
    """
    Automorphism of G(Γ,p) given by the normal forms of generator images.

    Equality is equality in Aut. `factors` records a factorisation into
    partial conjugation powers, applied right to left, used for inverses
    and factor maps; it is not part of the value.
    """
    graph: LabelledGraph = field(compare=False, repr=False)
    images: Tuple[Tuple[str, NormalForm], ...]
    factors: Tuple[Factor, ...] = field(default=(), compare=False, repr=False)
    _lookup: Dict[str, NormalForm] = field(init=False, compare=False, repr=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(sorted(self.images, key=lambda item: item[0])))
        object.__setattr__(self, "_lookup", dict(self.images))

    def __hash__(self) -> int:
        return hash(tuple((v, w.letters) for v, w in self.images))

    def image(self, v: str) -> NormalForm:
        """Normal form of the image of generator v"""
        return self._lookup[v]

    def moved(self) -> Tuple[str, ...]:
        """Generators not fixed by the automorphism"""
        return tuple(v for v, w in self.images if w.letters != ((v, 1),))

    def is_identity(self) -> bool:
        return not self.moved()

    def to_dict(self) -> Dict[str, str]:
        """Generator → word literal"""
        return {v: w.format() for v, w in self.images}

    def describe(self) -> str:
        moved = self.moved()
        if not moved:
            return "identity"
        return ", ".join(f"{v} ↦ {self.image(v).format()}" for v in moved)


@dataclass(frozen=True)
class InnerResult:
    """
    Outcome of the bounded innerness search.

    verdict is "identity", "inner" (with a re-validated conjugator) or
    "not-inner-up-to" (with the bound). exhaustive marks a not-inner verdict
    that holds for conjugators of every length.
    """
    verdict: str
    conjugator: Optional[NormalForm] = None
    bound: Optional[int] = None
    exhaustive: bool = False

    @classmethod
    def identity(cls) -> "InnerResult":
        return cls("identity")

    @classmethod
    def inner(cls, conjugator: NormalForm) -> "InnerResult":
        return cls("inner", conjugator=conjugator)

    @classmethod
    def not_inner(cls, bound: int, exhaustive: bool = False) -> "InnerResult":
        return cls("not-inner-up-to", bound=bound, exhaustive=exhaustive)

    @property
    def is_inner(self) -> bool:
        """True for identity and certified inner results"""
        return self.verdict in ("identity", "inner")

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "verdict": self.verdict,
            "conjugator": self.conjugator.format() if self.conjugator is not None else None,
            "bound": self.bound,
            "exhaustive": self.exhaustive,
        }


@dataclass(frozen=True)
class OutVerdict:
    """Equality in Out: "equal" with a conjugator, or "not-equal-up-to" a bound"""
    verdict: str
    conjugator: Optional[NormalForm] = None
    bound: Optional[int] = None
    exhaustive: bool = False

    @property
    def is_equal(self) -> bool:
        return self.verdict == "equal"

    @property
    def is_conclusive(self) -> bool:
        """Equal, or provably different in Out"""
        return self.is_equal or self.exhaustive

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary"""
        return {
            "verdict": self.verdict,
            "conjugator": self.conjugator.format() if self.conjugator is not None else None,
            "bound": self.bound,
            "exhaustive": self.exhaustive,
        }
