"""
Group element models for coxout
"""
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Tuple

from coxout.exceptions import InputError
from coxout.models.graph import LabelledGraph


class Letter(NamedTuple):
    """A generator power v^e with 1 <= e < p(v)"""
    vertex: str
    exponent: int = 1

    def format(self) -> str:
        return self.vertex if self.exponent == 1 else f"{self.vertex}^{self.exponent}"


@dataclass(frozen=True)
class Word:
    """
    Sequence of letters over a fixed labelled graph.

    Equality and hashing only look at the letters; operations that combine
    words check that the graphs agree.
    """
    graph: LabelledGraph = field(compare=False, repr=False)
    letters: Tuple[Letter, ...] = ()

    def __post_init__(self):
        letters = tuple(Letter(*letter) for letter in self.letters)
        for letter in letters:
            self.graph.require(letter.vertex)
            p = self.graph.labels[letter.vertex]
            if not 1 <= letter.exponent < p:
                raise InputError(
                    f"exponent {letter.exponent} of {letter.vertex} outside [1, {p - 1}]"
                )
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, index):
        return self.letters[index]

    def is_empty(self) -> bool:
        return not self.letters

    def vertices(self) -> frozenset:
        """Vertices occurring in the word"""
        return frozenset(letter.vertex for letter in self.letters)

    def format(self) -> str:
        """Word literal, `1` for the empty word"""
        if not self.letters:
            return "1"
        return " ".join(letter.format() for letter in self.letters)

    def __str__(self) -> str:
        return self.format()


@dataclass(frozen=True)
class NormalForm(Word):
    """
    Canonical representative of a group element.

    Only produced by word_service.normalize; two normal forms over the same
    graph are equal exactly when they represent the same element.
    """
