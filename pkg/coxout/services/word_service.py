"""
Word arithmetic in graph products for coxout

Elements of G(Γ,p) are handled as words of letters v^e. normalize computes
the canonical representative: the word is first reduced by inserting letters
one at a time (a new letter travels left across letters it commutes with and
merges with a letter of its own vertex), then the letters are emitted in the
lexicographically least order compatible with the non-commuting pairs.
"""
import heapq
import logging
from functools import lru_cache
from typing import Iterable, List, Sequence, Tuple

from coxout.exceptions import GraphMismatchError, ParseError
from coxout.models.graph import LabelledGraph, VertexSet
from coxout.models.word import Letter, NormalForm, Word
from coxout.services.graph_service import full_subgraph

logger = logging.getLogger("coxout")

RawLetters = Iterable[Tuple[str, int]]


def _reduce(g: LabelledGraph, letters: RawLetters) -> List[Tuple[str, int]]:
    adjacency = g.adjacency
    out: List[Tuple[str, int]] = []
    for v, e in letters:
        p = g.labels[v]
        e %= p
        if e == 0:
            continue
        nbrs = adjacency[v]
        merged = False
        for j in range(len(out) - 1, -1, -1):
            u, f = out[j]
            if u == v:
                total = (e + f) % p
                if total:
                    out[j] = (v, total)
                else:
                    del out[j]
                merged = True
                break
            if u not in nbrs:
                break
        if not merged:
            out.append((v, e))
    return out


def _lex_least_order(g: LabelledGraph, letters: Sequence[Tuple[str, int]]) -> Tuple[Tuple[str, int], ...]:
    adjacency = g.adjacency
    n = len(letters)
    successors: List[List[int]] = [[] for _ in range(n)]
    pending = [0] * n
    for i in range(n):
        vi = letters[i][0]
        for k in range(i + 1, n):
            vk = letters[k][0]
            if vk == vi or vk not in adjacency[vi]:
                successors[i].append(k)
                pending[k] += 1

    heap = [(letters[i][0], letters[i][1], i) for i in range(n) if pending[i] == 0]
    heapq.heapify(heap)
    ordered = []
    while heap:
        v, e, i = heapq.heappop(heap)
        ordered.append((v, e))
        for k in successors[i]:
            pending[k] -= 1
            if pending[k] == 0:
                heapq.heappush(heap, (letters[k][0], letters[k][1], k))
    return tuple(ordered)


@lru_cache(maxsize=1 << 16)
def _canonical(g: LabelledGraph, letters: Tuple[Tuple[str, int], ...]) -> Tuple[Tuple[str, int], ...]:
    return _lex_least_order(g, _reduce(g, letters))


def normal_form(g: LabelledGraph, letters: RawLetters) -> NormalForm:
    """
    Normal form of a product of generator powers

    Args:
        g: Labelled graph
        letters: (vertex, exponent) pairs; exponents may be any integer

    Returns:
        NormalForm: Canonical representative
    """
    raw = tuple((v, int(e)) for v, e in letters)
    g.require(*{v for v, _ in raw})
    return NormalForm(g, _canonical(g, raw))


def normalize(w: Word) -> NormalForm:
    """
    Canonical representative of the element w represents

    Idempotent; two words give the same normal form exactly when they are
    equal in G(Γ,p).
    """
    if isinstance(w, NormalForm):
        return w
    return NormalForm(w.graph, _canonical(w.graph, tuple(w.letters)))


def same_graph(a: LabelledGraph, b: LabelledGraph) -> None:
    """Raise GraphMismatchError unless a and b are the same labelled graph"""
    if a is not b and a != b:
        raise GraphMismatchError("operands live over different labelled graphs")


def identity(g: LabelledGraph) -> NormalForm:
    return NormalForm(g, ())


def generator(g: LabelledGraph, v: str, exponent: int = 1) -> NormalForm:
    """The element v^exponent"""
    return normal_form(g, [(v, exponent)])


def multiply(u: Word, v: Word) -> NormalForm:
    """
    Product u v

    Raises:
        GraphMismatchError: u and v live over different graphs
    """
    same_graph(u.graph, v.graph)
    return NormalForm(u.graph, _canonical(u.graph, tuple(u.letters) + tuple(v.letters)))


def product(g: LabelledGraph, words: Iterable[Word]) -> NormalForm:
    """Product of several words, left to right"""
    letters = []
    for w in words:
        same_graph(g, w.graph)
        letters.extend(w.letters)
    return NormalForm(g, _canonical(g, tuple(letters)))


def _inverse_letters(g: LabelledGraph, w: Word) -> Tuple[Tuple[str, int], ...]:
    return tuple((v, g.labels[v] - e) for v, e in reversed(w.letters))


def inverse(w: Word) -> NormalForm:
    """Reversed word with exponents negated mod p"""
    return NormalForm(w.graph, _canonical(w.graph, _inverse_letters(w.graph, w)))


def commutator(u: Word, v: Word) -> NormalForm:
    """[u,v] = u v u⁻¹ v⁻¹"""
    same_graph(u.graph, v.graph)
    g = u.graph
    letters = tuple(u.letters) + tuple(v.letters) + _inverse_letters(g, u) + _inverse_letters(g, v)
    return NormalForm(g, _canonical(g, letters))


def conjugate(w: Word, by: Word) -> NormalForm:
    """by w by⁻¹"""
    same_graph(w.graph, by.graph)
    g = w.graph
    letters = tuple(by.letters) + tuple(w.letters) + _inverse_letters(g, by)
    return NormalForm(g, _canonical(g, letters))


def power(w: Word, n: int) -> NormalForm:
    """w^n for any integer n"""
    base = normalize(w) if n >= 0 else inverse(w)
    n = abs(n)
    result = identity(w.graph)
    while n:
        if n & 1:
            result = multiply(result, base)
        base = multiply(base, base)
        n >>= 1
    return result


def equal(u: Word, v: Word) -> bool:
    """True when u and v represent the same element"""
    same_graph(u.graph, v.graph)
    return normalize(u).letters == normalize(v).letters


def project(w: Word, keep: Iterable[str]) -> NormalForm:
    """
    Image of w under the map killing every vertex outside keep

    Args:
        w: Word over g
        keep: Vertices spanning the target full subgraph

    Returns:
        NormalForm: Normal form over full_subgraph(g, keep)
    """
    keep = frozenset(keep)
    target = full_subgraph(w.graph, keep)
    letters = tuple((v, e) for v, e in w.letters if v in keep)
    return NormalForm(target, _canonical(target, letters))


def lift(w: Word, g: LabelledGraph) -> NormalForm:
    """Read a word over a full subgraph of g as a word over g"""
    g.require(*w.vertices())
    return NormalForm(g, _canonical(g, tuple(w.letters)))


def central_clique(g: LabelledGraph) -> VertexSet:
    """
    Vertices adjacent to every other vertex

    These generate the centre of a Coxeter graph product.
    """
    others = len(g.vertices) - 1
    return frozenset(v for v in g.vertices if len(g.adjacency[v]) == others)


def parse_word(g: LabelledGraph, literal: str) -> Word:
    """
    Parse a word literal such as `x c1^2 z`; `1` is the empty word

    Exponents are reduced mod p(v); letters with exponent 0 disappear.

    Raises:
        ParseError: Malformed token or unknown vertex
    """
    tokens = literal.split()
    if tokens == ["1"] or not tokens:
        return Word(g, ())
    letters = []
    for token in tokens:
        name, _, exp = token.partition("^")
        if not g.has_vertex(name):
            raise ParseError(f"unknown vertex in word literal: {name!r}")
        try:
            e = int(exp) if exp else 1
        except ValueError:
            raise ParseError(f"bad exponent in word literal: {token!r}")
        e %= g.labels[name]
        if e:
            letters.append(Letter(name, e))
    return Word(g, tuple(letters))


def format_word(w: Word) -> str:
    """Word literal of w"""
    return w.format()


def is_reduced(w: Word) -> bool:
    """No shuffle brings two letters of one vertex together"""
    return len(_reduce(w.graph, w.letters)) == len(w)
