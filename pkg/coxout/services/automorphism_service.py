"""
Partial conjugations and their compositions for coxout

Automorphisms are applied on the left: compose(f, h)(v) = f(h(v)).
Commutators follow [f, h] = f h f⁻¹ h⁻¹.
"""
import logging
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from coxout.config import get_settings
from coxout.exceptions import InputError, VerificationCounterexample
from coxout.models.automorphism import (
    Automorphism,
    Factor,
    InnerResult,
    OutVerdict,
    PartialConjugation,
)
from coxout.models.graph import LabelledGraph, VertexSet
from coxout.models.witness import StilWitness
from coxout.models.word import NormalForm, Word
from coxout.services import word_service
from coxout.services.graph_service import components_avoiding, full_subgraph, star

logger = logging.getLogger("coxout")


# ---------------------------------------------------------------------------
# Construction

def _pc_images(g: LabelledGraph, multiplier: str, support: VertexSet, power: int,
               images: Dict[str, Tuple[Tuple[str, int], ...]]) -> Dict[str, NormalForm]:
    """Apply (χ^m_C)^power to each image word"""
    p = g.labels[multiplier]
    e = power % p
    result = {}
    for v, letters in images.items():
        raw: List[Tuple[str, int]] = []
        for u, f in letters:
            if u in support and e:
                raw.append((multiplier, e))
                raw.append((u, f))
                raw.append((multiplier, p - e))
            else:
                raw.append((u, f))
        result[v] = word_service.normal_form(g, raw)
    return result


def from_factors(g: LabelledGraph, factors: Sequence[Factor]) -> Automorphism:
    """
    Automorphism F0 ∘ F1 ∘ ... ∘ Fk from partial conjugation powers

    Args:
        g: Labelled graph
        factors: (multiplier, support, power) triples, leftmost applied last
    """
    images = {v: ((v, 1),) for v in g.vertices}
    normal = {v: word_service.generator(g, v) for v in g.vertices}
    for multiplier, support, power in reversed(tuple(factors)):
        normal = _pc_images(g, multiplier, support, power, images)
        images = {v: w.letters for v, w in normal.items()}
    return Automorphism(g, tuple(normal.items()), tuple(factors))


def _validate(f: Automorphism) -> Automorphism:
    """Check that the images satisfy v^p(v) = 1 and the edge commutations"""
    g = f.graph
    for v in g.vertices:
        if not word_service.power(f.image(v), g.labels[v]).is_empty():
            raise InputError(f"image of {v} does not have order dividing {g.labels[v]}")
    for u, v in g.edges:
        if not word_service.commutator(f.image(u), f.image(v)).is_empty():
            raise InputError(f"images of adjacent {u} and {v} do not commute")
    return f


def identity_automorphism(g: LabelledGraph) -> Automorphism:
    return from_factors(g, ())


def partial_conjugation(g: LabelledGraph, v: str, component: Iterable[str]) -> Automorphism:
    """
    χ^v_C for a component C of Γ∖st(v)

    Args:
        g: Labelled graph
        v: Multiplier
        component: Support

    Returns:
        Automorphism: w ↦ v w v⁻¹ on C, identity elsewhere

    Raises:
        InputError: component is not a component of Γ∖st(v)
    """
    g.require(v)
    component = frozenset(component)
    if component not in components_avoiding(g, star(g, v)):
        raise InputError(f"support {sorted(component)} is not a component of Γ∖st({v})")
    return _validate(from_factors(g, ((v, component, 1),)))


def partial_conjugation_union(g: LabelledGraph, v: str, support: Iterable[str]) -> Automorphism:
    """
    χ^v_S for S a union of components of Γ∖st(v), as a product of partial conjugations

    Raises:
        InputError: S is not such a union
    """
    g.require(v)
    support = frozenset(support)
    chosen = [C for C in components_avoiding(g, star(g, v)) if C & support]
    if frozenset().union(*chosen) != support:
        raise InputError(f"support {sorted(support)} is not a union of components of Γ∖st({v})")
    return _validate(from_factors(g, tuple((v, C, 1) for C in chosen)))


def from_partial_conjugation(g: LabelledGraph, pc: PartialConjugation, power: int = 1) -> Automorphism:
    """Automorphism of a PartialConjugation record raised to power"""
    f = partial_conjugation(g, pc.multiplier, pc.support)
    return f if power == 1 else automorphism_power(f, power)


def enumerate_partial_conjugations(g: LabelledGraph) -> List[PartialConjugation]:
    """Every (v, component of Γ∖st(v)), multipliers in identifier order"""
    result = []
    for v in g.vertices:
        for component in components_avoiding(g, star(g, v)):
            result.append(PartialConjugation(v, component))
    return result


def inner_automorphism(g: LabelledGraph, word: Word) -> Automorphism:
    """
    Conjugation by word, factored into partial conjugations

    Conjugation by a vertex u is the product of χ^u_C over all components C
    of Γ∖st(u).
    """
    word_service.same_graph(g, word.graph)
    factors: List[Factor] = []
    for u, e in word.letters:
        for component in components_avoiding(g, star(g, u)):
            factors.append((u, component, e))
    return from_factors(g, tuple(factors))


# ---------------------------------------------------------------------------
# Group operations

def apply(f: Automorphism, w: Word) -> NormalForm:
    """Substitute images letter by letter and normalize"""
    word_service.same_graph(f.graph, w.graph)
    raw: List[Tuple[str, int]] = []
    for u, e in w.letters:
        image = f.image(u).letters
        for _ in range(e):
            raw.extend(image)
    return word_service.normal_form(f.graph, raw)


def compose(f: Automorphism, h: Automorphism) -> Automorphism:
    """f ∘ h"""
    word_service.same_graph(f.graph, h.graph)
    images = tuple((v, apply(f, w)) for v, w in h.images)
    return Automorphism(f.graph, images, tuple(f.factors) + tuple(h.factors))


def compose_all(g: LabelledGraph, automorphisms: Iterable[Automorphism]) -> Automorphism:
    """Left-to-right composition of several automorphisms"""
    result = identity_automorphism(g)
    for f in automorphisms:
        result = compose(result, f)
    return result


def _inverse_factors(f: Automorphism) -> Tuple[Factor, ...]:
    if not f.factors and not f.is_identity():
        raise InputError("automorphism has no partial conjugation factorisation")
    return tuple((m, C, -e) for m, C, e in reversed(f.factors))


def invert(f: Automorphism) -> Automorphism:
    """
    Inverse through the recorded factorisation

    Raises:
        InputError: f carries no factorisation
    """
    return from_factors(f.graph, _inverse_factors(f))


def automorphism_power(f: Automorphism, n: int) -> Automorphism:
    """f^n for any integer n"""
    factors = tuple(f.factors) if n >= 0 else _inverse_factors(f)
    return from_factors(f.graph, factors * abs(n))


def commutator(f: Automorphism, h: Automorphism) -> Automorphism:
    """[f, h] = f h f⁻¹ h⁻¹"""
    word_service.same_graph(f.graph, h.graph)
    factors = (tuple(f.factors) + tuple(h.factors)
               + _inverse_factors(f) + _inverse_factors(h))
    return from_factors(f.graph, factors)


def conjugate_by(f: Automorphism, h: Automorphism) -> Automorphism:
    """h f h⁻¹"""
    word_service.same_graph(f.graph, h.graph)
    return from_factors(f.graph, tuple(h.factors) + tuple(f.factors) + _inverse_factors(h))


def equal_in_aut(f: Automorphism, h: Automorphism) -> bool:
    """True when the images agree on every generator"""
    word_service.same_graph(f.graph, h.graph)
    return f == h


# ---------------------------------------------------------------------------
# Inner automorphisms and Out

def _peel(g: LabelledGraph, v: str, nf: NormalForm) -> Optional[NormalForm]:
    """The a with nf = a v a⁻¹ read off the normal form, or None"""
    n = len(nf)
    if n < 3 or n % 2 == 0:
        return None
    half = (n - 1) // 2
    if nf.letters[half] != (v, 1):
        return None
    a = NormalForm(g, nf.letters[:half])
    if word_service.conjugate(word_service.generator(g, v), a) != nf:
        return None
    return a


def is_inner_bounded(f: Automorphism, max_len: Optional[int] = None) -> InnerResult:
    """
    Decide whether f is conjugation by an element of length <= max_len

    The conjugator is peeled off the normal form of a moved generator, one
    generator at a time. The rest of the conjugator centralizes the peeled
    generator, so it lies in the subgroup of its star and keeps that
    generator fixed from then on. A failed peel therefore shows that f is
    not inner at any length.

    Args:
        f: Automorphism
        max_len: Conjugator length bound

    Returns:
        InnerResult: Identity, Inner(conjugator) or NotInnerUpTo(max_len)
    """
    max_len = get_settings().out_bound if max_len is None else max_len
    if max_len < 0:
        raise InputError("max_len must be >= 0")

    g = f.graph
    if f.is_identity():
        return InnerResult.identity()

    current = f
    conjugator = word_service.identity(g)
    settled = set()
    while True:
        moved = current.moved()
        if not moved:
            break
        v = moved[0]
        a = None if settled & set(moved) else _peel(g, v, current.image(v))
        if a is None:
            logger.debug(f"Peeling stopped at {v}; not inner")
            return InnerResult.not_inner(max_len, exhaustive=True)
        conjugator = word_service.multiply(conjugator, a)
        current = compose(inner_automorphism(g, word_service.inverse(a)), current)
        settled.add(v)

    if len(conjugator) > max_len:
        logger.debug(f"Conjugator {conjugator} exceeds bound {max_len}")
        return InnerResult.not_inner(max_len, exhaustive=False)

    if inner_automorphism(g, conjugator) != f:
        raise VerificationCounterexample(
            "conjugator does not reproduce the automorphism",
            {"graph": g.to_dict(), "automorphism": f.to_dict(), "conjugator": conjugator.format()},
        )
    return InnerResult.inner(conjugator)


def equal_in_out_bounded(f: Automorphism, h: Automorphism,
                         max_len: Optional[int] = None) -> OutVerdict:
    """
    Equality of f and h in Out, through innerness of f h⁻¹

    Returns:
        OutVerdict: "equal" with a conjugator, or "not-equal-up-to" the bound
    """
    word_service.same_graph(f.graph, h.graph)
    result = is_inner_bounded(compose(f, invert(h)), max_len)
    if result.is_inner:
        conjugator = result.conjugator if result.conjugator is not None else word_service.identity(f.graph)
        return OutVerdict("equal", conjugator=conjugator)
    return OutVerdict("not-equal-up-to", bound=result.bound, exhaustive=result.exhaustive)


def is_trivial_in_out(f: Automorphism, max_len: Optional[int] = None) -> OutVerdict:
    """f compared with the identity in Out"""
    return equal_in_out_bounded(f, identity_automorphism(f.graph), max_len)


# ---------------------------------------------------------------------------
# Factor maps

def factor_map(f: Automorphism, keep: Iterable[str]) -> Automorphism:
    """
    Image of f under the map killing every vertex outside keep

    Args:
        f: Product of partial conjugations
        keep: Vertices spanning the target full subgraph

    Returns:
        Automorphism: Automorphism of G(full_subgraph(keep))

    Raises:
        VerificationCounterexample: The projected images and the projected
            factorisation disagree, or relators fail in the subgraph
    """
    keep = frozenset(keep)
    g = f.graph
    sub = full_subgraph(g, keep)
    images = tuple((v, word_service.project(f.image(v), keep)) for v in sub.vertices)
    factors = tuple((m, frozenset(C & keep), e) for m, C, e in f.factors
                    if m in keep and C & keep)
    image = Automorphism(sub, images, factors)

    if from_factors(sub, factors) != image:
        logger.error("Factor map images disagree with the projected factorisation")
        raise VerificationCounterexample(
            "factor map is not compatible with the factorisation",
            {"graph": g.to_dict(), "automorphism": f.to_dict(), "keep": sorted(keep)},
        )
    try:
        _validate(image)
    except InputError as e:
        raise VerificationCounterexample(
            f"factor map image fails a relator: {e}",
            {"graph": g.to_dict(), "automorphism": f.to_dict(), "keep": sorted(keep)},
        )
    return image


def stil_edge_embedding_word(g: LabelledGraph, stil: StilWitness, indices: Sequence[int],
                             z: Optional[str] = None) -> Automorphism:
    """
    Θ = χ^{x_i1}_z ∘ ... ∘ χ^{x_iℓ}_z on the full subgraph spanned by the STIL

    Args:
        g: Labelled graph
        stil: STIL witness (x1, x2, x3 | Z)
        indices: 1-based positions into (x1, x2, x3)
        z: Vertex of Z, defaults to its smallest member

    Returns:
        Automorphism: Θ over full_subgraph(g, {x1, x2, x3, z})
    """
    z = z if z is not None else stil.z_component[0]
    if z not in stil.component:
        raise InputError(f"{z} is not in the STIL component")
    triple = stil.vertices()
    sub = full_subgraph(g, set(triple) | {z})
    factors = []
    for index in indices:
        if index not in (1, 2, 3):
            raise InputError(f"STIL index must be 1, 2 or 3, got {index}")
        x = triple[index - 1]
        component = next(C for C in components_avoiding(sub, star(sub, x)) if z in C)
        factors.append((x, component, 1))
    return _validate(from_factors(sub, tuple(factors)))
