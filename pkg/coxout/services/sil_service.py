"""
Separating intersections of links for coxout

Detectors for SILs, STILs, FSILs and non-Coxeter SILs, and the lemma helpers
that turn overlapping or separated configurations into new witnesses. Lemma
helpers raise VerificationCounterexample when their conclusion fails.
"""
import logging
from itertools import combinations
from typing import Iterator, List, Optional

from coxout.exceptions import InputError, VerificationCounterexample
from coxout.models.graph import LabelledGraph, VertexSet
from coxout.models.witness import (
    FsilWitness,
    LargeWitness,
    NonCoxeterSilWitness,
    SilWitness,
    StilfindOutcome,
    StilWitness,
)
from coxout.services.graph_service import (
    common_link,
    component_of,
    components_avoiding,
    full_subgraph,
    is_connected,
    star,
)

logger = logging.getLogger("coxout")


def _distinct(g: LabelledGraph, *vertices: str) -> None:
    g.require(*vertices)
    if len(set(vertices)) != len(vertices):
        raise InputError(f"vertices must be distinct: {', '.join(vertices)}")


def _edge_count(g: LabelledGraph, vertices) -> int:
    return sum(1 for u, v in combinations(vertices, 2) if g.is_adjacent(u, v))


def _avoiding_component(g: LabelledGraph, removed: VertexSet, z: str, avoid) -> Optional[VertexSet]:
    if z in removed:
        return None
    component = component_of(g, removed, z)
    if component & set(avoid):
        return None
    return component


# ---------------------------------------------------------------------------
# SIL

def is_sil(g: LabelledGraph, x1: str, x2: str, z: str) -> Optional[SilWitness]:
    """
    Check whether (x1, x2 | z) is a SIL

    Args:
        g: Labelled graph
        x1, x2: Non-adjacent pair
        z: Vertex whose component is inspected

    Returns:
        Optional[SilWitness]: Witness carrying the whole component of z, or None
    """
    _distinct(g, x1, x2, z)
    if g.is_adjacent(x1, x2):
        return None
    component = _avoiding_component(g, common_link(g, x1, x2), z, (x1, x2))
    if component is None:
        return None
    return SilWitness(x1=x1, x2=x2, z_component=component)


def sil_components(g: LabelledGraph, x1: str, x2: str) -> List[VertexSet]:
    """Components Z with (x1, x2 | Z) a SIL, ordered by smallest member"""
    _distinct(g, x1, x2)
    if g.is_adjacent(x1, x2):
        return []
    return [C for C in components_avoiding(g, common_link(g, x1, x2))
            if x1 not in C and x2 not in C]


def iter_sils(g: LabelledGraph) -> Iterator[SilWitness]:
    """SIL witnesses, pairs in identifier order then components"""
    for x1, x2 in combinations(g.vertices, 2):
        for component in sil_components(g, x1, x2):
            yield SilWitness(x1=x1, x2=x2, z_component=component)


def enumerate_sils(g: LabelledGraph) -> List[SilWitness]:
    """All (pair, component) SIL witnesses"""
    return list(iter_sils(g))


# ---------------------------------------------------------------------------
# STIL

def is_stil(g: LabelledGraph, x1: str, x2: str, x3: str, z: str) -> Optional[StilWitness]:
    """
    Check whether (x1, x2, x3 | z) is a STIL

    The triple spans at most one edge and the component of z in
    Γ∖(lk(x1)∩lk(x2)∩lk(x3)) contains none of x1, x2, x3.
    """
    _distinct(g, x1, x2, x3, z)
    if _edge_count(g, (x1, x2, x3)) > 1:
        return None
    component = _avoiding_component(g, common_link(g, x1, x2, x3), z, (x1, x2, x3))
    if component is None:
        return None
    return StilWitness(x1=x1, x2=x2, x3=x3, z_component=component)


def stil_components(g: LabelledGraph, x1: str, x2: str, x3: str) -> List[VertexSet]:
    """Components Z with (x1, x2, x3 | Z) a STIL"""
    _distinct(g, x1, x2, x3)
    if _edge_count(g, (x1, x2, x3)) > 1:
        return []
    triple = {x1, x2, x3}
    return [C for C in components_avoiding(g, common_link(g, x1, x2, x3))
            if not C & triple]


def iter_stils(g: LabelledGraph) -> Iterator[StilWitness]:
    """STIL witnesses, triples in identifier order, one per component"""
    for x1, x2, x3 in combinations(g.vertices, 3):
        for component in stil_components(g, x1, x2, x3):
            yield StilWitness(x1=x1, x2=x2, x3=x3, z_component=component)


def enumerate_stils(g: LabelledGraph) -> List[StilWitness]:
    return list(iter_stils(g))


def stil_edge(g: LabelledGraph, stil: StilWitness) -> Optional[tuple]:
    """The single edge inside the STIL triple, if there is one"""
    for u, v in combinations(stil.vertices(), 2):
        if g.is_adjacent(u, v):
            return (u, v)
    return None


# ---------------------------------------------------------------------------
# FSIL

def is_fsil(g: LabelledGraph, x1: str, x2: str, x3: str) -> Optional[FsilWitness]:
    """
    Check whether {x1, x2, x3} is an FSIL

    Returns:
        Optional[FsilWitness]: The witness with SILs (x1,x2|x3), (x1,x3|x2),
        (x2,x3|x1), or None
    """
    _distinct(g, x1, x2, x3)
    sils = []
    for a, b, c in ((x1, x2, x3), (x1, x3, x2), (x2, x3, x1)):
        sil = is_sil(g, a, b, c)
        if sil is None:
            return None
        sils.append(sil)
    return FsilWitness(x1=x1, x2=x2, x3=x3, sils=tuple(sils))


def iter_fsils(g: LabelledGraph) -> Iterator[FsilWitness]:
    for triple in combinations(g.vertices, 3):
        witness = is_fsil(g, *triple)
        if witness is not None:
            yield witness


def enumerate_fsils(g: LabelledGraph) -> List[FsilWitness]:
    """All FSIL triples in identifier order"""
    return list(iter_fsils(g))


# ---------------------------------------------------------------------------
# Largeness witnesses

def non_coxeter(g: LabelledGraph, sil: SilWitness) -> Optional[NonCoxeterSilWitness]:
    """Promote a SIL to a non-Coxeter SIL when one of its pair has order >= 3"""
    if g.labels[sil.x1] >= 3:
        return NonCoxeterSilWitness(underlying=sil, heavy_vertex=sil.x1)
    if g.labels[sil.x2] >= 3:
        return NonCoxeterSilWitness(underlying=sil, heavy_vertex=sil.x2)
    return None


def find_witness(g: LabelledGraph) -> Optional[LargeWitness]:
    """
    First largeness witness: FSIL, then STIL, then non-Coxeter SIL

    Returns:
        Optional[LargeWitness]: Witness, or None when Out is not large
    """
    for witness in iter_fsils(g):
        logger.debug(f"Detector hit: {witness.describe()}")
        return witness
    for witness in iter_stils(g):
        logger.debug(f"Detector hit: {witness.describe()}")
        return witness
    for sil in iter_sils(g):
        witness = non_coxeter(g, sil)
        if witness is not None:
            logger.debug(f"Detector hit: {witness.describe()}")
            return witness
    return None


# ---------------------------------------------------------------------------
# Lemma helpers

def _payload(g: LabelledGraph, **details) -> dict:
    data = {"graph": g.to_dict()}
    data.update(details)
    return data


def overlap_to_stil(g: LabelledGraph, s1: SilWitness, s2: SilWitness, z: str) -> StilWitness:
    """
    Two SILs sharing x1 with overlapping components give a STIL

    Args:
        g: Connected labelled graph
        s1: (x1, x2 | Z)
        s2: (x1, x3 | Z')
        z: Vertex of Z ∩ Z'

    Returns:
        StilWitness: (x1, x2, x3 | z)

    Raises:
        InputError: Preconditions violated
        VerificationCounterexample: No STIL found
    """
    if not is_connected(g):
        raise InputError("overlap_to_stil needs a connected graph")
    if s1.x1 != s2.x1:
        raise InputError("the two SILs must share their first vertex")
    x1, x2, x3 = s1.x1, s1.x2, s2.x2
    if x2 == x3:
        raise InputError("the two SILs must have different second vertices")
    for sil in (s1, s2):
        if sil_components(g, sil.x1, sil.x2).count(sil.component) != 1:
            raise InputError(f"{sil.describe()} is not a SIL of this graph")
    if z not in s1.component or z not in s2.component:
        raise InputError(f"{z} is not in both SIL components")

    witness = is_stil(g, x1, x2, x3, z)
    if witness is None:
        logger.error(f"Overlapping SILs at {z} did not give a STIL")
        raise VerificationCounterexample(
            "overlapping SILs did not give a STIL",
            _payload(g, check="overlap_to_stil", sils=[s1.to_dict(), s2.to_dict()], z=z),
        )
    return witness


def _same_component(g: LabelledGraph, keep, members) -> bool:
    keep = frozenset(keep)
    if not set(members) <= keep:
        return False
    sub = full_subgraph(g, keep)
    return set(members) <= component_of(sub, (), members[0])


def stilfind_trichotomy(g: LabelledGraph, x1: str, x2: str, x3: str,
                        y: str, z: str) -> StilfindOutcome:
    """
    Given SILs (x1, x2 | y) and (x1, x3 | z), report which clause holds

    Clauses are tried in order: a STIL (x1, x2, x3 | w), the FSIL
    {x1, x2, x3}, and finally the component condition on
    (Γ∖st(x3))∪{x2} and (Γ∖st(x2))∪{x3}.

    Raises:
        InputError: The two SILs do not exist
        VerificationCounterexample: None of the clauses holds
    """
    _distinct(g, x1, x2, x3)
    if is_sil(g, x1, x2, y) is None or is_sil(g, x1, x3, z) is None:
        raise InputError(f"({x1},{x2}|{y}) and ({x1},{x3}|{z}) must both be SILs")

    for w in g.vertices:
        if w in (x1, x2, x3):
            continue
        stil = is_stil(g, x1, x2, x3, w)
        if stil is not None:
            return StilfindOutcome(case="stil", stil=stil)

    fsil = is_fsil(g, x1, x2, x3)
    if fsil is not None:
        return StilfindOutcome(case="fsil", fsil=fsil)

    everything = g.vertex_set
    first = _same_component(g, (everything - star(g, x3)) | {x2}, (x1, x2, y))
    second = _same_component(g, (everything - star(g, x2)) | {x3}, (x1, x3, z))
    if first and second:
        return StilfindOutcome(case="same-component")

    logger.error(f"No clause of the two-SIL trichotomy holds for ({x1},{x2},{x3}; {y},{z})")
    raise VerificationCounterexample(
        "no clause of the two-SIL trichotomy holds",
        _payload(g, check="stilfind", tuple=[x1, x2, x3, y, z]),
    )


def star_separates(g: LabelledGraph, v: str, a: str, b: str) -> bool:
    """
    True when a and b lie in different components of Γ∖st(v)

    Raises:
        InputError: a or b lies in st(v)
    """
    _distinct(g, v, a, b)
    st = star(g, v)
    if a in st or b in st:
        raise InputError(f"{a} and {b} must lie outside st({v})")
    return b not in component_of(g, st, a)


def fsil_from_separating_star(g: LabelledGraph, x1: str, x2: str, x4: str) -> FsilWitness:
    """
    {x1, x2, x4} is an FSIL when (x1, x2 | x4) is a SIL and st(x4) separates x1, x2

    Raises:
        InputError: Hypothesis violated
        VerificationCounterexample: The triple is not an FSIL
    """
    _distinct(g, x1, x2, x4)
    if is_sil(g, x1, x2, x4) is None:
        raise InputError(f"({x1},{x2}|{x4}) is not a SIL")
    if not star_separates(g, x4, x1, x2):
        raise InputError(f"st({x4}) does not separate {x1} and {x2}")
    witness = is_fsil(g, x1, x2, x4)
    if witness is None:
        logger.error(f"Separating star of {x4} did not give an FSIL")
        raise VerificationCounterexample(
            "separating star did not give an FSIL",
            _payload(g, check="fsil_from_separating_star", tuple=[x1, x2, x4]),
        )
    return witness


def sil_from_double_separation(g: LabelledGraph, x1: str, x2: str, x3: str) -> SilWitness:
    """
    (x1, x2 | x3) is a SIL when st(x1) separates x2, x3 and st(x2) separates x1, x3

    Raises:
        InputError: Either separation fails
        VerificationCounterexample: The SIL is missing
    """
    _distinct(g, x1, x2, x3)
    if not star_separates(g, x1, x2, x3):
        raise InputError(f"st({x1}) does not separate {x2} and {x3}")
    if not star_separates(g, x2, x1, x3):
        raise InputError(f"st({x2}) does not separate {x1} and {x3}")
    witness = is_sil(g, x1, x2, x3)
    if witness is None:
        logger.error(f"Double separation did not give ({x1},{x2}|{x3})")
        raise VerificationCounterexample(
            "double separation did not give a SIL",
            _payload(g, check="sil_from_double_separation", tuple=[x1, x2, x3]),
        )
    return witness
