"""
Finite / virtually abelian / large decision for coxout
"""
import logging
from typing import List

from coxout.exceptions import InputError
from coxout.models.classification import (
    Classification,
    ComponentQuotient,
    DisconnectedStructure,
    GraphSummary,
    Verdict,
)
from coxout.models.graph import LabelledGraph
from coxout.models.witness import FsilWitness, NonCoxeterSilWitness, StilWitness
from coxout.services import sil_service, word_service
from coxout.services.graph_service import components, full_subgraph, join

logger = logging.getLogger("coxout")

FINITENESS_CRITERION = ("Out of a graph product of prime power order cyclic groups "
                        "is finite exactly when the graph has no SIL")
DICHOTOMY = ("Out is large exactly when the graph has a STIL, an FSIL or a "
             "non-Coxeter SIL, and virtually abelian otherwise")


def summarize(g: LabelledGraph) -> GraphSummary:
    return GraphSummary(
        vertex_count=len(g.vertices),
        edge_count=len(g.edges),
        components=[sorted(C) for C in components(g)],
        coxeter=g.is_coxeter(),
    )


def _large_reason(witness) -> str:
    if isinstance(witness, FsilWitness):
        return "factor map to the FSIL triple lands in Out of Z2*Z2*Z2, which is virtually free"
    if isinstance(witness, StilWitness):
        return "factor map to the STIL quadruple has a virtually non-abelian free image"
    if isinstance(witness, NonCoxeterSilWitness):
        return "factor map to the SIL triple contains a free product of two cyclic groups, not both of order 2"
    return DICHOTOMY


def classify(g: LabelledGraph) -> Classification:
    """
    Classify Out(G(Γ,p))

    Args:
        g: Labelled graph

    Returns:
        Classification: Large when find_witness succeeds; otherwise
        virtually abelian and infinite when a SIL exists; otherwise finite
    """
    summary = summarize(g)
    witness = sil_service.find_witness(g)
    if witness is not None:
        result = Classification(
            verdict=Verdict.LARGE,
            witness=witness,
            justification=[
                f"{witness.describe()} found",
                _large_reason(witness),
                DICHOTOMY,
            ],
            summary=summary,
        )
    else:
        sil = next(sil_service.iter_sils(g), None)
        if sil is not None:
            result = Classification(
                verdict=Verdict.VIRTUALLY_ABELIAN_INFINITE,
                witness=sil,
                justification=[
                    f"{sil.describe()} found",
                    "no STIL, FSIL or non-Coxeter SIL",
                    FINITENESS_CRITERION,
                    DICHOTOMY,
                ],
                summary=summary,
            )
        else:
            result = Classification(
                verdict=Verdict.FINITE,
                justification=["no SIL", FINITENESS_CRITERION],
                summary=summary,
            )
    logger.info(f"Classified graph on {summary.vertex_count} vertices: {result.verdict.value}")
    return result


def disconnected_structure(g: LabelledGraph) -> DisconnectedStructure:
    """
    Defining graph of Out⁰ for a disconnected graph without STIL or FSIL

    Out⁰ is the right-angled Coxeter group on join(Γ1∖K1, Γ2∖K2), where Ki
    is the set of vertices of Γi adjacent to all of Γi.

    Raises:
        InputError: Connected input, non-Coxeter labels, three or more
            components (an FSIL), or a STIL / FSIL present
    """
    parts = components(g)
    if len(parts) < 2:
        raise InputError("graph is connected")
    if len(parts) > 2:
        fsil = sil_service.is_fsil(g, *(min(C) for C in parts[:3]))
        raise InputError(f"graph has {len(parts)} components; {fsil.describe()}")
    if not g.is_coxeter():
        raise InputError("disconnected structure needs every vertex order to be 2")
    witness = sil_service.find_witness(g)
    if witness is not None:
        raise InputError(f"graph contains {witness.describe()}")

    quotients: List[ComponentQuotient] = []
    for C in parts:
        sub = full_subgraph(g, C)
        clique = word_service.central_clique(sub)
        quotients.append(ComponentQuotient(
            component=sorted(C),
            central_clique=sorted(clique),
            remainder=full_subgraph(g, C - clique),
        ))
    out0 = join(quotients[0].remainder, quotients[1].remainder)
    logger.info(f"Out0 defining graph has {len(out0.vertices)} vertices")
    return DisconnectedStructure(out0_defining_graph=out0, factor_quotients=quotients)
