"""
Verification harness for coxout

Random and exhaustive graph generation, naive re-implementations of the
separation definitions, and property suites that check the structural
lemmas on concrete instances. Every failure is a replayable counterexample.
"""
import json
import logging
import random
import time
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from pathlib import Path
from typing import Any, Dict, FrozenSet, Iterator, List, Optional, Sequence, Set, Tuple

from tqdm import tqdm

from coxout.config import get_settings
from coxout.exceptions import InputError, VerificationCounterexample
from coxout.models.automorphism import Automorphism
from coxout.models.graph import LabelledGraph
from coxout.models.report import GraphSampler, SuiteFailure, VerificationReport
from coxout.models.witness import StilWitness
from coxout.services import automorphism_service as aut
from coxout.services import presentation_service, sil_service, word_service
from coxout.services.graph_service import components_avoiding, graph_from_mapping, is_connected, star
from coxout.utils import dump_json

logger = logging.getLogger("coxout")

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"


# ---------------------------------------------------------------------------
# Graph generation

def _draw(rng: random.Random, sampler: GraphSampler) -> LabelledGraph:
    n = rng.randint(sampler.min_vertices, sampler.max_vertices)
    names = [f"v{i}" for i in range(n)]
    edges = [(a, b) for a, b in combinations(names, 2) if rng.random() < sampler.edge_probability]
    labels = {v: rng.choice(sampler.label_choices) for v in names}
    return LabelledGraph.build(names, edges, labels)


def sample_graph(sampler: GraphSampler) -> LabelledGraph:
    """
    Draw one labelled graph

    Args:
        sampler: Graph distribution, including the seed

    Returns:
        LabelledGraph: Same graph for the same sampler
    """
    return _draw(random.Random(sampler.seed), sampler)


def draw_seed(seed: int, draw: int) -> int:
    """Seed of the draw-th graph of a run started from seed"""
    return seed * 1_000_003 + draw


def exhaustive_graphs(n: int, labels: Sequence[int] = (2,)) -> Iterator[LabelledGraph]:
    """
    Every labelled graph on vertices v0..v{n-1}

    There are 2^(n choose 2) * len(labels)^n of them.
    """
    names = [f"v{i}" for i in range(n)]
    pairs = list(combinations(names, 2))
    for mask in range(2 ** len(pairs)):
        edges = [pair for k, pair in enumerate(pairs) if mask >> k & 1]
        for choice in product(labels, repeat=n):
            yield LabelledGraph.build(names, edges, dict(zip(names, choice)))


# ---------------------------------------------------------------------------
# Naive definitions

def _naive_link(g: LabelledGraph, v: str) -> Set[str]:
    return {b if a == v else a for a, b in g.edges if v in (a, b)}


def naive_components(g: LabelledGraph, removed) -> List[FrozenSet[str]]:
    """Components of Γ minus removed by a plain breadth-first search over the edge list"""
    removed = set(removed)
    seen: Set[str] = set()
    result = []
    for start in g.vertices:
        if start in removed or start in seen:
            continue
        component = {start}
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for a, b in g.edges:
                if v not in (a, b):
                    continue
                u = b if a == v else a
                if u not in removed and u not in component:
                    component.add(u)
                    queue.append(u)
        seen |= component
        result.append(frozenset(component))
    return result


def _separated_components(g: LabelledGraph, group: Sequence[str]) -> List[FrozenSet[str]]:
    common = set.intersection(*(_naive_link(g, v) for v in group))
    return [C for C in naive_components(g, common) if not C & set(group)]


def naive_sils(g: LabelledGraph) -> Set[Tuple[FrozenSet[str], FrozenSet[str]]]:
    """(pair, component) for every SIL, straight from the definition"""
    result = set()
    for x1 in g.vertices:
        for x2 in g.vertices:
            if x1 >= x2 or x2 in _naive_link(g, x1):
                continue
            for C in _separated_components(g, (x1, x2)):
                result.add((frozenset((x1, x2)), C))
    return result


def naive_stils(g: LabelledGraph) -> Set[Tuple[FrozenSet[str], FrozenSet[str]]]:
    """(triple, component) for every STIL"""
    result = set()
    for triple in combinations(g.vertices, 3):
        edges = sum(1 for a, b in combinations(triple, 2) if b in _naive_link(g, a))
        if edges > 1:
            continue
        for C in _separated_components(g, triple):
            result.add((frozenset(triple), C))
    return result


def naive_fsils(g: LabelledGraph) -> Set[FrozenSet[str]]:
    """Triples whose three pairs are separated from the third vertex"""
    result = set()
    for triple in combinations(g.vertices, 3):
        ok = True
        for a, b in combinations(triple, 2):
            (c,) = set(triple) - {a, b}
            if b in _naive_link(g, a) or not any(c in C for C in _separated_components(g, (a, b))):
                ok = False
                break
        if ok:
            result.add(frozenset(triple))
    return result


def closure_minimum(g: LabelledGraph, letters: Sequence[Tuple[str, int]]) -> Tuple[Tuple[str, int], ...]:
    """
    Shortest, then lexicographically least, word reachable by rewriting

    The rewrites swap neighbouring letters of adjacent vertices and merge
    neighbouring letters of the same vertex modulo its order.
    """
    start = tuple((v, e % g.labels[v]) for v, e in letters if e % g.labels[v])
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            (a, e), (b, f) = w[i], w[i + 1]
            if a == b:
                s = (e + f) % g.labels[a]
                step = w[:i] + (((a, s),) if s else ()) + w[i + 2:]
            elif g.is_adjacent(a, b):
                step = w[:i] + (w[i + 1], w[i]) + w[i + 2:]
            else:
                continue
            if step not in seen:
                seen.add(step)
                queue.append(step)
    return min(seen, key=lambda w: (len(w), w))


# ---------------------------------------------------------------------------
# Suites

@dataclass
class Outcome:
    """Verdict of one instance"""
    status: str
    message: str = ""
    verdicts: Dict[str, Any] = field(default_factory=dict)


def _pc(g: LabelledGraph, data: Dict[str, Any]) -> Automorphism:
    return aut.partial_conjugation(g, data["multiplier"], data["support"])


def _components(g: LabelledGraph, v: str) -> List[FrozenSet[str]]:
    return components_avoiding(g, star(g, v))


def _capped(rng: random.Random, items: List[Any], cap: int) -> List[Any]:
    if len(items) <= cap:
        return items
    return [items[i] for i in sorted(rng.sample(range(len(items)), cap))]


def _expect_equal(f: Automorphism, h: Automorphism, bound: int, what: str) -> Outcome:
    verdict = aut.equal_in_out_bounded(f, h, bound)
    verdicts = {what: verdict.to_dict()}
    if verdict.is_equal:
        return Outcome(PASS, verdicts=verdicts)
    if verdict.exhaustive:
        return Outcome(FAIL, f"{what}: the two sides differ in Out", verdicts)
    return Outcome(INCONCLUSIVE, f"{what}: inconclusive at bound {bound}", verdicts)


def _without_large_witness(g: LabelledGraph) -> bool:
    """Connected Coxeter graphs with no STIL and no FSIL"""
    return (all(p == 2 for p in g.labels.values())
            and is_connected(g)
            and sil_service.find_witness(g) is None)


class Suite:
    """A family of instances checked against one statement"""
    name = ""
    statement = ""
    uses_bound = False

    def admits(self, g: LabelledGraph) -> bool:
        return True

    def instances(self, g: LabelledGraph, rng: random.Random, cap: int) -> List[Dict[str, Any]]:
        raise NotImplementedError

    def check(self, g: LabelledGraph, instance: Dict[str, Any], bound: int) -> Outcome:
        raise NotImplementedError


class NonCommuteSuite(Suite):
    name = "noncommute"
    statement = "two partial conjugations fail to commute in Out exactly when a SIL places them"
    uses_bound = True

    def instances(self, g, rng, cap):
        pcs = aut.enumerate_partial_conjugations(g)
        pairs = [(a, b) for a, b in combinations(pcs, 2) if a.multiplier != b.multiplier]
        return [{"first": a.to_dict(), "second": b.to_dict()} for a, b in _capped(rng, pairs, cap)]

    @staticmethod
    def predicted(g: LabelledGraph, x: str, C: FrozenSet[str], y: str, D: FrozenSet[str]) -> bool:
        """The four-clause criterion for non-commutation"""
        for z in g.vertices:
            if z in (x, y) or sil_service.is_sil(g, x, y, z) is None:
                continue
            if ((z in C and C == D) or (x in D and z in C)
                    or (y in C and z in D) or (x in D and y in C)):
                return True
        return False

    def check(self, g, instance, bound):
        first, second = instance["first"], instance["second"]
        x, C = first["multiplier"], frozenset(first["support"])
        y, D = second["multiplier"], frozenset(second["support"])
        noncommuting = self.predicted(g, x, C, y, D)
        verdict = aut.is_trivial_in_out(aut.commutator(_pc(g, first), _pc(g, second)), bound)
        verdicts = {"predicted_noncommuting": noncommuting, "commutator": verdict.to_dict()}
        if noncommuting:
            if verdict.is_equal:
                return Outcome(FAIL, "criterion predicts non-commuting but the commutator is inner", verdicts)
            return Outcome(PASS, verdicts=verdicts)
        if verdict.is_equal:
            return Outcome(PASS, verdicts=verdicts)
        if verdict.exhaustive:
            return Outcome(FAIL, "criterion predicts commuting but the commutator is not inner", verdicts)
        return Outcome(INCONCLUSIVE, f"commutator not shown inner at bound {bound}", verdicts)


class NoOverlapSuite(Suite):
    name = "no_overlap"
    statement = "SILs (x1,x2|z) and (x1,x3|z) give the STIL (x1,x2,x3|z)"

    def admits(self, g):
        return is_connected(g)

    def instances(self, g, rng, cap):
        found = []
        for x1 in g.vertices:
            for x2, x3 in combinations([v for v in g.vertices if v != x1], 2):
                for z in g.vertices:
                    if z in (x1, x2, x3):
                        continue
                    if sil_service.is_sil(g, x1, x2, z) and sil_service.is_sil(g, x1, x3, z):
                        found.append({"x1": x1, "x2": x2, "x3": x3, "z": z})
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        x1, x2, x3, z = instance["x1"], instance["x2"], instance["x3"], instance["z"]
        s1 = sil_service.is_sil(g, x1, x2, z)
        s2 = sil_service.is_sil(g, x1, x3, z)
        stil = sil_service.overlap_to_stil(g, s1, s2, z)
        return Outcome(PASS, verdicts={"stil": stil.to_dict()})


class StilfindSuite(Suite):
    name = "stilfind"
    statement = "two SILs sharing x1 give an FSIL, a STIL or the same-component condition"

    def admits(self, g):
        return is_connected(g)

    def instances(self, g, rng, cap):
        found = []
        for x1 in g.vertices:
            for x2, x3 in combinations([v for v in g.vertices if v != x1], 2):
                ys = [y for y in g.vertices if y not in (x1, x2) and sil_service.is_sil(g, x1, x2, y)]
                zs = [z for z in g.vertices if z not in (x1, x3) and sil_service.is_sil(g, x1, x3, z)]
                for y, z in product(ys, zs):
                    found.append({"x1": x1, "x2": x2, "x3": x3, "y": y, "z": z})
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        outcome = sil_service.stilfind_trichotomy(
            g, instance["x1"], instance["x2"], instance["x3"], instance["y"], instance["z"])
        return Outcome(PASS, verdicts={"case": outcome.case})


class ConjugateTwoSuite(Suite):
    name = "conj_two"
    statement = "conjugating [χ, θ_i] by a partial conjugation θ_j with the multiplier of θ_i"
    uses_bound = True

    def admits(self, g):
        return _without_large_witness(g)

    def instances(self, g, rng, cap):
        found = []
        for x1, x2 in permutations(g.vertices, 2):
            if x1 in star(g, x2):
                continue
            r = len(_components(g, x2))
            for C in _components(g, x1):
                for i, j in product(range(1, r + 1), repeat=2):
                    found.append({"x1": x1, "x2": x2, "support": sorted(C), "i": i, "j": j})
        return _capped(rng, found, cap)

    @staticmethod
    def thetas(g: LabelledGraph, x1: str, x2: str) -> List[FrozenSet[str]]:
        """Components of Γ∖st(x2), the one holding x1 first"""
        components = _components(g, x2)
        return sorted(components, key=lambda C: (x1 not in C, sorted(C)))

    @staticmethod
    def _sil_on(g: LabelledGraph, x1: str, x2: str, S: FrozenSet[str]) -> bool:
        if not S or x1 in S or x2 in S:
            return False
        return all(sil_service.is_sil(g, x1, x2, z) is not None for z in S)

    def check(self, g, instance, bound):
        x1, x2, i, j = instance["x1"], instance["x2"], instance["i"], instance["j"]
        C = frozenset(instance["support"])
        supports = self.thetas(g, x1, x2)
        r = len(supports)
        chi = aut.partial_conjugation(g, x1, C)
        theta = [aut.partial_conjugation(g, x2, S) for S in supports]
        Ci, Cj = supports[i - 1], supports[j - 1]

        swapped = (
            i == j
            or (j == 1 < i and self._sil_on(g, x1, x2, Ci) and (Ci == C or x2 in C))
            or (i == 1 < j and Cj == C and self._sil_on(g, x1, x2, C))
        )
        if swapped:
            case = "swap"
            expected = aut.commutator(theta[i - 1], chi)
        elif i == 1 < j and self._sil_on(g, x1, x2, Cj) and x2 in C:
            case = "spread"
            expected = aut.compose_all(g, [
                aut.commutator(theta[k - 1], chi) if k == j else aut.commutator(chi, theta[k - 1])
                for k in range(2, r + 1)
            ])
        else:
            case = "fixed"
            expected = aut.commutator(chi, theta[i - 1])

        actual = aut.conjugate_by(aut.commutator(chi, theta[i - 1]), theta[j - 1])
        outcome = _expect_equal(actual, expected, bound, "conjugated commutator")
        outcome.verdicts["case"] = case
        return outcome


class RewriteSuite(Suite):
    name = "rewrite"
    statement = "[χ1, χ2] is the product of [χ1, χ_2k] over the other partial conjugations of x2"
    uses_bound = True

    def admits(self, g):
        return _without_large_witness(g)

    def instances(self, g, rng, cap):
        found = []
        for x1, x2 in permutations(g.vertices, 2):
            if x1 in star(g, x2):
                continue
            for C in _components(g, x1):
                found.append({"x1": x1, "x2": x2, "support": sorted(C)})
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        x1, x2 = instance["x1"], instance["x2"]
        chi = aut.partial_conjugation(g, x1, instance["support"])
        supports = ConjugateTwoSuite.thetas(g, x1, x2)
        theta = [aut.partial_conjugation(g, x2, S) for S in supports]
        actual = aut.commutator(chi, theta[0])
        expected = aut.compose_all(g, [aut.commutator(chi, t) for t in theta[1:]])
        return _expect_equal(actual, expected, bound, "rewritten commutator")


class ConjugateThreeSuite(Suite):
    name = "conj_three"
    statement = "χ3 [χ1, χ2] χ3⁻¹ = [χ1, χ2] for three distinct multipliers"
    uses_bound = True

    def admits(self, g):
        return _without_large_witness(g)

    def instances(self, g, rng, cap):
        pcs = aut.enumerate_partial_conjugations(g)
        triples = [t for t in permutations(range(len(pcs)), 3)
                   if len({pcs[k].multiplier for k in t}) == 3]
        return [{"pcs": [pcs[k].to_dict() for k in t]} for t in _capped(rng, triples, cap)]

    def check(self, g, instance, bound):
        chi1, chi2, chi3 = (_pc(g, d) for d in instance["pcs"])
        c = aut.commutator(chi1, chi2)
        return _expect_equal(aut.conjugate_by(c, chi3), c, bound, "conjugated commutator")


class DerivedAbelianSuite(Suite):
    name = "derived_abelian"
    statement = "commutators of partial conjugations commute in Out"
    uses_bound = True

    def admits(self, g):
        return _without_large_witness(g)

    def instances(self, g, rng, cap):
        pcs = aut.enumerate_partial_conjugations(g)
        pairs = [(a, b) for a, b in combinations(range(len(pcs)), 2)
                 if pcs[a].multiplier != pcs[b].multiplier]
        m = len(pairs)
        total = m * (m - 1) // 2
        if total <= cap:
            chosen = list(combinations(range(m), 2))
        else:
            picked = set()
            while len(picked) < cap:
                picked.add(tuple(sorted(rng.sample(range(m), 2))))
            chosen = sorted(picked)
        return [{"pcs": [pcs[k].to_dict() for k in pairs[a] + pairs[b]]} for a, b in chosen]

    def check(self, g, instance, bound):
        chi1, chi2, chi3, chi4 = (_pc(g, d) for d in instance["pcs"])
        c12 = aut.commutator(chi1, chi2)
        c34 = aut.commutator(chi3, chi4)
        return _expect_equal(aut.compose(c12, c34), aut.compose(c34, c12), bound, "commutator product")


class FsilSeparationSuite(Suite):
    name = "fsil_sep"
    statement = "a SIL (x1,x2|x4) with st(x4) separating x1 and x2 gives the FSIL {x1,x2,x4}"

    def instances(self, g, rng, cap):
        found = []
        for x1, x2 in combinations(g.vertices, 2):
            for x4 in g.vertices:
                if x4 in (x1, x2) or x1 in star(g, x4) or x2 in star(g, x4):
                    continue
                if sil_service.is_sil(g, x1, x2, x4) and sil_service.star_separates(g, x4, x1, x2):
                    found.append({"x1": x1, "x2": x2, "x4": x4})
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        witness = sil_service.fsil_from_separating_star(g, instance["x1"], instance["x2"], instance["x4"])
        return Outcome(PASS, verdicts={"fsil": witness.describe()})


class DoubleSeparationSuite(Suite):
    name = "sil_double_sep"
    statement = "st(x1) separating x2, x3 and st(x2) separating x1, x3 give the SIL (x1,x2|x3)"

    @staticmethod
    def _separates(g: LabelledGraph, v: str, a: str, b: str) -> bool:
        st = star(g, v)
        return a not in st and b not in st and sil_service.star_separates(g, v, a, b)

    def instances(self, g, rng, cap):
        found = [{"x1": x1, "x2": x2, "x3": x3}
                 for x1, x2, x3 in permutations(g.vertices, 3)
                 if self._separates(g, x1, x2, x3) and self._separates(g, x2, x1, x3)]
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        x1, x2, x3 = instance["x1"], instance["x2"], instance["x3"]
        sil = sil_service.sil_from_double_separation(g, x1, x2, x3)
        verdicts = {"sil": sil.describe()}
        if self._separates(g, x3, x1, x2):
            if sil_service.is_fsil(g, x1, x2, x3) is None:
                return Outcome(FAIL, "three separating stars but no FSIL", verdicts)
            verdicts["fsil"] = True
        return Outcome(PASS, verdicts=verdicts)


class PresentationSoundSuite(Suite):
    name = "presentation_sound"
    statement = "every relator of the partial conjugation presentation is trivial in Out"
    uses_bound = True

    def instances(self, g, rng, cap):
        p = presentation_service.muehlherr_out0(g)
        found = [{"index": k, "relator": p.format_relator(r)} for k, r in enumerate(p.relators)]
        return _capped(rng, found, cap)

    def check(self, g, instance, bound):
        p = presentation_service.muehlherr_out0(g)
        relator = p.relators[instance["index"]]
        if p.format_relator(relator) != instance["relator"]:
            raise InputError(f"relator {instance['index']} is no longer {instance['relator']}")
        f = presentation_service.relator_automorphism(g, p, relator)
        return _expect_equal(f, aut.identity_automorphism(g), bound, instance["relator"])


class DetectorSuite(Suite):
    name = "detector"
    statement = "the SIL, STIL and FSIL detectors agree with their definitions"

    def instances(self, g, rng, cap):
        return [{}]

    def check(self, g, instance, bound):
        sils = {(s.pair(), s.component) for s in sil_service.enumerate_sils(g)}
        stils = {(frozenset(s.vertices()), s.component) for s in sil_service.enumerate_stils(g)}
        fsils = {frozenset(f.vertices()) for f in sil_service.enumerate_fsils(g)}
        expected_sils, expected_stils, expected_fsils = naive_sils(g), naive_stils(g), naive_fsils(g)

        heavy = any(max(g.labels[v] for v in pair) >= 3 for pair, _ in expected_sils)
        large = bool(expected_stils or expected_fsils or heavy)
        witness = sil_service.find_witness(g)
        verdicts = {
            "sils": len(sils), "stils": len(stils), "fsils": len(fsils),
            "witness": witness.describe() if witness is not None else None,
        }
        problems = []
        if sils != expected_sils:
            problems.append("SIL sets differ")
        if stils != expected_stils:
            problems.append("STIL sets differ")
        if fsils != expected_fsils:
            problems.append("FSIL sets differ")
        if (witness is not None) != large:
            problems.append("largeness witness disagrees")
        if problems:
            return Outcome(FAIL, "; ".join(problems), verdicts)
        return Outcome(PASS, verdicts=verdicts)


class NormalFormSuite(Suite):
    name = "normal_form"
    statement = "normal forms are the least words reachable by commuting and merging"
    max_length = 8

    def instances(self, g, rng, cap):
        if not g.vertices:
            return []
        found = []
        for _ in range(min(cap, 20)):
            letters = []
            for _ in range(rng.randint(0, self.max_length)):
                v = rng.choice(g.vertices)
                letters.append([v, rng.randint(1, g.labels[v] - 1)])
            found.append({"letters": letters})
        return found

    def check(self, g, instance, bound):
        letters = [tuple(item) for item in instance["letters"]]
        actual = word_service.normal_form(g, letters)
        expected = closure_minimum(g, letters)
        verdicts = {"normal_form": actual.format(), "closure": [list(x) for x in expected]}
        if actual.letters != expected:
            return Outcome(FAIL, "normal form is not the least reachable word", verdicts)
        return Outcome(PASS, verdicts=verdicts)


class StilEdgeSuite(Suite):
    name = "stil_edge"
    statement = "Θ built from a word in the STIL triple is trivial exactly when the word is"
    uses_bound = True
    max_length = 6

    @staticmethod
    def find_stil(g: LabelledGraph) -> Optional[StilWitness]:
        for stil in sil_service.iter_stils(g):
            if sil_service.stil_edge(g, stil) is not None:
                return stil
        return None

    def admits(self, g):
        return all(p == 2 for p in g.labels.values()) and self.find_stil(g) is not None

    def instances(self, g, rng, cap):
        stil = self.find_stil(g).to_dict()
        sequences = [list(s) for length in range(1, self.max_length + 1)
                     for s in product((1, 2, 3), repeat=length)]
        return [{"stil": stil, "indices": s} for s in _capped(rng, sequences, cap)]

    def check(self, g, instance, bound):
        stil = StilWitness.model_validate(instance["stil"])
        indices = instance["indices"]
        theta = aut.stil_edge_embedding_word(g, stil, indices)
        sub = theta.graph
        triple = stil.vertices()
        z = stil.z_component[0]
        word = word_service.normal_form(sub, [(triple[k - 1], 1) for k in indices])
        expected = word_service.conjugate(word_service.generator(sub, z), word_service.inverse(word))
        verdicts = {"word": word.format(), "image": theta.image(z).format()}

        if theta.image(z) != expected:
            return Outcome(FAIL, "Θ moves z to the wrong word", verdicts)
        for x in triple:
            if theta.image(x) != word_service.generator(sub, x):
                return Outcome(FAIL, f"Θ moves {x}", verdicts)
        if word.is_empty():
            if not theta.is_identity():
                return Outcome(FAIL, "trivial word gives a non-trivial Θ", verdicts)
            return Outcome(PASS, verdicts=verdicts)
        verdict = aut.is_trivial_in_out(theta, bound)
        verdicts["out"] = verdict.to_dict()
        if verdict.is_equal:
            return Outcome(FAIL, "non-trivial word gives an inner Θ", verdicts)
        return Outcome(PASS, verdicts=verdicts)


SUITES: Dict[str, Suite] = {suite.name: suite for suite in (
    NonCommuteSuite(),
    NoOverlapSuite(),
    StilfindSuite(),
    ConjugateTwoSuite(),
    RewriteSuite(),
    ConjugateThreeSuite(),
    DerivedAbelianSuite(),
    FsilSeparationSuite(),
    DoubleSeparationSuite(),
    PresentationSoundSuite(),
    DetectorSuite(),
    NormalFormSuite(),
    StilEdgeSuite(),
)}


def get_suite(name: str) -> Suite:
    """
    Look up a suite by name

    Raises:
        InputError: Unknown suite
    """
    suite = SUITES.get(name)
    if suite is None:
        raise InputError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return suite


# ---------------------------------------------------------------------------
# Runner

class VerificationService:
    """Runs suites over sampled or exhaustive graphs and keeps counterexamples"""

    def __init__(self, reports_dir: Optional[str] = "reports", bound_escalation: int = 2,
                 max_sample_attempts: int = 40, max_instances: int = 200,
                 max_exhaustive_vertices: int = 6):
        """
        Initialize verification service

        Args:
            reports_dir: Directory for failure files, None to keep them in memory
            bound_escalation: Factor applied once to the bound of an inconclusive instance
            max_sample_attempts: Draws allowed per requested trial for filtered suites
            max_instances: Instances checked per admitted graph
            max_exhaustive_vertices: Largest vertex count accepted in exhaustive mode
        """
        self.reports_dir = reports_dir
        self.bound_escalation = bound_escalation
        self.max_sample_attempts = max_sample_attempts
        self.max_instances = max_instances
        self.max_exhaustive_vertices = max_exhaustive_vertices

    @classmethod
    def from_settings(cls, reports_dir: Optional[str] = None) -> "VerificationService":
        settings = get_settings()
        return cls(
            reports_dir=reports_dir if reports_dir is not None else settings.reports_dir,
            bound_escalation=settings.bound_escalation,
            max_sample_attempts=settings.max_sample_attempts,
            max_instances=settings.max_instances,
            max_exhaustive_vertices=settings.max_exhaustive_vertices,
        )

    def check_instance(self, suite: Suite, g: LabelledGraph, instance: Dict[str, Any],
                       bound: int) -> Tuple[Outcome, int]:
        """
        Check one instance, escalating the bound once when inconclusive

        Returns:
            Tuple[Outcome, int]: Outcome and the bound it was reached at
        """
        try:
            outcome = suite.check(g, instance, bound)
            if outcome.status == INCONCLUSIVE and suite.uses_bound and self.bound_escalation > 1:
                escalated = bound * self.bound_escalation
                logger.debug(f"{suite.name}: escalating bound {bound} -> {escalated}")
                bound = escalated
                outcome = suite.check(g, instance, bound)
        except VerificationCounterexample as e:
            outcome = Outcome(FAIL, str(e), {"payload": e.payload})
        return outcome, bound

    def _graphs(self, suite: Suite, sampler: GraphSampler, trials: int, exhaustive: bool,
                report: VerificationReport) -> Iterator[Tuple[int, int, LabelledGraph]]:
        if exhaustive:
            if sampler.max_vertices > self.max_exhaustive_vertices:
                raise InputError(
                    f"exhaustive runs are limited to {self.max_exhaustive_vertices} vertices")
            index = 0
            for n in range(sampler.min_vertices, sampler.max_vertices + 1):
                for g in exhaustive_graphs(n, sampler.label_choices):
                    index += 1
                    if suite.admits(g):
                        yield index, draw_seed(sampler.seed, index), g
                    else:
                        report.skipped += 1
            return

        admitted = 0
        for draw in range(trials * self.max_sample_attempts):
            if admitted >= trials:
                break
            seed = draw_seed(sampler.seed, draw)
            g = sample_graph(sampler.model_copy(update={"seed": seed}))
            if not suite.admits(g):
                report.skipped += 1
                continue
            admitted += 1
            yield draw, seed, g
        if admitted < trials:
            logger.warning(f"{suite.name}: only {admitted} of {trials} graphs admitted")

    def run_suite(self, name: str, sampler: GraphSampler, trials: int, bound: int,
                  exhaustive: bool = False, progress: bool = False) -> VerificationReport:
        """
        Run a suite

        Args:
            name: Suite name
            sampler: Graph distribution; in exhaustive mode only its vertex
                range, labels and seed are used
            trials: Admitted graphs wanted in sampled mode
            bound: Conjugator length bound for Out-equality
            exhaustive: Enumerate every graph instead of sampling
            progress: Show a progress bar on stderr

        Returns:
            VerificationReport: Counts plus every failure and inconclusive instance

        Raises:
            InputError: Unknown suite or bad arguments
        """
        suite = get_suite(name)
        if trials < 0 or bound < 0:
            raise InputError("trials and bound must be >= 0")
        logger.info(f"Running suite {name} (trials={trials}, bound={bound}, exhaustive={exhaustive})")

        report = VerificationReport(suite=name, seed=sampler.seed, bound=bound, trials=trials)
        start = time.time()
        with tqdm(total=None if exhaustive else trials, desc=name, unit="graph",
                  disable=not progress) as bar:
            for trial, seed, g in self._graphs(suite, sampler, trials, exhaustive, report):
                report.graphs += 1
                bar.update(1)
                rng = random.Random(seed)
                for instance in suite.instances(g, rng, self.max_instances):
                    report.instances += 1
                    outcome, reached = self.check_instance(suite, g, instance, bound)
                    if outcome.status == PASS:
                        report.passed += 1
                        continue
                    record = SuiteFailure(suite=name, trial=trial, graph=g.to_dict(), instance=instance,
                                          message=outcome.message, verdicts=outcome.verdicts, bound=reached)
                    if outcome.status == FAIL:
                        logger.error(f"{name} trial {trial}: {outcome.message}")
                        report.failures.append(record)
                        path = self._persist(record, len(report.failures))
                        if path is not None:
                            report.report_paths.append(path)
                    else:
                        logger.warning(f"{name} trial {trial}: {outcome.message}")
                        report.inconclusive.append(record)

        report.duration_seconds = time.time() - start
        logger.info(f"Suite {name} finished: {report.passed} passed, "
                    f"{len(report.failures)} failed, {len(report.inconclusive)} inconclusive")
        return report

    def _persist(self, failure: SuiteFailure, ordinal: int) -> Optional[str]:
        if self.reports_dir is None:
            return None
        directory = Path(self.reports_dir)
        directory.mkdir(parents=True, exist_ok=True)
        path = directory / f"{failure.suite}-trial{failure.trial}-{ordinal}.json"
        path.write_text(dump_json(failure.to_dict()) + "\n", encoding="utf-8")
        logger.info(f"Counterexample written to {path}")
        return str(path)

    def replay_failure(self, path: str) -> Outcome:
        """
        Re-run a persisted counterexample at its recorded bound

        Raises:
            InputError: Unreadable file, unknown suite or a graph the suite does not admit
        """
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError) as e:
            raise InputError(f"cannot read failure file {path}: {e}")
        failure = SuiteFailure.model_validate(data)
        suite = get_suite(failure.suite)
        g = graph_from_mapping(failure.graph)
        if not suite.admits(g):
            raise InputError(f"suite {suite.name} does not admit the recorded graph")
        logger.info(f"Replaying {suite.name} trial {failure.trial} at bound {failure.bound}")
        outcome, _ = self.check_instance(suite, g, failure.instance, failure.bound)
        return outcome


def run_suite(name: str, sampler: GraphSampler, trials: int, bound: Optional[int] = None,
              exhaustive: bool = False) -> VerificationReport:
    """Run a suite with configured settings, keeping failures in memory"""
    service = VerificationService.from_settings()
    service.reports_dir = None
    return service.run_suite(name, sampler, trials,
                             get_settings().out_bound if bound is None else bound, exhaustive)


def replay_failure(path: str) -> Outcome:
    """Re-run a persisted counterexample with configured settings"""
    return VerificationService.from_settings().replay_failure(path)
