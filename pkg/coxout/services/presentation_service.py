"""
Presentations of Out⁰ and Tietze simplification for coxout

Relators are cyclic words of syllables (generator, exponent). The Tietze
engine only eliminates: it cyclically reduces relators, turns single
syllable relators into torsion rules, deletes duplicates and removes a
generator occurring exactly once in some relator.
"""
import logging
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, ZZ, factorint
from sympy.matrices.normalforms import smith_normal_form

from coxout.config import get_settings
from coxout.exceptions import InputError, ParseError, VerificationCounterexample
from coxout.models.automorphism import Automorphism
from coxout.models.graph import LabelledGraph
from coxout.models.presentation import (
    AbelianInvariants,
    FormTag,
    GeneratorTag,
    Presentation,
    Relator,
    Syllable,
)
from coxout.models.witness import StilWitness
from coxout.services import automorphism_service
from coxout.services.graph_service import components_avoiding, full_subgraph, star
from coxout.services.sil_service import star_separates, stil_edge

logger = logging.getLogger("coxout")

CASES = ("only-1", "1+2", "1+2+3")


# ---------------------------------------------------------------------------
# Words in the free group

def free_reduce(word: Iterable[Syllable]) -> Relator:
    """Merge neighbouring syllables of one generator and drop zero exponents"""
    out: List[Syllable] = []
    for name, e in word:
        if out and out[-1][0] == name:
            total = out[-1][1] + e
            if total:
                out[-1] = (name, total)
            else:
                out.pop()
        elif e:
            out.append((name, e))
    return tuple(out)


def cyclic_reduce(word: Iterable[Syllable]) -> Relator:
    """Free reduction up to rotation"""
    out = list(free_reduce(word))
    while len(out) > 1 and out[0][0] == out[-1][0]:
        name, e = out[0][0], out[0][1] + out[-1][1]
        out = out[1:-1]
        if e:
            out = list(free_reduce([(name, e)] + out))
    return tuple(out)


def invert_word(word: Sequence[Syllable]) -> Relator:
    return tuple((name, -e) for name, e in reversed(word))


def canonical(word: Sequence[Syllable]) -> Relator:
    """Least rotation of the word or its inverse"""
    word = cyclic_reduce(word)
    if not word:
        return ()
    candidates = []
    for w in (word, invert_word(word)):
        for i in range(len(w)):
            candidates.append(tuple(w[i:]) + tuple(w[:i]))
    return min(candidates)


def commutator_relator(a: str, b: str) -> Relator:
    """[a, b] = a b a⁻¹ b⁻¹"""
    return ((a, 1), (b, 1), (a, -1), (b, -1))


def parse_relator(text: str, line: Optional[int] = None) -> Relator:
    """Parse `a b^-1 c^2`; `1` is the empty relator"""
    tokens = text.split()
    if tokens in ([], ["1"]):
        return ()
    word = []
    for token in tokens:
        name, _, exp = token.partition("^")
        try:
            e = int(exp) if exp else 1
        except ValueError:
            raise ParseError(f"bad exponent in relator token {token!r}", line)
        word.append((name, e))
    return free_reduce(word)


# ---------------------------------------------------------------------------
# Building presentations

def _build(g: LabelledGraph, supports: Sequence[Tuple[str, Sequence[frozenset]]],
           case: Optional[str] = None, quad: Optional[Tuple[str, ...]] = None) -> Presentation:
    """
    Presentation on the given partial conjugations with relator families
    (a) commuting pairs, (b) products over one multiplier, (c) orders
    """
    generators: List[str] = []
    tags: Dict[str, GeneratorTag] = {}
    owners: List[Tuple[str, str, frozenset]] = []
    for v, supps in supports:
        for C in supps:
            tag = GeneratorTag(multiplier=v, support=tuple(sorted(C)))
            name = f"chi[{v}|{','.join(tag.support)}]"
            generators.append(name)
            tags[name] = tag
            owners.append((name, v, frozenset(C)))

    relators: List[Relator] = []
    seen = set()

    def add(relator: Relator) -> None:
        key = canonical(relator)
        if key and key not in seen:
            seen.add(key)
            relators.append(relator)

    for i, (a, v, C) in enumerate(owners):
        for b, w, D in owners[i + 1:]:
            if v == w:
                continue
            if g.is_adjacent(v, w) or not (C | {v}) & (D | {w}):
                add(commutator_relator(a, b))
    for v, supps in supports:
        names = [name for name, owner, _ in owners if owner == v]
        if names:
            add(tuple((name, 1) for name in names))
    for name, v, _ in owners:
        add(((name, g.labels[v]),))

    return Presentation(generators=generators, relators=relators, tags=tags,
                        case=case, quad=tuple(quad) if quad else None)


def muehlherr_out0(g: LabelledGraph) -> Presentation:
    """
    Presentation of Out⁰ on all partial conjugations

    Relators: [χ^v_C, χ^w_D] when v, w are adjacent or (C∪{v})∩(D∪{w}) = ∅;
    the product of all partial conjugations with one multiplier; and
    (χ^v_C)^p(v).
    """
    supports = []
    for v in g.vertices:
        comps = components_avoiding(g, star(g, v))
        if comps:
            supports.append((v, comps))
    presentation = _build(g, supports)
    logger.debug(f"Out0 presentation: {len(presentation.generators)} generators, "
                 f"{len(presentation.relators)} relators")
    return presentation


def _template(x1: str, x2: str, x3: str, x4: str, case: str) -> List[Tuple[str, List[frozenset]]]:
    f = frozenset
    one = {
        "only-1": [f({x4}), f({x2, x3})],
        "1+2": [f({x4}), f({x2}), f({x3})],
        "1+2+3": [f({x4}), f({x2}), f({x3})],
    }[case]
    two = {
        "only-1": [f({x4}), f({x1, x3})],
        "1+2": [f({x4}), f({x1, x3})],
        "1+2+3": [f({x4}), f({x1}), f({x3})],
    }[case]
    three = [f({x4}), f({x1, x2})]
    return [(x1, one), (x2, two), (x3, three)]


def _image_supports(g: LabelledGraph, quad: Sequence[str]) -> List[Tuple[str, List[frozenset]]]:
    """Supports of the partial conjugations with multiplier in the triple, cut down to quad"""
    keep = frozenset(quad)
    result = []
    for v in quad[:3]:
        cut = {C & keep for C in components_avoiding(g, star(g, v))} - {frozenset()}
        result.append((v, sorted(cut, key=lambda C: (len(C), sorted(C)))))
    return result


def _sort_supports(supports):
    return [(v, sorted(supps, key=lambda C: (len(C), sorted(C)))) for v, supps in supports]


def factor_image_presentation(g: LabelledGraph, stil: StilWitness,
                              case: Optional[str] = None) -> Presentation:
    """
    Presentation of the image of the factor map to the STIL quadruple

    Args:
        g: Labelled graph
        stil: STIL (x1, x2, x3 | Z) without edges in the triple
        case: "only-1", "1+2" or "1+2+3" to build that template on the
            triple as given; detected from star separations when None

    Returns:
        Presentation: With case and the relabelled quad recorded

    Raises:
        InputError: The triple spans an edge, or a separation turns the
            configuration into an FSIL
    """
    if stil_edge(g, stil) is not None:
        raise InputError("STIL triple spans an edge; use the one-edge embedding instead")
    x1, x2, x3 = stil.vertices()
    x4 = stil.z_component[0]
    sub = full_subgraph(g, {x1, x2, x3, x4})

    if case is not None:
        if case not in CASES:
            raise InputError(f"unknown case {case!r}; expected one of {', '.join(CASES)}")
        return _build(sub, _template(x1, x2, x3, x4, case), case, (x1, x2, x3, x4))

    triple = (x1, x2, x3)
    for a, b in ((x1, x2), (x1, x3), (x2, x3)):
        if star_separates(g, x4, a, b):
            raise InputError(f"st({x4}) separates {a} and {b}; {{{a},{b},{x4}}} is an FSIL")

    separating = []
    for x in triple:
        a, b = (y for y in triple if y != x)
        if star_separates(g, x, a, b):
            separating.append(x)
    others = [x for x in triple if x not in separating]
    if len(separating) == 3:
        raise InputError(f"all three stars separate; {{{x1},{x2},{x3}}} is an FSIL")
    case = CASES[len(separating)]
    quad = tuple(separating + others) + (x4,)

    expected = _sort_supports(_template(*quad, case))
    actual = _image_supports(g, quad)
    if expected != actual:
        raise VerificationCounterexample(
            "factor image supports do not match the case template",
            {"graph": g.to_dict(), "stil": stil.to_dict(), "case": case},
        )
    logger.debug(f"Factor image of {stil.describe()}: case {case}, quad {quad}")
    return _build(sub, _template(*quad, case), case, quad)


def designated_kills(p: Presentation) -> List[str]:
    """Generators to kill before simplifying to the Klein-four-star form"""
    if p.quad is None or p.case in (None, "only-1"):
        return []
    x1, x2 = p.quad[0], p.quad[1]
    if p.case == "1+2":
        return [f"chi[{x1}|{x2}]"]
    return [f"chi[{x1}|{x2}]", f"chi[{x2}|{x1}]"]


def quotient_by(p: Presentation, kill: Iterable[str]) -> Presentation:
    """
    Kill generators: drop them from every relator and free-reduce

    Raises:
        InputError: Unknown generator
    """
    kill = set(kill)
    unknown = kill - set(p.generators)
    if unknown:
        raise InputError(f"unknown generators: {', '.join(sorted(unknown))}")
    if not kill:
        return p
    relators = []
    for relator in p.relators:
        reduced = free_reduce((n, e) for n, e in relator if n not in kill)
        if reduced:
            relators.append(reduced)
    return Presentation(
        generators=[n for n in p.generators if n not in kill],
        relators=relators,
        tags={n: t for n, t in p.tags.items() if n not in kill},
        case=p.case,
        quad=p.quad,
    )


# ---------------------------------------------------------------------------
# Tietze engine

def abelian_invariants(p: Presentation) -> AbelianInvariants:
    """Invariant factors of the relator exponent-sum matrix"""
    n = len(p.generators)
    index = {name: i for i, name in enumerate(p.generators)}
    rows = []
    for relator in p.relators:
        row = [0] * n
        for name, e in relator:
            row[index[name]] += e
        if any(row):
            rows.append(row)
    if not rows or not n:
        return AbelianInvariants(free_rank=n)

    snf = smith_normal_form(Matrix(rows), domain=ZZ)
    diagonal = [abs(int(snf[i, i])) for i in range(min(snf.shape))]
    nonzero = [d for d in diagonal if d]
    return AbelianInvariants(free_rank=n - len(nonzero),
                             torsion=_invariant_factors(d for d in nonzero if d > 1))


def _invariant_factors(orders: Iterable[int]) -> Tuple[int, ...]:
    """t1 | t2 | ... with Z/t1 + Z/t2 + ... isomorphic to the sum of Z/d over orders"""
    powers: Dict[int, List[int]] = {}
    for d in orders:
        for prime, k in factorint(d).items():
            powers.setdefault(prime, []).append(prime ** k)
    length = max((len(q) for q in powers.values()), default=0)
    factors = [1] * length
    for prime_powers in powers.values():
        for i, q in enumerate(sorted(prime_powers, reverse=True)):
            factors[length - 1 - i] *= q
    return tuple(factors)


def _torsion(relators: Sequence[Relator]) -> Dict[str, int]:
    orders: Dict[str, int] = {}
    for relator in relators:
        if len(relator) == 1:
            name, e = relator[0]
            orders[name] = gcd(orders.get(name, 0), abs(e))
    return orders


def _reduce_exponent(e: int, n: int) -> int:
    e %= n
    return e - n if e > n // 2 else e


def _substitute(relator: Relator, name: str, replacement: Relator) -> Relator:
    word: List[Syllable] = []
    for n, e in relator:
        if n == name:
            piece = replacement if e > 0 else invert_word(replacement)
            word.extend(piece * abs(e))
        else:
            word.append((n, e))
    return cyclic_reduce(word)


def _normalise_relators(generators: List[str], relators: List[Relator]) -> Tuple[List[str], List[Relator]]:
    """Cyclic reduction, torsion rules and duplicate removal to a fixpoint"""
    while True:
        relators = [r for r in (cyclic_reduce(r) for r in relators) if r]
        orders = _torsion(relators)

        trivial = [name for name, n in orders.items() if n == 1]
        if trivial:
            logger.debug(f"Tietze: trivial generators {trivial}")
            generators = [g for g in generators if g not in trivial]
            relators = [free_reduce((n, e) for n, e in r if n not in trivial) for r in relators]
            continue

        reduced: List[Relator] = []
        for name, n in sorted(orders.items()):
            reduced.append(((name, n),))
        for r in relators:
            if len(r) == 1 and r[0][0] in orders:
                continue
            reduced.append(cyclic_reduce(
                (name, _reduce_exponent(e, orders[name]) if name in orders else e)
                for name, e in r
            ))

        unique: List[Relator] = []
        seen = set()
        for r in reduced:
            key = canonical(r)
            if key and key not in seen:
                seen.add(key)
                unique.append(r)

        if unique == relators:
            return generators, relators
        relators = unique


def _elimination(generators: List[str], relators: List[Relator]) -> Optional[Tuple[str, int]]:
    """Pick (generator, relator index) for the next elimination"""
    orders = _torsion(relators)
    position = {name: i for i, name in enumerate(generators)}
    best = None
    for index, relator in enumerate(relators):
        if len(relator) < 2:
            continue
        counts: Dict[str, int] = {}
        for name, e in relator:
            counts[name] = counts.get(name, 0) + abs(e)
        for name, count in counts.items():
            if count != 1:
                continue
            key = (name in orders, len(relator), -position[name])
            if best is None or key < best[0]:
                best = (key, name, index)
    return None if best is None else (best[1], best[2])


def tietze_simplify(p: Presentation, check_abelianization: Optional[bool] = None) -> Presentation:
    """
    Simplify by elimination-style Tietze moves to a fixpoint

    Args:
        p: Presentation
        check_abelianization: Compare abelian invariants before and after;
            defaults to the configured setting

    Returns:
        Presentation: Presentation of an isomorphic group

    Raises:
        VerificationCounterexample: The abelianization changed
    """
    if check_abelianization is None:
        check_abelianization = get_settings().check_abelianization

    generators = list(p.generators)
    relators = [tuple(r) for r in p.relators]
    while True:
        generators, relators = _normalise_relators(generators, relators)
        choice = _elimination(generators, relators)
        if choice is None:
            break
        name, index = choice
        relator = relators[index]
        at = next(i for i, (n, _) in enumerate(relator) if n == name)
        rotated = relator[at:] + relator[:at]
        rest = rotated[1:]
        replacement = invert_word(rest) if rotated[0][1] == 1 else tuple(rest)
        logger.debug(f"Tietze: eliminate {name} = {p.format_relator(replacement)}")
        generators = [g for g in generators if g != name]
        relators = [_substitute(r, name, replacement)
                    for i, r in enumerate(relators) if i != index]

    result = Presentation(
        generators=generators,
        relators=relators,
        tags={n: t for n, t in p.tags.items() if n in generators},
        case=p.case,
        quad=p.quad,
    )
    if check_abelianization:
        before, after = abelian_invariants(p), abelian_invariants(result)
        if before != after:
            logger.error(f"Tietze moves changed the abelianization: {before.format()} -> {after.format()}")
            raise VerificationCounterexample(
                "Tietze simplification changed the abelianization",
                {"before": p.to_dict(), "after": result.to_dict()},
            )
    return result


def recognize_form(p: Presentation) -> FormTag:
    """
    Tag ℤ2∗ℤ2∗ℤ2 and (ℤ2×ℤ2)∗ℤ2 after simplification

    Returns:
        FormTag: Z2FreeProductRank3, KleinFourStarZ2, or Unrecognized with
        the simplified presentation
    """
    s = tietze_simplify(p)
    gens = s.generators
    if len(gens) == 3:
        squares = {canonical(((name, 2),)) for name in gens}
        keys = [canonical(r) for r in s.relators]
        rest = [k for k in keys if k not in squares]
        if squares <= set(keys):
            if not rest:
                return FormTag(form="Z2FreeProductRank3")
            if len(rest) == 1:
                orders = {name: 2 for name in gens}
                for i, a in enumerate(gens):
                    for b in gens[i + 1:]:
                        c = cyclic_reduce(
                            (n, _reduce_exponent(e, orders[n])) for n, e in commutator_relator(a, b)
                        )
                        if canonical(c) == rest[0]:
                            return FormTag(form="KleinFourStarZ2")
    return FormTag(form="Unrecognized", presentation=s)


# ---------------------------------------------------------------------------
# Soundness and text format

def relator_automorphism(g: LabelledGraph, p: Presentation, relator: Relator) -> Automorphism:
    """
    Interpret a relator over tagged generators as a product of partial conjugations

    Raises:
        InputError: A generator has no tag
    """
    factors = []
    for name, e in relator:
        tag = p.tags.get(name)
        if tag is None:
            raise InputError(f"generator {name} does not denote a partial conjugation")
        factors.append((tag.multiplier, frozenset(tag.support), e))
    return automorphism_service.from_factors(g, tuple(factors))


def parse_presentation_text(text: str) -> Presentation:
    """
    Parse `gen <name>` and `rel <word>` lines

    Generators named chi[v|C] are tagged with the partial conjugation.
    """
    generators: List[str] = []
    relators: List[Relator] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        directive, _, rest = line.partition(" ")
        rest = rest.strip()
        if directive == "gen":
            if not rest or len(rest.split()) != 1:
                raise ParseError("expected `gen <name>`", number)
            if rest in generators:
                raise ParseError(f"duplicate generator {rest}", number)
            generators.append(rest)
        elif directive == "rel":
            relator = parse_relator(rest, number)
            for name, _ in relator:
                if name not in generators:
                    raise ParseError(f"undeclared generator {name}", number)
            relators.append(relator)
        else:
            raise ParseError(f"unknown directive: {directive}", number)

    tags = {}
    for name in generators:
        tag = GeneratorTag.from_name(name)
        if tag is not None:
            tags[name] = tag
    return Presentation(generators=generators, relators=relators, tags=tags)


def format_presentation_text(p: Presentation) -> str:
    """Render in the `gen` / `rel` line format"""
    lines = [f"gen {name}" for name in p.generators]
    lines += [f"rel {p.format_relator(r)}" for r in p.relators]
    return "\n".join(lines) + ("\n" if lines else "")
