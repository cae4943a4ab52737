import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxout.exceptions import InputError, ParseError
from coxout.models.presentation import GeneratorTag, Presentation
from coxout.services import automorphism_service as aut
from coxout.services import presentation_service as ps
from coxout.services import sil_service
from coxout.services.graph_service import discrete_graph
from tests.strategies import coxeter_graphs


def factor_image(case):
    g = discrete_graph(["x1", "x2", "x3", "x4"])
    return ps.factor_image_presentation(g, sil_service.is_stil(g, "x1", "x2", "x3", "x4"), case=case)


@pytest.fixture
def disc4_stil(disc4):
    return sil_service.is_stil(disc4, "x1", "x2", "x3", "x4")


class TestOut0Presentation:
    def test_path(self, p3):
        p = ps.muehlherr_out0(p3)
        assert p.generators == ["chi[a|c]", "chi[c|a]"]
        assert p.format() == "< chi[a|c], chi[c|a] | chi[a|c], chi[c|a], chi[a|c]^2, chi[c|a]^2 >"
        assert p.tags["chi[a|c]"] == GeneratorTag(multiplier="a", support=("c",))

    def test_path_relators_hold_in_out(self, p3):
        p = ps.muehlherr_out0(p3)
        for relator in p.relators:
            f = ps.relator_automorphism(p3, p, relator)
            assert aut.is_trivial_in_out(f).is_equal

    def test_finite_out_has_finite_abelianization(self, p3):
        invariants = ps.abelian_invariants(ps.muehlherr_out0(p3))
        assert invariants.free_rank == 0
        assert invariants.format() == "0"

    def test_untagged_generator(self, p3):
        p = Presentation(generators=["t"], relators=[(("t", 1),)])
        with pytest.raises(InputError):
            ps.relator_automorphism(p3, p, p.relators[0])


class TestFactorImage:
    def test_only_one_star_template(self, disc4, disc4_stil):
        p = ps.factor_image_presentation(disc4, disc4_stil, case="only-1")
        assert p.case == "only-1"
        assert p.quad == ("x1", "x2", "x3", "x4")
        assert p.generators[:2] == ["chi[x1|x4]", "chi[x1|x2,x3]"]
        assert len(p.generators) == 6
        assert ps.abelian_invariants(p).torsion == (2, 2, 2)
        assert ps.designated_kills(p) == []

    def test_only_one_star_is_free_product(self, disc4, disc4_stil):
        p = ps.factor_image_presentation(disc4, disc4_stil, case="only-1")
        assert ps.recognize_form(p).display == "Z2*Z2*Z2"
        assert len(ps.tietze_simplify(p).generators) == 3

    def test_klein_four_after_kill(self, disc4, disc4_stil):
        p = ps.factor_image_presentation(disc4, disc4_stil, case="1+2")
        kills = ps.designated_kills(p)
        assert kills == ["chi[x1|x2]"]
        form = ps.recognize_form(ps.quotient_by(p, kills))
        assert form.form == "KleinFourStarZ2"
        assert form.display == "(Z2xZ2)*Z2"

    def test_klein_four_after_two_kills(self, disc4, disc4_stil):
        p = ps.factor_image_presentation(disc4, disc4_stil, case="1+2+3")
        kills = ps.designated_kills(p)
        assert kills == ["chi[x1|x2]", "chi[x2|x1]"]
        assert ps.recognize_form(ps.quotient_by(p, kills)).form == "KleinFourStarZ2"

    def test_auto_detection_rejects_fsil(self, disc4, disc4_stil):
        with pytest.raises(InputError):
            ps.factor_image_presentation(disc4, disc4_stil)

    def test_edge_in_triple(self, gamma31):
        stil = sil_service.is_stil(gamma31, "a", "b", "c", "d")
        with pytest.raises(InputError):
            ps.factor_image_presentation(gamma31, stil, case="only-1")

    def test_unknown_case(self, disc4, disc4_stil):
        with pytest.raises(InputError):
            ps.factor_image_presentation(disc4, disc4_stil, case="2+3")


class TestDetectedCases:
    def test_one_separating_star(self, one_separating):
        stil = sil_service.is_stil(one_separating, "x1", "x2", "x3", "x4")
        p = ps.factor_image_presentation(one_separating, stil)
        assert p.case == "1+2"
        assert p.quad == ("x1", "x2", "x3", "x4")
        kills = ps.designated_kills(p)
        assert kills == ["chi[x1|x2]"]
        assert ps.recognize_form(ps.quotient_by(p, kills)).form == "KleinFourStarZ2"

    def test_separating_vertex_moves_to_front(self, one_separating):
        stil = sil_service.is_stil(one_separating, "x3", "x2", "x1", "x4")
        p = ps.factor_image_presentation(one_separating, stil)
        assert p.case == "1+2"
        assert p.quad == ("x1", "x3", "x2", "x4")
        assert ps.recognize_form(ps.quotient_by(p, ps.designated_kills(p))).form == "KleinFourStarZ2"

    def test_two_separating_stars(self, two_separating):
        stil = sil_service.is_stil(two_separating, "x1", "x2", "x3", "x4")
        p = ps.factor_image_presentation(two_separating, stil)
        assert p.case == "1+2+3"
        assert p.quad == ("x1", "x2", "x3", "x4")
        kills = ps.designated_kills(p)
        assert kills == ["chi[x1|x2]", "chi[x2|x1]"]
        assert ps.recognize_form(ps.quotient_by(p, kills)).form == "KleinFourStarZ2"

    def test_detected_matches_explicit_template(self, one_separating, two_separating):
        for g, case in ((one_separating, "1+2"), (two_separating, "1+2+3")):
            stil = sil_service.is_stil(g, "x1", "x2", "x3", "x4")
            assert ps.factor_image_presentation(g, stil) == ps.factor_image_presentation(g, stil, case=case)


class TestTietze:
    def test_eliminates_defined_generator(self):
        p = Presentation(generators=["a", "b"], relators=[(("a", 1), ("b", -1)), (("b", 3),)])
        s = ps.tietze_simplify(p)
        assert s.generators == ["b"]
        assert s.relators == [(("b", 3),)]

    def test_unrecognized_form_keeps_presentation(self):
        p = Presentation(generators=["a"], relators=[(("a", 3),)])
        form = ps.recognize_form(p)
        assert form.form == "Unrecognized"
        assert form.presentation.generators == ["a"]

    def test_abelian_invariants(self):
        p = Presentation(generators=["a", "b"], relators=[(("a", 4),), (("b", 6),)])
        assert ps.abelian_invariants(p).torsion == (2, 12)
        assert ps.abelian_invariants(p).format() == "Z/2 + Z/12"
        assert ps.abelian_invariants(Presentation(generators=["a"])).format() == "Z"

    def test_quotient_by_unknown(self, p3):
        with pytest.raises(InputError):
            ps.quotient_by(ps.muehlherr_out0(p3), ["chi[b|a]"])

    def test_reductions(self):
        assert ps.free_reduce([("a", 1), ("a", -1), ("b", 2)]) == (("b", 2),)
        assert ps.cyclic_reduce([("a", 1), ("b", 1), ("a", -1)]) == (("b", 1),)
        assert ps.canonical([("b", 1), ("a", 1)]) == (("a", -1), ("b", -1))

    @given(coxeter_graphs(max_vertices=4))
    @settings(max_examples=40, deadline=None)
    def test_simplification_keeps_abelianization(self, g):
        p = ps.muehlherr_out0(g)
        simplified = ps.tietze_simplify(p, check_abelianization=False)
        assert ps.abelian_invariants(simplified) == ps.abelian_invariants(p)

    @pytest.mark.parametrize("case", ps.CASES)
    def test_factor_images_keep_abelianization(self, case):
        p = factor_image(case)
        for q in (p, ps.quotient_by(p, ps.designated_kills(p))):
            simplified = ps.tietze_simplify(q, check_abelianization=False)
            assert ps.abelian_invariants(simplified) == ps.abelian_invariants(q)

    def test_invariant_factors_divide(self):
        p = Presentation(generators=["a", "b"], relators=[(("a", 2),), (("b", 3),)])
        assert ps.abelian_invariants(p).torsion == (6,)

    @pytest.mark.parametrize("case, expected", [
        ("only-1", "Z2FreeProductRank3"),
        ("1+2", "KleinFourStarZ2"),
        ("1+2+3", "KleinFourStarZ2"),
    ])
    @given(data=st.data())
    @settings(max_examples=25, deadline=None)
    def test_form_ignores_generator_names_and_order(self, case, expected, data):
        p = factor_image(case)
        p = ps.quotient_by(p, ps.designated_kills(p))
        order = data.draw(st.permutations(range(len(p.generators))))
        reverse = data.draw(st.booleans())
        names = {p.generators[k]: f"g{i}" for i, k in enumerate(order)}
        relators = [tuple((names[n], e) for n, e in r) for r in p.relators]
        renamed = Presentation(generators=[f"g{i}" for i in range(len(order))],
                               relators=relators[::-1] if reverse else relators)
        assert ps.recognize_form(p).form == expected
        assert ps.recognize_form(renamed).form == expected


class TestPresentationText:
    TEXT = "gen a\ngen chi[x|y,z]\nrel a^2\nrel a chi[x|y,z] a^-1 chi[x|y,z]^-1\n"

    def test_parse(self):
        p = ps.parse_presentation_text("# sample\n" + self.TEXT)
        assert p.generators == ["a", "chi[x|y,z]"]
        assert p.relators[0] == (("a", 2),)
        assert p.tags == {"chi[x|y,z]": GeneratorTag(multiplier="x", support=("y", "z"))}

    def test_format_reads_back(self):
        assert ps.format_presentation_text(ps.parse_presentation_text(self.TEXT)) == self.TEXT

    @pytest.mark.parametrize("text, line", [
        ("gen a\nrel b\n", 2),
        ("gen a\ngen a\n", 2),
        ("gen a\n\nrelator a\n", 3),
        ("gen a\nrel a^x\n", 2),
    ])
    def test_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as info:
            ps.parse_presentation_text(text)
        assert info.value.line == line
