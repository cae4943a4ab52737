import pytest
from hypothesis import given, settings

from coxout.exceptions import InputError
from coxout.models.witness import FsilWitness, NonCoxeterSilWitness, SilWitness
from coxout.services import sil_service
from coxout.services.oracle_service import naive_fsils, naive_sils, naive_stils
from tests.strategies import graphs


class TestSil:
    def test_g_va_pair(self, g_va):
        witness = sil_service.is_sil(g_va, "x", "y", "z")
        assert witness.z_component == ("z",)
        assert witness.describe() == "SIL (x,y | {z})"

    def test_link_vertex_is_not_separated(self, g_va):
        assert sil_service.is_sil(g_va, "x", "y", "c1") is None

    def test_adjacent_pair(self, p3):
        assert sil_service.is_sil(p3, "a", "b", "c") is None

    def test_distinct_vertices_required(self, p3):
        with pytest.raises(InputError):
            sil_service.is_sil(p3, "a", "a", "c")

    def test_g_va_has_exactly_one(self, g_va):
        assert sil_service.enumerate_sils(g_va) == [
            SilWitness(x1="x", x2="y", z_component=("z",)),
        ]

    def test_path_has_none(self, p3):
        assert sil_service.enumerate_sils(p3) == []

    def test_discrete_triangle(self, disc3):
        found = {(s.x1, s.x2, s.z_component) for s in sil_service.enumerate_sils(disc3)}
        assert found == {("a", "b", ("c",)), ("a", "c", ("b",)), ("b", "c", ("a",))}

    def test_serialises_with_kind(self, g_va):
        data = sil_service.is_sil(g_va, "x", "y", "z").to_dict()
        assert data == {"kind": "sil", "x1": "x", "x2": "y", "z_component": ["z"]}


class TestStilAndFsil:
    def test_discrete_four(self, disc4):
        witness = sil_service.is_stil(disc4, "x1", "x2", "x3", "x4")
        assert witness.z_component == ("x4",)
        assert sil_service.stil_edge(disc4, witness) is None

    def test_one_edge(self, gamma31):
        witness = sil_service.is_stil(gamma31, "a", "b", "c", "d")
        assert witness is not None
        assert sil_service.stil_edge(gamma31, witness) == ("a", "b")

    def test_two_edges_disqualify(self, p3):
        assert sil_service.stil_components(p3, "a", "b", "c") == []

    def test_fsil_in_star(self, k13):
        witness = sil_service.is_fsil(k13, "x", "y", "z")
        assert isinstance(witness, FsilWitness)
        assert [s.z_component for s in witness.sils] == [("z",), ("y",), ("x",)]

    def test_no_fsil_in_g_va(self, g_va):
        assert sil_service.enumerate_fsils(g_va) == []
        assert sil_service.enumerate_stils(g_va) == []


class TestFindWitness:
    def test_fsil_first(self, disc4):
        witness = sil_service.find_witness(disc4)
        assert isinstance(witness, FsilWitness)
        assert witness.vertices() == ("x1", "x2", "x3")

    def test_virtually_abelian_graph(self, g_va):
        assert sil_service.find_witness(g_va) is None

    def test_heavy_vertex(self, g_va_heavy):
        witness = sil_service.find_witness(g_va_heavy)
        assert isinstance(witness, NonCoxeterSilWitness)
        assert witness.heavy_vertex == "x"

    def test_finite_graphs(self, p3, square):
        assert sil_service.find_witness(p3) is None
        assert sil_service.find_witness(square) is None

    @given(graphs(max_vertices=5))
    @settings(max_examples=100, deadline=None)
    def test_detectors_match_definitions(self, g):
        assert {(s.pair(), s.component) for s in sil_service.enumerate_sils(g)} == naive_sils(g)
        assert {(frozenset(s.vertices()), s.component)
                for s in sil_service.enumerate_stils(g)} == naive_stils(g)
        assert {frozenset(f.vertices()) for f in sil_service.enumerate_fsils(g)} == naive_fsils(g)


class TestLemmaHelpers:
    def test_overlap_gives_stil(self, k14):
        s1 = sil_service.is_sil(k14, "x1", "x2", "z")
        s2 = sil_service.is_sil(k14, "x1", "x3", "z")
        stil = sil_service.overlap_to_stil(k14, s1, s2, "z")
        assert stil.vertices() == ("x1", "x2", "x3")
        assert stil.z_component == ("z",)

    def test_overlap_needs_connected_graph(self, disc4):
        s1 = sil_service.is_sil(disc4, "x1", "x2", "x4")
        s2 = sil_service.is_sil(disc4, "x1", "x3", "x4")
        with pytest.raises(InputError):
            sil_service.overlap_to_stil(disc4, s1, s2, "x4")

    def test_overlap_needs_shared_vertex(self, k14):
        s1 = sil_service.is_sil(k14, "x1", "x2", "z")
        s2 = sil_service.is_sil(k14, "x3", "x2", "z")
        with pytest.raises(InputError):
            sil_service.overlap_to_stil(k14, s1, s2, "z")

    def test_stilfind_fsil(self, k13):
        outcome = sil_service.stilfind_trichotomy(k13, "x", "y", "z", "z", "y")
        assert outcome.case == "fsil"
        assert outcome.fsil.vertices() == ("x", "y", "z")

    def test_stilfind_stil(self, disc4):
        outcome = sil_service.stilfind_trichotomy(disc4, "x1", "x2", "x3", "x4", "x4")
        assert outcome.case == "stil"
        assert outcome.stil.z_component == ("x4",)

    def test_stilfind_needs_sils(self, p3):
        with pytest.raises(InputError):
            sil_service.stilfind_trichotomy(p3, "a", "b", "c", "c", "b")

    def test_star_separates(self, path5):
        assert sil_service.star_separates(path5, "c", "a", "e")
        assert not sil_service.star_separates(path5, "a", "c", "e")
        with pytest.raises(InputError):
            sil_service.star_separates(path5, "c", "b", "e")

    def test_fsil_from_separating_star(self, disc3):
        witness = sil_service.fsil_from_separating_star(disc3, "a", "b", "c")
        assert set(witness.vertices()) == {"a", "b", "c"}

    def test_separating_star_without_sil(self, path5):
        with pytest.raises(InputError):
            sil_service.fsil_from_separating_star(path5, "a", "e", "c")

    def test_double_separation(self, k13):
        witness = sil_service.sil_from_double_separation(k13, "x", "y", "z")
        assert witness.z_component == ("z",)

    def test_double_separation_hypothesis(self, path5):
        with pytest.raises(InputError):
            sil_service.sil_from_double_separation(path5, "a", "c", "e")
