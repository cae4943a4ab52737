import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxout.exceptions import InputError, ParseError
from coxout.models.graph import LabelledGraph
from coxout.services import graph_service
from coxout.services.graph_service import (
    component_of,
    components,
    components_avoiding,
    discrete_graph,
    full_subgraph,
    is_connected,
    join,
    link,
    star,
)
from tests.strategies import graphs, vertex_subsets


class TestLabelledGraph:
    def test_defaults_order_two(self):
        g = LabelledGraph.build(["b", "a"], [("b", "a")])
        assert g.vertices == ("a", "b")
        assert g.edges == (("a", "b"),)
        assert g.labels == {"a": 2, "b": 2}
        assert g.is_coxeter()

    @pytest.mark.parametrize("vertices, edges, labels", [
        (["a", "a"], [], {}),
        (["a"], [("a", "a")], {}),
        (["a"], [("a", "b")], {}),
        (["a"], [], {"a": 6}),
        (["a"], [], {"a": 1}),
        (["a"], [], {"b": 2}),
        (["1a"], [], {}),
        (["1"], [], {}),
        (["\u00e9t\u00e9"], [], {}),
        (["a b"], [], {}),
    ])
    def test_rejects_bad_input(self, vertices, edges, labels):
        with pytest.raises(InputError):
            LabelledGraph.build(vertices, edges, labels)

    def test_accepts_prime_powers(self):
        g = LabelledGraph.build(["a", "b", "c"], [], {"a": 4, "b": 9, "c": 7})
        assert g.order("b") == 9
        assert not g.is_coxeter()

    def test_equal_graphs_hash_alike(self, p3):
        other = graph_service.path_graph(["a", "b", "c"])
        assert p3 == other
        assert hash(p3) == hash(other)


class TestNeighbourhoods:
    def test_link_and_star(self, p3):
        assert link(p3, "b") == {"a", "c"}
        assert star(p3, "a") == {"a", "b"}

    def test_unknown_vertex(self, p3):
        with pytest.raises(InputError):
            link(p3, "q")

    def test_common_link(self, g_va):
        assert graph_service.common_link(g_va, "x", "y") == {"c1", "c2"}

    def test_components_of_star_complement(self, k13):
        assert components_avoiding(k13, {"m"}) == [{"x"}, {"y"}, {"z"}]

    def test_g_va_separation(self, g_va):
        assert components_avoiding(g_va, {"c1", "c2"}) == [{"x"}, {"y"}, {"z"}]

    def test_component_of(self, path5):
        assert component_of(path5, {"c"}, "a") == {"a", "b"}
        with pytest.raises(InputError):
            component_of(path5, {"c"}, "c")

    def test_connectivity(self, p3, disc3):
        assert is_connected(p3)
        assert not is_connected(disc3)
        assert is_connected(discrete_graph([]))
        assert components(disc3) == [{"a"}, {"b"}, {"c"}]


class TestConstructions:
    def test_full_subgraph(self, g_va):
        sub = full_subgraph(g_va, {"x", "y", "z"})
        assert sub.vertices == ("x", "y", "z")
        assert sub.edges == ()

    def test_full_subgraph_keeps_labels(self, g_va_heavy):
        assert full_subgraph(g_va_heavy, {"x", "c1"}).labels == {"c1": 2, "x": 3}

    @given(st.data())
    @settings(max_examples=75, deadline=None)
    def test_full_subgraph_is_idempotent(self, data):
        g = data.draw(graphs())
        outer = data.draw(vertex_subsets(g))
        inner = data.draw(vertex_subsets(g)) & outer
        sub = full_subgraph(g, outer)
        assert full_subgraph(sub, outer) == sub
        assert full_subgraph(sub, inner) == full_subgraph(g, inner)
        assert full_subgraph(g, g.vertices) is g

    def test_join_of_discrete_pairs_is_square(self):
        g = join(discrete_graph(["a", "b"]), discrete_graph(["c", "d"]))
        assert set(g.edges) == {("a", "c"), ("a", "d"), ("b", "c"), ("b", "d")}

    def test_join_with_empty(self):
        g = join(discrete_graph(["a", "c"]), discrete_graph([]))
        assert g == discrete_graph(["a", "c"])

    def test_join_clash(self):
        with pytest.raises(InputError):
            join(discrete_graph(["a"]), discrete_graph(["a"]))

    def test_disjoint_union_and_relabel(self, p3):
        g = graph_service.disjoint_union(p3, discrete_graph(["d"]))
        assert len(components(g)) == 2
        assert graph_service.relabel(g, {"d": 3}).order("d") == 3


class TestGraphFiles:
    TEXT = "# sample\nvertex a\nvertex b order 3\n\nedge a b\n"

    def test_parse_text(self):
        g = graph_service.parse_graph(self.TEXT)
        assert g.vertices == ("a", "b")
        assert g.labels == {"a": 2, "b": 3}
        assert g.edges == (("a", "b"),)

    @pytest.mark.parametrize("text, line", [
        ("vertex a\nbogus x\n", 2),
        ("vertex a\nedge a b\n", 2),
        ("vertex a order 6\n", 1),
        ("vertex a\nvertex a\n", 2),
        ("vertex a\n\nedge a a\n", 3),
        ("vertex a\nvertex 1\n", 2),
    ])
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ParseError) as info:
            graph_service.parse_graph_text(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}:")

    def test_json_and_yaml(self, tmp_path, g_va):
        json_path = tmp_path / "g.json"
        json_path.write_text(json.dumps(g_va.to_dict()))
        yaml_path = tmp_path / "g.yaml"
        yaml_path.write_text("vertices: [a, b]\nedges: [[a, b]]\nlabels: {a: 4}\n")
        assert graph_service.load_graph(json_path) == g_va
        assert graph_service.load_graph(str(yaml_path)).labels == {"a": 4, "b": 2}

    def test_unknown_json_field(self):
        with pytest.raises(ParseError):
            graph_service.parse_graph('{"vertices": ["a"], "colour": "red"}')

    def test_missing_file(self, tmp_path):
        with pytest.raises(InputError):
            graph_service.load_graph(tmp_path / "absent.txt")

    @given(graphs())
    @settings(max_examples=50, deadline=None)
    def test_text_format_reads_back(self, g):
        assert graph_service.parse_graph_text(graph_service.format_graph_text(g)) == g
