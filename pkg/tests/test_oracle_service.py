import json

import pytest

from coxout.exceptions import InputError
from coxout.models.automorphism import PartialConjugation
from coxout.models.report import GraphSampler, SuiteFailure
from coxout.services import oracle_service
from coxout.services.graph_service import discrete_graph
from coxout.services.oracle_service import (
    PASS,
    SUITES,
    NonCommuteSuite,
    VerificationService,
    exhaustive_graphs,
    sample_graph,
)


def g_va_failure(g_va, **overrides) -> SuiteFailure:
    first = PartialConjugation("x", frozenset({"z"})).to_dict()
    second = PartialConjugation("y", frozenset({"z"})).to_dict()
    data = dict(suite="noncommute", trial=7, graph=g_va.to_dict(),
                instance={"first": first, "second": second}, message="recorded", bound=8)
    data.update(overrides)
    return SuiteFailure(**data)


class TestGeneration:
    def test_same_seed_same_graph(self):
        sampler = GraphSampler(min_vertices=3, max_vertices=7, seed=42)
        assert sample_graph(sampler) == sample_graph(sampler)

    def test_edge_probability_extremes(self):
        empty = sample_graph(GraphSampler(min_vertices=4, max_vertices=4, edge_probability=0.0))
        full = sample_graph(GraphSampler(min_vertices=4, max_vertices=4, edge_probability=1.0))
        assert empty.edges == ()
        assert len(full.edges) == 6

    def test_labels_drawn_from_choices(self):
        g = sample_graph(GraphSampler(min_vertices=5, max_vertices=5, label_choices=[3], seed=3))
        assert set(g.labels.values()) == {3}

    @pytest.mark.parametrize("kwargs", [
        {"label_choices": [6]},
        {"label_choices": []},
        {"min_vertices": 5, "max_vertices": 4},
        {"edge_probability": 1.5},
    ])
    def test_rejects_bad_sampler(self, kwargs):
        with pytest.raises(InputError):
            GraphSampler(**kwargs)

    def test_exhaustive_counts(self):
        assert len(list(exhaustive_graphs(3))) == 8
        assert len(list(exhaustive_graphs(3, (2, 3)))) == 64
        assert len(set(exhaustive_graphs(4))) == 64


class TestCriterion:
    def test_g_va_pair_is_predicted(self, g_va):
        z = frozenset({"z"})
        assert NonCommuteSuite.predicted(g_va, "x", z, "y", z)
        assert not NonCommuteSuite.predicted(g_va, "x", frozenset({"y"}), "z", frozenset({"c2", "x", "y"}))

    def test_closure_minimum(self):
        g = discrete_graph(["a", "b"])
        assert oracle_service.closure_minimum(g, [("b", 1), ("a", 1), ("a", 1)]) == (("b", 1),)


class TestRunner:
    def test_unknown_suite(self):
        with pytest.raises(InputError):
            oracle_service.run_suite("bogus", GraphSampler(), 1)

    def test_negative_trials(self):
        with pytest.raises(InputError):
            oracle_service.run_suite("detector", GraphSampler(), -1)

    def test_detector_run(self):
        report = oracle_service.run_suite("detector", GraphSampler(max_vertices=5, seed=1), 15)
        assert report.ok
        assert report.graphs == 15
        assert report.instances == 15
        assert report.passed == 15
        assert "duration_seconds" not in report.to_dict()

    def test_report_is_deterministic(self):
        sampler = GraphSampler(max_vertices=5, seed=9)
        first = oracle_service.run_suite("normal_form", sampler, 5)
        second = oracle_service.run_suite("normal_form", sampler, 5)
        assert first.to_dict() == second.to_dict()
        assert first.ok

    def test_filtered_suite_counts_skips(self):
        report = oracle_service.run_suite("no_overlap", GraphSampler(max_vertices=5, edge_probability=0.0), 2)
        assert report.graphs == 0
        assert report.skipped > 0

    def test_exhaustive_limit(self):
        service = VerificationService(reports_dir=None, max_exhaustive_vertices=4)
        with pytest.raises(InputError):
            service.run_suite("detector", GraphSampler(max_vertices=5), 1, 8, exhaustive=True)

    def test_exhaustive_detector(self):
        service = VerificationService(reports_dir=None)
        report = service.run_suite("detector", GraphSampler(min_vertices=1, max_vertices=4), 0, 8,
                                   exhaustive=True)
        assert report.graphs == 1 + 2 + 8 + 64
        assert report.ok

    @pytest.mark.slow
    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_every_suite_passes(self, name):
        report = oracle_service.run_suite(name, GraphSampler(min_vertices=3, max_vertices=5, seed=5), 4)
        assert report.ok, report.format_table()

    @pytest.mark.slow
    @pytest.mark.parametrize("name, sampler, trials, bound, exhaustive, least", [
        ("detector", GraphSampler(min_vertices=1, max_vertices=5), 0, 8, True, 1099),
        ("noncommute", GraphSampler(min_vertices=1, max_vertices=5), 0, 16, True, 1),
        ("noncommute", GraphSampler(min_vertices=3, max_vertices=7, seed=11), 200, 16, False, 1),
        ("conj_two", GraphSampler(min_vertices=4, max_vertices=6, seed=12), 100, 16, False, 100),
        ("rewrite", GraphSampler(min_vertices=4, max_vertices=6, seed=13), 100, 16, False, 100),
        ("conj_three", GraphSampler(min_vertices=4, max_vertices=6, seed=14), 100, 16, False, 100),
        ("derived_abelian", GraphSampler(min_vertices=4, max_vertices=6, seed=15), 100, 16, False, 100),
        ("presentation_sound", GraphSampler(min_vertices=1, max_vertices=5), 0, 16, True, 1),
        ("normal_form", GraphSampler(min_vertices=1, max_vertices=5, label_choices=[2, 3, 4], seed=16),
         500, 8, False, 10000),
    ])
    def test_acceptance_scale(self, name, sampler, trials, bound, exhaustive, least):
        service = VerificationService(reports_dir=None)
        report = service.run_suite(name, sampler, trials, bound, exhaustive=exhaustive)
        assert report.ok, report.format_table()
        assert report.instances >= least
        assert len(report.inconclusive) <= 0.05 * report.instances


class TestReplay:
    def test_persist_and_replay(self, tmp_path, g_va):
        service = VerificationService(reports_dir=str(tmp_path / "reports"))
        path = service._persist(g_va_failure(g_va), 1)
        assert path.endswith("noncommute-trial7-1.json")
        outcome = service.replay_failure(path)
        assert outcome.status == PASS
        assert outcome.verdicts["predicted_noncommuting"] is True

    def test_replay_from_written_file(self, tmp_path, g_va):
        path = tmp_path / "claim.json"
        path.write_text(json.dumps(g_va_failure(g_va).to_dict()))
        assert oracle_service.replay_failure(str(path)).status == PASS

    def test_commuting_pair_passes(self, g_va):
        outcome = NonCommuteSuite().check(g_va, {
            "first": {"multiplier": "x", "support": ["y"]},
            "second": {"multiplier": "z", "support": ["c2", "x", "y"]},
        }, 8)
        assert outcome.status == PASS
        assert outcome.verdicts["predicted_noncommuting"] is False

    def test_replay_needs_admitted_graph(self, tmp_path):
        failure = SuiteFailure(suite="no_overlap", trial=1, graph=discrete_graph(["a", "b"]).to_dict(),
                               instance={}, message="", bound=8)
        path = tmp_path / "f.json"
        path.write_text(json.dumps(failure.to_dict()))
        with pytest.raises(InputError):
            oracle_service.replay_failure(str(path))

    def test_unreadable_file(self, tmp_path):
        with pytest.raises(InputError):
            oracle_service.replay_failure(str(tmp_path / "missing.json"))
