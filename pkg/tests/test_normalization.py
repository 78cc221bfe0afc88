"""
Tests for the case classifier and the normalization search.
"""
import pytest

from graphcert.core.exceptions import InternalCheckFailed, NormalizationExhausted, PreconditionFailed
from graphcert.utils import normalization
from graphcert.utils.multigraph import Multigraph
from graphcert.utils.normalization import (
    CaseLabel,
    LocalComplement,
    Relabel,
    TransformLog,
    cancellation_witness,
    check_preconditions,
    classify,
    neighborhoods_agree,
    normalize,
    overlap,
    q_overlap,
)
from tests.conftest import all_graphs


def assert_normalizes(graph: Multigraph):
    result = normalize(graph)
    assert result.case != CaseLabel.NOT_APPLICABLE
    assert classify(result.graph) == result.case
    assert result.log.replay(graph) == result.graph
    # one relabel and one complement at vertex 1, then steps that each shrink N_2
    assert len(result.log) <= graph.n + 2
    return result


class TestPreconditions:
    @pytest.mark.parametrize(
        "n, edges, expected",
        [
            (2, [(1, 2, 1)], False),
            (3, [(1, 2, 1)], False),
            (4, [(1, 2, 1), (3, 4, 1)], False),
            (3, [(1, 2, 1), (2, 3, 1)], True),
        ],
    )
    def test_degree_and_size(self, n, edges, expected):
        """Covered graphs have N >= 3 and a vertex with two neighbours."""
        assert check_preconditions(Multigraph.from_edges(3, n, edges)) is expected

    def test_normalize_refuses_uncovered_graphs(self):
        """Uncovered graphs fail with exit code 2."""
        with pytest.raises(PreconditionFailed) as exc:
            normalize(Multigraph.from_edges(3, 2, [(1, 2, 1)]))
        assert exc.value.exit_code == 2
        assert "not covered" in str(exc.value)


class TestClassify:
    """Lowest matching case wins."""

    def test_triangle_is_case1(self, triangle):
        """Disjoint neighbourhoods give a single-step chain."""
        assert classify(triangle) == CaseLabel.CASE1
        assert q_overlap(triangle, CaseLabel.CASE1) == 1

    def test_star_is_case1(self, star):
        """The star centre shares no neighbour with a leaf."""
        assert overlap(star) == frozenset()
        assert classify(star) == CaseLabel.CASE1

    def test_case2(self, case2_graph):
        """An overlap vertex with disagreeing weights."""
        assert overlap(case2_graph) == {2}
        assert not neighborhoods_agree(case2_graph, 2)
        assert classify(case2_graph) == CaseLabel.CASE2
        assert q_overlap(case2_graph, CaseLabel.CASE2) == 2

    def test_case3(self, case3_graph):
        """A single agreeing overlap vertex."""
        assert neighborhoods_agree(case3_graph, 2)
        assert classify(case3_graph) == CaseLabel.CASE3

    def test_case4(self, case4_graph):
        """Two agreeing overlap vertices with a cancellation witness."""
        assert overlap(case4_graph) == {2, 3}
        assert cancellation_witness(case4_graph) == (2, 2)
        assert classify(case4_graph) == CaseLabel.CASE4

    def test_without_first_edge(self):
        """Γ_12 = 0 matches no case."""
        g = Multigraph.from_edges(3, 4, [(1, 3, 1), (1, 4, 1), (2, 3, 1)])
        assert classify(g) == CaseLabel.NOT_APPLICABLE

    def test_path_from_second_vertex(self, full_triangle):
        """Too small a private neighbourhood of vertex 1 matches no case."""
        # N_1∖N_2 = {2} only
        assert classify(full_triangle) == CaseLabel.NOT_APPLICABLE


class TestNormalize:
    def test_already_normalized(self, triangle):
        """A case1 graph comes back with an empty log."""
        result = normalize(triangle)
        assert result.case == CaseLabel.CASE1
        assert len(result.log) == 0
        assert result.graph == triangle

    def test_star_centre_moved_to_front(self):
        """A star with its centre at vertex 3 only needs a relabel."""
        g = Multigraph.from_edges(3, 5, [(3, 1, 1), (3, 2, 1), (3, 4, 1), (3, 5, 1)])
        result = assert_normalizes(g)
        assert result.log.steps == [Relabel((1, 2, 0, 3, 4))]
        assert result.case == CaseLabel.CASE1

    def test_full_triangle_needs_local_complement(self, full_triangle):
        """The full triangle reaches case1 by one complement at vertex 1."""
        result = assert_normalizes(full_triangle)
        assert result.log.steps == [LocalComplement(0, 2)]
        assert result.case == CaseLabel.CASE1

    def test_samples(self, case2_graph, case3_graph, case4_graph):
        """Each sample graph lands in its own case."""
        for graph, case in (
            (case2_graph, CaseLabel.CASE2),
            (case3_graph, CaseLabel.CASE3),
            (case4_graph, CaseLabel.CASE4),
        ):
            assert normalize(graph).case == case

    def test_log_replay(self, full_triangle):
        """Replaying a log applies its steps in order."""
        log = TransformLog()
        log.append(Relabel((1, 0, 2)))
        log.append(LocalComplement(2, 1))
        expected = LocalComplement(2, 1).apply(Relabel((1, 0, 2)).apply(full_triangle))
        assert log.replay(full_triangle) == expected

    @pytest.mark.parametrize("d, n", [(2, 3), (2, 4), (3, 3), (3, 4), (2, 5)])
    def test_exhaustive(self, d, n):
        """Every covered graph of the given size normalizes."""
        covered = 0
        for graph in all_graphs(d, n):
            if not check_preconditions(graph):
                continue
            assert_normalizes(graph)
            covered += 1
        assert covered > 0

    @pytest.mark.slow
    def test_exhaustive_five_qutrits(self):
        """Every covered five-qutrit graph normalizes."""
        for graph in all_graphs(3, 5):
            if check_preconditions(graph):
                assert_normalizes(graph)

    def test_qubit_overlap_always_cancels(self):
        """In d=2 an agreeing overlap vertex always cancels N_2."""
        for graph in all_graphs(2, 5):
            if classify(graph) in (CaseLabel.CASE3, CaseLabel.CASE4):
                assert cancellation_witness(graph) is not None


class TestSearchFailures:
    """Failures of the search surface as typed errors, never as bare assertions."""

    def test_exhausted_search_carries_trace(self, full_triangle, monkeypatch):
        """Running out of candidates reports every rejected one."""
        monkeypatch.setattr(normalization, "classify", lambda graph: CaseLabel.NOT_APPLICABLE)
        with pytest.raises(NormalizationExhausted) as exc:
            normalize(full_triangle)
        assert exc.value.exit_code == 3
        assert exc.value.trace == [("core", 1, 2, 0), ("core", 1, 2, 1)]

    def test_non_shrinking_step_is_an_internal_failure(self, triangle, monkeypatch):
        """A complement that leaves N_2 as large as before raises InternalCheckFailed."""
        monkeypatch.setattr(normalization, "classify", lambda graph: CaseLabel.NOT_APPLICABLE)
        monkeypatch.setattr(
            normalization, "_shrink_second_neighborhood", lambda graph, trace: LocalComplement(2, 0)
        )
        with pytest.raises(InternalCheckFailed) as exc:
            normalize(triangle)
        assert exc.value.exit_code == 3
        assert "did not shrink" in str(exc.value)
