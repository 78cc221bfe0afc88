"""
Tests for the multigraph model, parser and graph transformations.
"""
import pytest
from hypothesis import given, strategies as st

from graphcert.core.config import settings
from graphcert.core.exceptions import GraphParseError, InvalidArgumentError
from graphcert.utils.multigraph import (
    Multigraph,
    load_graph,
    local_complement,
    neighborhood,
    parse_graph,
    relabel,
)


@st.composite
def graphs(draw, max_n=6):
    d = draw(st.sampled_from([2, 3, 5, 7]))
    n = draw(st.integers(1, max_n))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            rows[i][j] = rows[j][i] = draw(st.integers(0, d - 1))
    return Multigraph.from_matrix(d, rows)


def assert_well_formed(g: Multigraph):
    for i in range(g.n):
        assert g.gamma[i][i] == 0
        for j in range(g.n):
            assert g.gamma[i][j] == g.gamma[j][i]


class TestParseGraph:
    """Graph file format."""

    def test_example_multigraph(self):
        """Weights land symmetrically at 0-based indices."""
        g = parse_graph("dim 3\nvertices 3\nedge 1 2 1\nedge 1 3 2\n")
        assert (g.d, g.n) == (3, 3)
        assert g.weight(0, 1) == 1
        assert g.weight(0, 2) == 2
        assert g.weight(1, 2) == 0

    def test_single_vertex(self):
        """A header with one vertex and no edges is a valid graph."""
        g = parse_graph("dim 2\nvertices 1\n")
        assert g.n == 1
        assert g.edges() == []

    def test_repeated_edges_accumulate(self):
        """Repeated edges add up mod d."""
        g = parse_graph("dim 3\nvertices 2\nedge 1 2 2\nedge 1 2 1\n")
        assert g.weight(0, 1) == 0

    def test_comments_and_blank_lines(self):
        """Comments, blank lines and reversed endpoints are accepted."""
        text = "# header\n\ndim 5   # prime\nvertices 2\n  edge 2 1 4 # reversed\n"
        assert parse_graph(text).weight(1, 0) == 4

    @pytest.mark.parametrize(
        "text, line",
        [
            ("dim 4\nvertices 2\n", 1),
            ("dim 3\nvertices 2\nedge 1 3 1\n", 3),
            ("dim 3\nvertices 2\nedge 1 1 1\n", 3),
            ("dim 3\nvertices 2\nedge 1 2 3\n", 3),
            ("dim 3\nvertices 2\nedge 1 2 0\n", 3),
            ("dim 3\nedge 1 2 1\nvertices 2\n", 2),
            ("dim 3\nvertices 2\nedge 1 2\n", 3),
            ("dim 3\nvertices two\n", 2),
            ("dim 3\nvertices 2\nnode 1\n", 3),
            ("dim 3\ndim 3\n", 2),
            ("dim 3\nvertices 0\n", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        """Every parse error names the offending line."""
        with pytest.raises(GraphParseError) as exc:
            parse_graph(text)
        assert exc.value.line == line
        assert str(exc.value).startswith(f"line {line}:")

    def test_vertex_count_is_capped(self):
        """A huge vertex count fails before any matrix is allocated."""
        with pytest.raises(GraphParseError) as exc:
            parse_graph("dim 3\nvertices 1000000\n")
        assert exc.value.line == 2
        assert str(settings.MAX_VERTICES) in str(exc.value)

    def test_dimension_is_capped(self):
        """A dimension above the cap is refused without a primality search."""
        with pytest.raises(GraphParseError) as exc:
            parse_graph("dim 1000000007\nvertices 3\n")
        assert exc.value.line == 1
        assert "out of range" in str(exc.value)

    def test_largest_allowed_sizes(self):
        """The caps themselves are accepted."""
        g = parse_graph(f"dim 997\nvertices {settings.MAX_VERTICES}\nedge 1 2 996\n")
        assert g.n == settings.MAX_VERTICES
        assert g.weight(0, 1) == 996

    def test_missing_header(self):
        """Both `dim` and `vertices` are mandatory."""
        with pytest.raises(GraphParseError):
            parse_graph("vertices 3\n")
        with pytest.raises(GraphParseError):
            parse_graph("dim 3\n")

    def test_missing_file(self, tmp_path):
        """An unreadable file surfaces as a parse error."""
        with pytest.raises(GraphParseError):
            load_graph(str(tmp_path / "absent.graph"))

    @given(graphs())
    def test_text_round_trip(self, g):
        """The canonical text form parses back to the same graph."""
        assert parse_graph(g.to_text()) == g

    def test_edges_and_text(self, example_multigraph):
        """Edges are listed 1-based with u < v."""
        assert example_multigraph.edges() == [(1, 2, 1), (1, 3, 2)]
        assert example_multigraph.to_text() == "dim 3\nvertices 3\nedge 1 2 1\nedge 1 3 2\n"


class TestModel:
    """Invariants enforced on construction."""

    def test_rejects_asymmetric(self):
        """Γ must equal its transpose."""
        with pytest.raises(InvalidArgumentError):
            Multigraph(3, 2, ((0, 1), (2, 0)))

    def test_rejects_self_loop(self):
        """The diagonal must be zero."""
        with pytest.raises(InvalidArgumentError):
            Multigraph(3, 1, ((1,),))

    def test_rejects_non_prime(self):
        """Composite dimensions are refused."""
        with pytest.raises(InvalidArgumentError):
            Multigraph.from_matrix(6, [[0]])

    def test_digest_depends_on_weights(self, triangle, example_multigraph):
        """The digest follows the edge list, not the construction order."""
        assert triangle.digest() != example_multigraph.digest()
        assert triangle.digest() == Multigraph.from_edges(3, 3, [(1, 3, 1), (1, 2, 2)]).digest()


class TestNeighborhood:
    def test_example_multigraph(self, example_multigraph):
        """Vertex 1 sees both other vertices."""
        assert neighborhood(example_multigraph, 0).members == {1, 2}

    def test_isolated_vertex(self):
        """An isolated vertex has an empty neighbourhood."""
        g = Multigraph.from_edges(2, 3, [(1, 2, 1)])
        assert neighborhood(g, 2).members == frozenset()

    def test_never_contains_itself(self, full_triangle):
        """No vertex is its own neighbour."""
        for i in range(3):
            assert i not in neighborhood(full_triangle, i).members

    def test_out_of_range(self, triangle):
        """Indices past the last vertex are refused."""
        with pytest.raises(InvalidArgumentError):
            neighborhood(triangle, 3)


class TestLocalComplement:
    """Γ'_ij = Γ_ij + a Γ_in Γ_jn off the diagonal."""

    def test_zero_multiplier(self, full_triangle):
        """a = 0 leaves the graph unchanged."""
        assert local_complement(full_triangle, 0, 0) == full_triangle

    def test_removes_edge(self, full_triangle):
        """The 2-3 edge of the full triangle cancels at a = 2."""
        g = local_complement(full_triangle, 0, 2)
        assert g.weight(1, 2) == 0
        assert neighborhood(g, 1).members == {0}

    def test_pivot_row_unchanged(self, full_triangle):
        """The pivot keeps its own edges."""
        g = local_complement(full_triangle, 1, 1)
        assert g.gamma[1] == full_triangle.gamma[1]

    @given(graphs(), st.data())
    def test_matches_entrywise_rule(self, g, data):
        """Every off-diagonal entry follows the update rule."""
        pivot = data.draw(st.integers(0, g.n - 1))
        a = data.draw(st.integers(1, g.d - 1))
        moved = local_complement(g, pivot, a)
        for i in range(g.n):
            for j in range(g.n):
                expected = 0 if i == j else (g.weight(i, j) + a * g.weight(i, pivot) * g.weight(j, pivot)) % g.d
                assert moved.weight(i, j) == expected

    @given(graphs(), st.data())
    def test_inverse(self, g, data):
        """LC by a then by d - a is the identity."""
        pivot = data.draw(st.integers(0, g.n - 1))
        a = data.draw(st.integers(0, g.d - 1))
        assert local_complement(local_complement(g, pivot, a), pivot, g.d - a) == g

    @given(graphs(), st.data())
    def test_additive(self, g, data):
        """Two LCs at the same pivot compose additively."""
        pivot = data.draw(st.integers(0, g.n - 1))
        a = data.draw(st.integers(0, g.d - 1))
        b = data.draw(st.integers(0, g.d - 1))
        once = local_complement(g, pivot, (a + b) % g.d)
        twice = local_complement(local_complement(g, pivot, a), pivot, b)
        assert once == twice
        assert_well_formed(twice)
        for i in range(g.n):
            assert twice.weight(i, pivot) == g.weight(i, pivot)

    def test_out_of_range(self, triangle):
        """The pivot must be a vertex."""
        with pytest.raises(InvalidArgumentError):
            local_complement(triangle, 5, 1)


class TestRelabel:
    def test_identity(self, example_multigraph):
        """The identity permutation changes nothing."""
        assert relabel(example_multigraph, (0, 1, 2)) == example_multigraph

    def test_swap_first_two(self, example_multigraph):
        """Swapping vertices 1 and 2 moves the 1-3 edge to 2-3."""
        g = relabel(example_multigraph, (1, 0, 2))
        assert g.weight(1, 2) == 2
        assert g.weight(0, 1) == 1
        assert g.weight(0, 2) == 0

    def test_cycle(self):
        """A 3-cycle sends each edge to the image of its endpoints."""
        g = Multigraph.from_edges(5, 4, [(1, 2, 1), (2, 3, 2), (3, 4, 3)])
        moved = relabel(g, (2, 0, 3, 1))
        for u, v, w in g.edges():
            assert moved.weight((2, 0, 3, 1)[u - 1], (2, 0, 3, 1)[v - 1]) == w
        assert len(moved.edges()) == 3

    @given(graphs(), st.randoms())
    def test_inverse_permutation(self, g, rnd):
        """Relabeling by a permutation and then its inverse restores the graph."""
        perm = list(range(g.n))
        rnd.shuffle(perm)
        inverse = [0] * g.n
        for i, p in enumerate(perm):
            inverse[p] = i
        moved = relabel(g, perm)
        assert_well_formed(moved)
        for i in range(g.n):
            for j in range(g.n):
                assert moved.weight(perm[i], perm[j]) == g.weight(i, j)
        assert relabel(moved, inverse) == g

    def test_rejects_non_permutation(self, triangle):
        """Repeated targets are refused."""
        with pytest.raises(InvalidArgumentError):
            relabel(triangle, (0, 0, 1))
