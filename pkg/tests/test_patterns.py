"""
Tests for coupled pairs, parametric containment and pattern certificates.
"""

import pytest
import os
import sys

from hypothesis import given, settings

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.core.exceptions import CapacityError, DomainError, VerificationError
from cliquesparse.structure.generators import Family, family_graph
from cliquesparse.structure.graph import Graph, induced_subgraph, are_isomorphic, to_mask
from cliquesparse.structure.patterns import (
    FAMILIES_A,
    FAMILIES_B,
    FAMILIES_S,
    PatternCertificate,
    find_coupled_pair,
    induced_minor_contains,
    induced_subgraph_search,
    iter_coupled_pairs,
    pattern_certificate,
    pg_parameter,
    star_certificate,
)
from tests.strategies import graphs

X3, Y3 = to_mask([0, 1, 2]), to_mask([3, 4, 5])


class TestInducedSubgraphSearch:
    """Test induced embeddings."""

    def test_path_in_cycle(self):
        """P_4 sits in C_5 as four consecutive vertices."""
        C5, P4 = family_graph(Family.CYCLE, 5), family_graph(Family.PATH, 4)
        embedding = induced_subgraph_search(C5, P4)
        assert embedding is not None
        assert are_isomorphic(induced_subgraph(C5, to_mask(embedding)), P4)

    def test_cycle_not_in_longer_cycle(self):
        """C_4 is not an induced subgraph of C_5."""
        assert induced_subgraph_search(family_graph(Family.CYCLE, 5), family_graph(Family.CYCLE, 4)) is None

    def test_trivial_patterns(self):
        """The empty pattern embeds and larger patterns do not."""
        assert induced_subgraph_search(family_graph(Family.PATH, 2), Graph.empty(0)) == []
        assert induced_subgraph_search(family_graph(Family.PATH, 2), family_graph(Family.PATH, 3)) is None

    @settings(max_examples=30, deadline=None)
    @given(graphs(min_n=1, max_n=8))
    def test_embeddings_are_induced(self, G):
        """Whatever P_3 embedding is returned induces P_3."""
        P3 = family_graph(Family.PATH, 3)
        embedding = induced_subgraph_search(G, P3)
        if embedding is not None:
            assert all(G.has_edge(embedding[a], embedding[b]) == P3.has_edge(a, b)
                       for a in range(3) for b in range(a + 1, 3))


class TestParametricContainment:
    """Test pg_parameter over the family sets."""

    def test_star(self):
        """Star_4 contains stars up to four leaves."""
        assert pg_parameter(family_graph(Family.STAR, 4), FAMILIES_S) == 4

    def test_path_contains_small_star(self):
        """P_4 contains Star_2 = P_3 only."""
        assert pg_parameter(family_graph(Family.PATH, 4), FAMILIES_S) == 2

    def test_pair_families(self):
        """MKI_3 reaches order 3 and C_4 = MKK_2 reaches order 2."""
        assert pg_parameter(family_graph(Family.MKI, 3), FAMILIES_A) == 3
        assert pg_parameter(family_graph(Family.CYCLE, 4), FAMILIES_A) == 2

    def test_edgeless(self):
        """Nothing embeds in an edgeless graph but AKK_1 and AKI_1."""
        assert pg_parameter(Graph.empty(3), FAMILIES_B) == 1
        assert pg_parameter(Graph.empty(1), FAMILIES_A) == 0


class TestCoupledPairs:
    """Test coupled pair recognition."""

    def test_matching(self):
        """The first pair of MKI_3 is x1 x2 against y1 y2."""
        pair = find_coupled_pair(family_graph(Family.MKI, 3), X3, Y3, 2)
        assert pair.to_dict() == {'x': [0, 1], 'y': [3, 4], 'kind': 'matching'}

    def test_anti_matching(self):
        """AII_3 is one anti-matching of order three."""
        pair = find_coupled_pair(family_graph(Family.AII, 3), X3, Y3, 3)
        assert pair.kind == 'anti-matching'
        assert pair.y == (3, 4, 5)

    def test_half_graph_ordering(self):
        """Half-graph sides are ordered so that x_i ~ y_j iff i <= j."""
        pair = find_coupled_pair(family_graph(Family.HII, 3), X3, Y3, 3)
        assert pair.kind == 'half-graph'
        assert (pair.x, pair.y) == ((0, 1, 2), (3, 4, 5))

    def test_count(self):
        """MII_3 has three matchings of order two."""
        pairs = list(iter_coupled_pairs(family_graph(Family.MII, 3), X3, Y3, 2))
        assert [p.kind for p in pairs] == ['matching'] * 3

    def test_invalid_arguments(self):
        """Overlapping sides and order zero are domain errors."""
        G = family_graph(Family.MII, 3)
        with pytest.raises(DomainError):
            find_coupled_pair(G, X3, X3, 1)
        with pytest.raises(DomainError):
            find_coupled_pair(G, X3, Y3, 0)


class TestCertificates:
    """Test pattern and star certificates."""

    def test_clique_with_matching(self):
        """The clique side of MKI_3 couples to its matched independent set."""
        cert = pattern_certificate(family_graph(Family.MKI, 3), 3)
        assert cert.to_dict() == {'family': 'MKI', 'order': 3, 'embedding': [0, 1, 2, 3, 4, 5]}

    def test_star_has_no_pair_pattern(self):
        """Stars contain no order-2 member of the pair families."""
        assert pattern_certificate(family_graph(Family.STAR, 5), 2) is None

    def test_four_cycle(self):
        """C_4 is MKK_2."""
        cert = pattern_certificate(family_graph(Family.CYCLE, 4), 2)
        assert cert.family == Family.MKK

    def test_invalid_order(self):
        """Orders start at one."""
        with pytest.raises(DomainError):
            pattern_certificate(family_graph(Family.PATH, 3), 0)

    def test_star_certificate(self):
        """The largest induced star of Star_4 is itself."""
        cert = star_certificate(family_graph(Family.STAR, 4))
        assert (cert.order, cert.embedding) == (4, (0, 1, 2, 3, 4))
        assert star_certificate(Graph.empty(3)) is None

    def test_build_rejects_wrong_embedding(self):
        """Certificates are checked against the family member."""
        with pytest.raises(VerificationError):
            PatternCertificate.build(family_graph(Family.PATH, 4), Family.STAR, 2, [0, 1, 2])
        with pytest.raises(VerificationError):
            PatternCertificate.build(family_graph(Family.PATH, 4), Family.STAR, 2, [0, 1])

    @settings(max_examples=30, deadline=None)
    @given(graphs(min_n=1, max_n=8))
    def test_certificates_agree_with_containment(self, G):
        """An order-2 certificate exists iff some pair family reaches order 2."""
        found = pattern_certificate(G, 2)
        assert (found is not None) == (pg_parameter(G, FAMILIES_A) >= 2)


class TestInducedMinors:
    """Test the induced minor search."""

    def test_cycle_contracts_to_square(self):
        """Contracting an edge of C_5 gives C_4."""
        assert induced_minor_contains(family_graph(Family.CYCLE, 5), family_graph(Family.CYCLE, 4))

    def test_path_has_no_cycle(self):
        """Paths have only paths as connected induced minors."""
        assert not induced_minor_contains(family_graph(Family.PATH, 5), family_graph(Family.CYCLE, 4))

    def test_complete_graph(self):
        """Induced minors of K_4 are complete."""
        assert not induced_minor_contains(family_graph(Family.KN, 4), family_graph(Family.PATH, 3))
        assert induced_minor_contains(family_graph(Family.KN, 4), family_graph(Family.KN, 2))

    def test_grid_contains_square(self):
        """Contracting the rows of the 3x3 grid leaves C_4 inside it."""
        assert induced_minor_contains(family_graph(Family.GRID, 3), family_graph(Family.CYCLE, 4))

    def test_complete_graph_has_no_square(self):
        """Contractions of K_4 stay complete, so C_4 never appears."""
        assert not induced_minor_contains(family_graph(Family.KN, 4), family_graph(Family.CYCLE, 4))

    def test_twin_patterns(self):
        """Patterns with twins are still found: K_{2,3} sits in K_{3,3}."""
        assert induced_minor_contains(family_graph(Family.KNN, 3), Graph.from_edges(
            5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]))
        assert not induced_minor_contains(family_graph(Family.STAR, 4), family_graph(Family.KNN, 2))

    @pytest.mark.parametrize("tree", [
        family_graph(Family.PATH, 12),
        family_graph(Family.STAR, 11),
    ])
    def test_trees_at_the_size_cap(self, tree):
        """Twelve-vertex trees are searched exhaustively and hold no C_4."""
        assert tree.n == 12
        assert not induced_minor_contains(tree, family_graph(Family.CYCLE, 4))

    def test_size_caps(self):
        """Graphs above the caps are refused."""
        with pytest.raises(CapacityError):
            induced_minor_contains(family_graph(Family.PATH, 13), family_graph(Family.CYCLE, 4))
        with pytest.raises(CapacityError):
            induced_minor_contains(family_graph(Family.PATH, 12), family_graph(Family.PATH, 10))


if __name__ == "__main__":
    pytest.main([__file__])
