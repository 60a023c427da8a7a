"""
Tests for rank-decompositions, local complementation and the chained block reductions.
"""

import pytest
import os
import sys

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.core.exceptions import DomainError, InvalidDecompositionError
from cliquesparse.structure.cliques import twin_partition
from cliquesparse.structure.decomposition import is_valid_td
from cliquesparse.structure.generators import Family, family_graph
from cliquesparse.structure.gf2 import cutrank
from cliquesparse.structure.graph import Graph, are_isomorphic
from cliquesparse.structure.rank import (
    REDUCIBLE_FAMILIES,
    RankDecomposition,
    VertexMinorProgram,
    apply_program,
    brute_force_rankwidth,
    check_rd,
    exact_rankwidth,
    lift_rankdec,
    local_complement,
    qk_reduction_check,
    qk_width_certificate,
    rank_dec_width,
    rankdec_to_treedec,
)
from tests.strategies import graphs, graphs_with_set


class TestRankwidth:
    """Test exact rankwidth and its witnesses."""

    @pytest.mark.parametrize("family,n,width", [
        (Family.CYCLE, 5, 2),
        (Family.CYCLE, 4, 1),
        (Family.KN, 5, 1),
        (Family.PATH, 6, 1),
        (Family.STAR, 5, 1),
    ])
    def test_values(self, family, n, width):
        """Known rankwidths with a witness of that width."""
        G = family_graph(family, n)
        found, rd = exact_rankwidth(G)
        assert found == width
        assert check_rd(G, rd) is None
        assert rank_dec_width(G, rd) == width

    def test_trivial_graphs(self):
        """Edgeless graphs and single vertices have rankwidth 0."""
        assert exact_rankwidth(Graph.empty(4))[0] == 0
        assert exact_rankwidth(Graph.empty(1)) == (0, RankDecomposition(1, (), (0,)))

    def test_dict_round_trip(self):
        """Decompositions rebuild from their dict form."""
        G = family_graph(Family.CYCLE, 5)
        _, rd = exact_rankwidth(G)
        assert RankDecomposition.from_dict(rd.to_dict()) == rd

    def test_malformed_dict(self):
        """Missing keys are decomposition errors."""
        with pytest.raises(InvalidDecompositionError):
            RankDecomposition.from_dict({'leaf_map': [0]})

    def test_leaf_map_mismatch(self):
        """The leaf map must cover every vertex."""
        rd = RankDecomposition(2, ((0, 1),), (0, 1))
        assert check_rd(family_graph(Family.PATH, 3), rd) == "leaf map covers 2 vertices, graph has 3"

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=6))
    def test_agrees_with_tree_enumeration(self, G):
        """The subset search matches enumeration of all cubic trees."""
        assert exact_rankwidth(G)[0] == brute_force_rankwidth(G)

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=7))
    def test_tree_decomposition_on_the_same_tree(self, G):
        """Every optimal rank-decomposition yields a valid tree-decomposition."""
        _, rd = exact_rankwidth(G)
        assert is_valid_td(G, rankdec_to_treedec(G, rd))

    @settings(max_examples=30, deadline=None)
    @given(graphs(max_n=8))
    def test_lift_from_quotient(self, G):
        """Lifting through twin classes costs at most rankwidth one."""
        H = twin_partition(G).quotient
        width, rd = exact_rankwidth(H)
        lifted = lift_rankdec(G, rd)
        assert check_rd(G, lifted) is None
        assert rank_dec_width(G, lifted) <= max(width, 1)


class TestLocalComplement:
    """Test G * v."""

    def test_complete_graph_becomes_star(self):
        """K_4 * v is the star centred at v."""
        assert local_complement(family_graph(Family.KN, 4), 0).edges() == [(0, 1), (0, 2), (0, 3)]

    def test_cycle_becomes_house(self):
        """C_5 * v joins the two neighbours of v."""
        house = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (1, 4)])
        result = local_complement(family_graph(Family.CYCLE, 5), 0)
        assert result.has_edge(1, 4)
        assert are_isomorphic(result, house)

    def test_invalid_vertex(self):
        """The vertex must exist."""
        with pytest.raises(DomainError):
            local_complement(family_graph(Family.PATH, 3), 3)

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_involution_and_cutrank(self, data):
        """Complementing twice at v is the identity and cutranks never change."""
        G, X = data.draw(graphs_with_set(min_n=1, max_n=8))
        v = data.draw(st.integers(min_value=0, max_value=G.n - 1))
        H = local_complement(G, v)
        assert local_complement(H, v) == G
        assert cutrank(H, X) == cutrank(G, X)


class TestVertexMinorPrograms:
    """Test vertex-minor programs."""

    def test_delete(self):
        """Deleting the middle of P_3 leaves two isolated vertices."""
        H = apply_program(family_graph(Family.PATH, 3), VertexMinorProgram().delete(1))
        assert (H.n, H.edge_count, H.origin) == (2, 0, (0, 2))

    def test_complement_then_delete(self):
        """P_3 * 1 - 1 is an edge between the ends."""
        program = VertexMinorProgram().complement_at(1).delete(1)
        H = apply_program(family_graph(Family.PATH, 3), program)
        assert H.edges() == [(0, 1)]
        assert program.to_dict() == {'steps': [['lc', 1], ['delete', 1]]}

    def test_absent_vertex(self):
        """Steps may not name deleted vertices."""
        program = VertexMinorProgram().delete(1).complement_at(1)
        with pytest.raises(DomainError):
            apply_program(family_graph(Family.PATH, 3), program)


class TestChainedBlocks:
    """Test the reductions and witness decompositions of the Q constructions."""

    @pytest.mark.parametrize("family", REDUCIBLE_FAMILIES)
    def test_reductions_reach_matching_chains(self, family):
        """Every reducible family reaches its matching chain at m = 3."""
        report = qk_reduction_check(family, 3)
        assert report.passed, report.failed_clauses()

    def test_akk_needs_the_interior_apexes(self):
        """Complementing only at the connectors leaves the middle block a clique."""
        report = qk_reduction_check(Family.AKK, 3)
        assert report.data['literal_program_isomorphic'] is False
        assert report.findings

    def test_mki_chain_halves(self):
        """The MKI chain of three blocks shortens to two."""
        report = qk_reduction_check(Family.MKI, 3)
        assert report.data['target_length'] == 2
        assert report.findings

    def test_invalid_reductions(self):
        """Unsupported families and single blocks are refused."""
        with pytest.raises(DomainError):
            qk_reduction_check(Family.MII, 3)
        with pytest.raises(DomainError):
            qk_reduction_check(Family.MKK, 1)

    @pytest.mark.parametrize("family", REDUCIBLE_FAMILIES)
    def test_two_block_chains_are_refused(self, family):
        """Chains need three blocks before any program runs."""
        with pytest.raises(DomainError, match="at least three blocks"):
            qk_reduction_check(family, 2)

    @pytest.mark.parametrize("family", [Family.MKK, Family.AKK, Family.MKI])
    def test_width_certificates(self, family):
        """The witness decompositions have alpha-width two on non-chordal chains."""
        certificate = qk_width_certificate(family, 3)
        assert certificate['witness_width'] == 2
        assert certificate['chordal'] is False
        assert certificate['alpha_treewidth'] == 2

    def test_half_graph_certificate(self):
        """The HKK witness stays within width two."""
        certificate = qk_width_certificate(Family.HKK, 3)
        assert certificate['witness_width'] <= 2
        assert certificate['alpha_treewidth'] in (1, 2)


if __name__ == "__main__":
    pytest.main([__file__])
