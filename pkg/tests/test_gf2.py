"""
Tests for GF(2) matrices and cutranks.
"""

import pytest
import os
import sys

from hypothesis import given, settings
from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.core.exceptions import DomainError
from cliquesparse.structure.generators import Family, family_graph
from cliquesparse.structure.gf2 import F2Matrix, biadjacency, cutrank, gf2_rank, local_cutrank
from cliquesparse.structure.graph import to_mask
from tests.strategies import graphs_with_set


def sides(n):
    return to_mask(range(n)), to_mask(range(n, 2 * n))


class TestF2Matrix:
    """Test matrix rank and shape checks."""

    def test_rank(self):
        """J - I of order three has rank two over GF(2)."""
        M = F2Matrix.from_lists([[0, 1, 1], [1, 0, 1], [1, 1, 0]])
        assert M.rank() == 2
        assert M.transpose() == M

    def test_zero_and_identity(self):
        """Zero rows add nothing and the identity has full rank."""
        assert gf2_rank([0, 0]) == 0
        assert gf2_rank([1, 2, 4, 8]) == 4

    def test_ragged_rows(self):
        """Rows must share a width."""
        with pytest.raises(DomainError):
            F2Matrix.from_lists([[1, 0], [1]])
        with pytest.raises(DomainError):
            F2Matrix(1, 2, (0b100,))

    @settings(max_examples=50, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 1), min_size=4, max_size=4), min_size=1, max_size=8))
    def test_distinct_rows_bounded_by_rank(self, entries):
        """A matrix of rank r has at most 2^r distinct rows."""
        M = F2Matrix.from_lists(entries)
        assert M.distinct_rows() <= 2 ** M.rank()
        assert M.rank() <= min(M.rows, M.cols)


class TestCutrank:
    """Test cutranks of graphs."""

    def test_complete_graph(self):
        """Every proper cut of K_5 has cutrank one."""
        K5 = family_graph(Family.KN, 5)
        assert {cutrank(K5, X) for X in range(1, 31)} == {1}

    @pytest.mark.parametrize("family,n,rank", [
        (Family.MII, 4, 4),
        (Family.HII, 4, 4),
        (Family.AII, 3, 2),
    ])
    def test_pair_sides(self, family, n, rank):
        """The side cut of a pair family has the rank of its biadjacency matrix."""
        G = family_graph(family, n)
        X, Y = sides(n)
        assert cutrank(G, X) == rank
        assert biadjacency(G, X, Y).rank() == rank

    def test_local_cutrank_needs_disjoint_sets(self):
        """Overlapping sets are refused."""
        G = family_graph(Family.PATH, 4)
        with pytest.raises(DomainError):
            local_cutrank(G, 0b0011, 0b0110)

    @settings(max_examples=50, deadline=None)
    @given(graphs_with_set(max_n=10))
    def test_symmetric(self, drawn):
        """A set and its complement have the same cutrank."""
        G, X = drawn
        assert cutrank(G, X) == cutrank(G, G.vertex_mask & ~X)


if __name__ == "__main__":
    pytest.main([__file__])
