"""
Hypothesis strategies for random graphs and vertex sets.
"""

import os
import sys

from hypothesis import strategies as st

sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from cliquesparse.structure.graph import Graph


@st.composite
def graphs(draw, min_n: int = 0, max_n: int = 8) -> Graph:
    """A graph on min_n..max_n vertices with every edge drawn independently."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [pair for pair, chosen in zip(pairs, keep) if chosen])


@st.composite
def graphs_with_set(draw, min_n: int = 1, max_n: int = 8):
    """A graph together with a vertex subset."""
    G = draw(graphs(min_n, max_n))
    mask = draw(st.integers(min_value=0, max_value=G.vertex_mask))
    return G, mask

