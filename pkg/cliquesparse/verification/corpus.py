"""
Seeded Erdos-Renyi corpora for the property suites.
"""

import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import networkx as nx

from ..structure.graph import Graph

DEFAULT_ORDERS: Sequence[int] = tuple(range(4, 11))
DEFAULT_DENSITIES: Sequence[float] = (0.2, 0.5, 0.8)


@dataclass(frozen=True)
class CorpusEntry:
    """One random graph together with how it was drawn."""
    n: int
    p: float
    index: int
    seed: int
    graph: Graph

    def describe(self) -> dict:
        return {'n': self.n, 'p': self.p, 'index': self.index, 'seed': self.seed,
                'edges': [list(e) for e in self.graph.edges()]}


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p) from networkx, converted to a bitset graph."""
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def erdos_renyi_corpus(
    seed: int,
    per_cell: int,
    orders: Sequence[int] = DEFAULT_ORDERS,
    densities: Sequence[float] = DEFAULT_DENSITIES,
) -> Iterator[CorpusEntry]:
    """
    Yield per_cell graphs for every (order, density) cell.

    Each graph gets its own seed drawn from one master generator, so the
    corpus depends only on the arguments.
    """
    rng = random.Random(seed)
    for n in orders:
        for p in densities:
            for index in range(per_cell):
                graph_seed = rng.randrange(2 ** 32)
                yield CorpusEntry(n, p, index, graph_seed, random_graph(n, p, graph_seed))
