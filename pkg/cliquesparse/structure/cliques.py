"""
Maximal-clique hypergraph, true-twin classes and the clique-quotient graph.

Two vertices are true twins when their closed neighbourhoods coincide,
which is the same as lying in exactly the same maximal cliques. Contracting
each twin class gives the quotient graph, written G~ in comments.
"""

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..core.config import check_cap, resolve_cap
from ..core.exceptions import CapacityError
from ..core.logger import get_logger
from ..core.report import CheckReport
from .graph import Graph, VertexSet, bits, has_edge_between, induced_subgraph, lowest, popcount, to_list

logger = get_logger(__name__)


@dataclass(frozen=True)
class CliqueHypergraph:
    """
    All maximal cliques of a graph.

    Attributes:
        n: Vertex count of the owning graph
        cliques: Maximal cliques as bitsets, lexicographic by sorted members
        incidence: For each vertex, indices of the cliques containing it
    """
    n: int
    cliques: Tuple[VertexSet, ...]
    incidence: Tuple[Tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.cliques)

    def containing(self, v: int) -> Tuple[int, ...]:
        return self.incidence[v]

    def as_lists(self) -> List[List[int]]:
        return [to_list(K) for K in self.cliques]


def maximal_cliques(G: Graph, cap: Optional[int] = None) -> CliqueHypergraph:
    """
    Enumerate all maximal cliques with pivoting Bron-Kerbosch over bitsets.

    The pivot maximises |P & N(u)| over u in P | X, ties to the smallest id.

    Args:
        G: Input graph
        cap: Maximum number of cliques (clique_cap if None)

    Raises:
        CapacityError: when more than cap cliques exist
    """
    limit = resolve_cap('clique_cap', cap)
    found: List[VertexSet] = []
    adj = G.adj

    def expand(R: VertexSet, P: VertexSet, X: VertexSet) -> None:
        if not P and not X:
            found.append(R)
            if len(found) > limit:
                raise CapacityError('clique_cap', limit, len(found))
            return
        pivot, best = -1, -1
        for u in bits(P | X):
            score = popcount(P & adj[u])
            if score > best:
                pivot, best = u, score
        for v in bits(P & ~adj[pivot]):
            expand(R | (1 << v), P & adj[v], X & adj[v])
            P &= ~(1 << v)
            X |= 1 << v

    if G.n:
        expand(0, G.vertex_mask, 0)
    found.sort(key=to_list)

    incidence: List[List[int]] = [[] for _ in range(G.n)]
    for i, K in enumerate(found):
        for v in bits(K):
            incidence[v].append(i)
    logger.debug(f"{len(found)} maximal cliques on {G.n} vertices")
    return CliqueHypergraph(G.n, tuple(found), tuple(tuple(row) for row in incidence))


def clique_linegraph(K: CliqueHypergraph) -> Graph:
    """One vertex per maximal clique, adjacent iff the cliques intersect."""
    edges = [
        (i, j)
        for i in range(len(K.cliques))
        for j in range(i + 1, len(K.cliques))
        if K.cliques[i] & K.cliques[j]
    ]
    return Graph.from_edges(len(K.cliques), edges)


@dataclass(frozen=True)
class QuotientMap:
    """
    Twin classes of a graph together with its quotient graph.

    Class ids follow the smallest member of each class, so class c's
    representative is the smallest vertex in classes[c].
    """
    classes: Tuple[VertexSet, ...]
    quotient: Graph
    class_of: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.classes)

    def project(self, v: int) -> int:
        return self.class_of[v]

    def expand(self, c: int) -> VertexSet:
        return self.classes[c]

    def representative(self, c: int) -> int:
        return lowest(self.classes[c])

    def representatives(self) -> VertexSet:
        return sum(1 << self.representative(c) for c in range(self.size))

    def project_set(self, mask: VertexSet) -> VertexSet:
        """X~: the classes met by X."""
        result = 0
        for v in bits(mask):
            result |= 1 << self.class_of[v]
        return result

    def expand_set(self, mask: VertexSet) -> VertexSet:
        """The union of the classes in a set of class ids."""
        result = 0
        for c in bits(mask):
            result |= self.classes[c]
        return result

    def is_identity(self) -> bool:
        return all(popcount(cls) == 1 for cls in self.classes)


def twin_partition(G: Graph) -> QuotientMap:
    """
    Group vertices by closed neighbourhood and build the quotient graph.

    The quotient's origin map sends each class to its representative.
    """
    index: Dict[VertexSet, int] = {}
    class_of: List[int] = []
    members: List[VertexSet] = []
    for v in range(G.n):
        key = G.closed_neighbours(v)
        c = index.get(key)
        if c is None:
            c = index[key] = len(members)
            members.append(0)
        members[c] |= 1 << v
        class_of.append(c)

    reps = [lowest(cls) for cls in members]
    rows = []
    for c, r in enumerate(reps):
        row = 0
        for d, s in enumerate(reps):
            if d != c and G.has_edge(r, s):
                row |= 1 << d
        rows.append(row)
    labels = tuple(G.label_of(r) for r in reps) if G.labels is not None else None
    quotient = Graph(len(members), tuple(rows), labels, tuple(reps))
    return QuotientMap(tuple(members), quotient, tuple(class_of))


def is_module(G: Graph, S: VertexSet) -> bool:
    """True iff every vertex outside S sees all of S or none of it."""
    outside = G.vertex_mask & ~S
    return all(G.adj[v] & S in (0, S) for v in bits(outside))


def representative_subgraph(G: Graph, Q: QuotientMap) -> Graph:
    """G[R] for R the smallest member of every class; isomorphic to the quotient."""
    return induced_subgraph(G, Q.representatives())


def verify_quotient_preservation(
    G: Graph,
    seed: int = 0,
    trials: int = 20,
    cap: Optional[int] = None,
) -> CheckReport:
    """
    Check that the quotient preserves clique structure.

    Clauses: the clique map K -> K~ is a bijection onto the maximal cliques of
    the quotient; it preserves intersections (an isomorphism of clique
    linegraphs); every choice of one representative per class induces the
    quotient; and the edge-observation clauses relating edges between sets in
    G and between their projections, on random set pairs.

    Args:
        G: Graph with at most quotient_check_cap vertices
        seed: Seed for the random representative sets and set pairs
        trials: Number of random samples per randomized clause
        cap: Optional vertex limit overriding quotient_check_cap
    """
    check_cap('quotient_check_cap', G.n, cap)
    rng = random.Random(seed)
    report = CheckReport(check='quotient-preservation')
    Q = twin_partition(G)
    H = Q.quotient

    cliques_g = maximal_cliques(G)
    cliques_h = maximal_cliques(H)
    image = [Q.project_set(K) for K in cliques_g.cliques]
    targets = set(cliques_h.cliques)
    bijective = report.record(
        'clique-bijection',
        len(set(image)) == len(image) and set(image) == targets,
        {'cliques': cliques_g.as_lists(), 'quotient_cliques': cliques_h.as_lists()},
    )

    if bijective:
        # the clique map itself must be an isomorphism of the linegraphs
        position = {K: j for j, K in enumerate(cliques_h.cliques)}
        relabel = [position[K] for K in image]
        lines_g, lines_h = clique_linegraph(cliques_g), clique_linegraph(cliques_h)
        linegraph_ok = all(
            lines_g.has_edge(i, j) == lines_h.has_edge(relabel[i], relabel[j])
            for i in range(len(image))
            for j in range(i + 1, len(image))
        )
        report.record('linegraph-isomorphism', linegraph_ok, {'pairs': len(image)})

    choices = [[lowest(Q.expand(c))] for c in range(Q.size)]
    for _ in range(trials):
        choices.append([rng.choice(to_list(Q.expand(c))) for c in range(Q.size)])
    for reps in choices:
        ok = all(
            H.has_edge(c, d) == G.has_edge(reps[c], reps[d])
            for c in range(Q.size)
            for d in range(c + 1, Q.size)
        )
        report.record('representatives-induce-quotient', ok, {'representatives': reps})

    for _ in range(trials):
        X = rng.getrandbits(G.n) if G.n else 0
        Y = rng.getrandbits(G.n) if G.n else 0
        Xq, Yq = Q.project_set(X), Q.project_set(Y)
        if has_edge_between(H, Xq, Yq):
            report.record('quotient-edge-lifts', has_edge_between(G, X, Y),
                          {'X': to_list(X), 'Y': to_list(Y)})
        if has_edge_between(G, X, Y):
            report.record('edge-projects', has_edge_between(H, Xq, Yq) or bool(Xq & Yq),
                          {'X': to_list(X), 'Y': to_list(Y)})

        # class-disjoint pair: edge between X~ and Y~ iff edge between their unions
        A = rng.getrandbits(Q.size) if Q.size else 0
        B = (rng.getrandbits(Q.size) if Q.size else 0) & ~A
        report.record(
            'edge-between-unions',
            has_edge_between(H, A, B) == has_edge_between(G, Q.expand_set(A), Q.expand_set(B)),
            {'classes_X': to_list(A), 'classes_Y': to_list(B)},
        )

    if not report.passed:
        logger.warning(f"quotient preservation failed: {report.failed_clauses()}")
    return report

