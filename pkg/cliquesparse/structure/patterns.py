"""
Forbidden-pattern search: coupled pairs, parametric containment and
clique-sparseness certificates, plus induced subgraph and induced minor
tests at desk scale.
"""

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..core.config import check_cap
from ..core.exceptions import DomainError, VerificationError
from ..core.logger import get_logger
from ..utils.budget import SearchBudget
from .cliques import maximal_cliques, twin_partition
from .generators import Family, family_graph
from .gf2 import F2Matrix, biadjacency, cutrank, local_cutrank
from .graph import Graph, VertexSet, bits, is_connected_set, lowest, popcount, to_list
from .parameters import maximum_independent_set

logger = get_logger(__name__)

__all__ = [
    'F2Matrix', 'biadjacency', 'cutrank', 'local_cutrank',
    'FAMILIES_A', 'FAMILIES_B', 'FAMILIES_S',
    'CoupledPair', 'PatternCertificate',
    'induced_subgraph_search', 'pg_parameter', 'find_coupled_pair', 'iter_coupled_pairs',
    'pattern_certificate', 'star_certificate', 'induced_minor_contains',
]

FAMILIES_A: Tuple[Family, ...] = (Family.MKI, Family.MKK, Family.AKI, Family.AKK, Family.HKI, Family.HKK)
FAMILIES_B: Tuple[Family, ...] = (Family.MKI, Family.MKK, Family.AKK, Family.HKK, Family.STAR)
FAMILIES_S: Tuple[Family, ...] = (Family.STAR,)

FAMILY_SETS: Dict[str, Tuple[Family, ...]] = {
    'A': FAMILIES_A,
    'B': FAMILIES_B,
    'S': FAMILIES_S,
}

COUPLED_KINDS = ('matching', 'anti-matching', 'half-graph')


# ---------------------------------------------------------------------------
# Induced subgraphs
# ---------------------------------------------------------------------------

def induced_subgraph_search(G: Graph, H: Graph, cap: Optional[int] = None) -> Optional[List[int]]:
    """
    Find an embedding of H as an induced subgraph of G.

    Args:
        G: Host graph
        H: Pattern with at most pattern_cap vertices
        cap: Optional override of pattern_cap

    Returns:
        embedding with embedding[h] the image of pattern vertex h, or None
    """
    check_cap('pattern_cap', H.n, cap)
    if H.n > G.n:
        return None
    if H.n == 0:
        return []

    order: List[int] = []
    placed = 0
    remaining = set(range(H.n))
    while remaining:
        v = min(remaining, key=lambda x: (-popcount(H.adj[x] & placed), -H.degree(x), x))
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    degree_ok = [
        sum(1 << w for w in range(G.n) if G.degree(w) >= H.degree(h)) for h in range(H.n)
    ]
    embedding = [-1] * H.n
    budget = SearchBudget.from_config()

    def extend(depth: int, used: int) -> bool:
        if depth == len(order):
            return True
        budget.tick()
        h = order[depth]
        candidates = degree_ok[h] & ~used
        for prev in order[:depth]:
            image = embedding[prev]
            candidates &= G.adj[image] if H.adj[h] >> prev & 1 else ~G.adj[image]
            if not candidates:
                return False
        for w in bits(candidates):
            embedding[h] = w
            if extend(depth + 1, used | (1 << w)):
                return True
        embedding[h] = -1
        return False

    return list(embedding) if extend(0, 0) else None


def _member_size(family: Family, t: int) -> int:
    return t + 1 if family == Family.STAR else 2 * t


def pg_parameter(G: Graph, families: Sequence[Family], cap: Optional[int] = None) -> int:
    """
    Largest t such that the order-t member of some family is an induced subgraph.

    Every family here is monotone (member t embeds in member t+1), so the
    search stops at the first order no family reaches. Returns 0 when no
    member embeds.

    Args:
        G: Host graph with at most pattern_graph_cap vertices
        families: The family set
        cap: Optional override of pattern_graph_cap
    """
    check_cap('pattern_graph_cap', G.n, cap)
    best = 0
    t = 1
    while True:
        sizes = [f for f in families if _member_size(f, t) <= G.n]
        if not sizes:
            break
        if not any(induced_subgraph_search(G, family_graph(f, t), cap=G.n) is not None for f in sizes):
            break
        best = t
        t += 1
    if best == 0:
        logger.debug("no family member embeds; parametric containment is 0")
    return best


# ---------------------------------------------------------------------------
# Coupled pairs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoupledPair:
    """
    Ordered sets X', Y' whose biadjacency is a matching (x_i ~ y_i), an
    anti-matching (x_i ~ y_j iff i != j) or a half-graph (x_i ~ y_j iff i <= j).
    """
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    kind: str

    def to_dict(self) -> Dict[str, object]:
        return {'x': list(self.x), 'y': list(self.y), 'kind': self.kind}


def _classify(G: Graph, xs: Sequence[int], ys: Sequence[int]) -> Optional[CoupledPair]:
    """Recognise the coupled kind of X' x Y' and order both sides canonically."""
    k = len(xs)
    ymask = sum(1 << y for y in ys)
    rows = {x: G.adj[x] & ymask for x in xs}
    counts = sorted(popcount(r) for r in rows.values())

    if counts == [1] * k and len(set(rows.values())) == k:
        ordered_y = tuple(lowest(rows[x]) for x in xs)
        return CoupledPair(tuple(xs), ordered_y, 'matching')
    if counts == [k - 1] * k and len({ymask & ~r for r in rows.values()}) == k:
        ordered_y = tuple(lowest(ymask & ~rows[x]) for x in xs)
        return CoupledPair(tuple(xs), ordered_y, 'anti-matching')
    if counts == list(range(1, k + 1)):
        ordered_x = sorted(xs, key=lambda x: -popcount(rows[x]))
        if all(rows[a] & rows[b] == rows[b] for a, b in zip(ordered_x, ordered_x[1:])):
            col = {y: sum(1 for x in xs if rows[x] >> y & 1) for y in ys}
            ordered_y = tuple(sorted(ys, key=lambda y: col[y]))
            return CoupledPair(tuple(ordered_x), ordered_y, 'half-graph')
    return None


def _pattern_holds(G: Graph, pair: CoupledPair) -> bool:
    rule = {
        'matching': lambda i, j: i == j,
        'anti-matching': lambda i, j: i != j,
        'half-graph': lambda i, j: i <= j,
    }[pair.kind]
    return all(
        G.has_edge(x, y) == rule(i, j)
        for i, x in enumerate(pair.x)
        for j, y in enumerate(pair.y)
    )


def iter_coupled_pairs(G: Graph, X: VertexSet, Y: VertexSet, k: int,
                       cap: Optional[int] = None) -> Iterator[CoupledPair]:
    """
    Yield every coupled pair of order k between subsets of X and Y,
    in lexicographic order of the chosen subsets.

    Raises:
        DomainError: when X and Y overlap or k < 1
        CapacityError: when |X| or |Y| exceeds coupled_cap
    """
    G.validate_set(X, 'X')
    G.validate_set(Y, 'Y')
    if X & Y:
        raise DomainError("coupled pairs need disjoint sets")
    if k < 1:
        raise DomainError("coupled pairs need order at least 1")
    check_cap('coupled_cap', max(popcount(X), popcount(Y)), cap)
    budget = SearchBudget.from_config()
    for xs in combinations(to_list(X), k):
        for ys in combinations(to_list(Y), k):
            budget.tick()
            pair = _classify(G, xs, ys)
            if pair is not None:
                if not _pattern_holds(G, pair):
                    raise VerificationError(f"coupled pair {pair.to_dict()} failed its pattern check")
                yield pair


def find_coupled_pair(G: Graph, X: VertexSet, Y: VertexSet, k: int,
                      cap: Optional[int] = None) -> Optional[CoupledPair]:
    """First coupled pair of order k, or None if none exists."""
    return next(iter_coupled_pairs(G, X, Y, k, cap), None)


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PatternCertificate:
    """
    An induced copy of a parametric graph.

    embedding lists host vertices in the family's own id order:
    x_1..x_t then y_1..y_t, or centre then leaves for stars.
    """
    family: Family
    order: int
    embedding: Tuple[int, ...] = field(default_factory=tuple)

    @classmethod
    def build(cls, G: Graph, family: Family, order: int, embedding: Sequence[int]) -> 'PatternCertificate':
        """
        Create a certificate after checking the embedding induces the family member.

        Raises:
            VerificationError: when the embedded vertices do not induce it
        """
        H = family_graph(family, order)
        if len(embedding) != H.n or len(set(embedding)) != H.n:
            raise VerificationError(f"embedding of {family.value}_{order} must list {H.n} distinct vertices")
        for a in range(H.n):
            for b in range(a + 1, H.n):
                if G.has_edge(embedding[a], embedding[b]) != H.has_edge(a, b):
                    raise VerificationError(
                        f"vertices {embedding[a]}, {embedding[b]} break the {family.value}_{order} pattern"
                    )
        return cls(family, order, tuple(embedding))

    def to_dict(self) -> Dict[str, object]:
        return {'family': self.family.value, 'order': self.order, 'embedding': list(self.embedding)}


def _family_for(kind: str, z_is_clique: bool) -> Family:
    letter = {'matching': 'M', 'anti-matching': 'A', 'half-graph': 'H'}[kind]
    return Family(f"{letter}K{'K' if z_is_clique else 'I'}")


def pattern_certificate(G: Graph, t: int, cap: Optional[int] = None) -> Optional[PatternCertificate]:
    """
    Look for an order-t member of {MKI, MKK, AKI, AKK, HKI, HKK}.

    Maximal cliques are tried by decreasing number of twin classes: one
    representative per class of K is coupled against N(K), and the N(K) side
    is kept when it is a clique or an independent set. If that loop finds
    nothing, every family is searched directly, so None means no order-t
    member is an induced subgraph.

    Args:
        G: Host graph with at most pattern_graph_cap vertices
        t: Pattern order
        cap: Optional override of pattern_graph_cap
    """
    if t < 1:
        raise DomainError("pattern order must be positive")
    check_cap('pattern_graph_cap', G.n, cap)
    Q = twin_partition(G)
    cliques = sorted(maximal_cliques(G).cliques, key=lambda K: (-popcount(Q.project_set(K)), to_list(K)))

    for K in cliques:
        if popcount(Q.project_set(K)) < t:
            break
        reps = sum(1 << Q.representative(c) for c in bits(Q.project_set(K)))
        outside = G.neighbourhood(K)
        if popcount(outside) < t:
            continue
        for pair in iter_coupled_pairs(G, reps, outside, t, cap=G.n):
            zmask = sum(1 << z for z in pair.y)
            if G.is_clique(zmask) or G.is_independent(zmask):
                family = _family_for(pair.kind, G.is_clique(zmask))
                cert = PatternCertificate.build(G, family, t, list(pair.x) + list(pair.y))
                logger.debug(f"certificate from clique {to_list(K)}: {cert.to_dict()}")
                return cert

    for family in FAMILIES_A:
        H = family_graph(family, t)
        if H.n > G.n:
            continue
        embedding = induced_subgraph_search(G, H, cap=G.n)
        if embedding is not None:
            return PatternCertificate.build(G, family, t, embedding)
    return None


def star_certificate(G: Graph) -> Optional[PatternCertificate]:
    """An induced star with the most leaves, or None for edgeless graphs."""
    best: Optional[Tuple[int, int]] = None
    for v in range(G.n):
        if not G.adj[v]:
            continue
        leaves = maximum_independent_set(G, G.adj[v])
        if best is None or popcount(leaves) > popcount(best[1]):
            best = (v, leaves)
    if best is None:
        return None
    centre, leaves = best
    return PatternCertificate.build(G, Family.STAR, popcount(leaves), [centre] + to_list(leaves))


# ---------------------------------------------------------------------------
# Induced minors
# ---------------------------------------------------------------------------

def _pattern_twins(H: Graph) -> List[Tuple[int, int]]:
    """Pairs a < b of vertices of H with the same neighbours apart from each other."""
    return [
        (a, b) for a, b in combinations(range(H.n), 2)
        if H.adj[a] & ~(1 << b) == H.adj[b] & ~(1 << a)
    ]


def induced_minor_contains(G: Graph, H: Graph,
                           pattern_cap: Optional[int] = None,
                           graph_cap: Optional[int] = None) -> bool:
    """
    True iff H is an induced minor of G.

    Searches for disjoint connected branch sets B_h, one per vertex of H,
    with an edge between B_a and B_b exactly when ab is an edge of H.
    Pattern vertices are placed so that each one after the first in its
    component has an earlier neighbour, whose branch set the new one must touch.

    Swapping the branch sets of twins in H gives another model, so for every
    twin pair the one placed first gets the branch set with the smaller
    lowest vertex.
    """
    check_cap('minor_pattern_cap', H.n, pattern_cap)
    check_cap('minor_graph_cap', G.n, graph_cap)
    if H.n > G.n:
        return False
    if H.n == 0:
        return True

    connected = [m for m in range(1, 1 << G.n) if is_connected_set(G, m)]
    order: List[int] = []
    placed = 0
    while len(order) < H.n:
        pending = [h for h in range(H.n) if not placed >> h & 1]
        v = max(pending, key=lambda h: (popcount(H.adj[h] & placed), H.degree(h), -h))
        order.append(v)
        placed |= 1 << v
    position = {h: i for i, h in enumerate(order)}

    # twin partners placed before h, per h
    earlier_twins: Dict[int, List[int]] = {h: [] for h in range(H.n)}
    for a, b in _pattern_twins(H):
        first, second = (a, b) if position[a] < position[b] else (b, a)
        earlier_twins[second].append(first)

    branch = [0] * H.n
    budget = SearchBudget.from_config()

    def extend(depth: int, used: VertexSet) -> bool:
        if depth == len(order):
            return True
        h = order[depth]
        # B must avoid N[B_p] for earlier non-neighbours p and touch N(B_p) for earlier neighbours
        forbidden = used
        touch: List[VertexSet] = []
        for p in order[:depth]:
            if H.adj[h] >> p & 1:
                touch.append(G.neighbourhood(branch[p]))
            else:
                forbidden |= G.closed_neighbourhood(branch[p])
        floor = max((lowest(branch[p]) for p in earlier_twins[h]), default=-1)
        for B in connected:
            if B & forbidden or lowest(B) <= floor:
                continue
            budget.tick()
            if all(B & N for N in touch):
                branch[h] = B
                if extend(depth + 1, used | B):
                    return True
        return False

    found = extend(0, 0)
    logger.debug(f"induced minor search on {G.n} vertices: {found} after {budget.steps} steps")
    return found
