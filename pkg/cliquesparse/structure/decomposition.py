"""
Tree-decompositions and mu-treewidth for mu in {card, alpha, theta}.

Card width is reported without the usual -1, so tw(K_n) = n.
The exact solver searches elimination orderings: eliminating v after the
set S creates the bag {v} together with the vertices outside S adjacent to
the component of G[S + v] containing v. For a fixed bound k the sets S
reachable through bags of measure at most k are explored breadth first, and
k grows until every vertex can be eliminated.
"""

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.config import check_cap
from ..core.exceptions import DomainError, InvalidDecompositionError
from ..core.logger import get_logger
from ..utils.budget import SearchBudget
from ..utils.cache import MemoTable
from .cliques import twin_partition
from .graph import Graph, VertexSet, bits, component_of, popcount, to_list, to_mask
from .parameters import clique_cover_number, independence_number

logger = get_logger(__name__)


class Measure(str, Enum):
    CARD = 'card'
    ALPHA = 'alpha'
    THETA = 'theta'

    @classmethod
    def parse(cls, name: str) -> 'Measure':
        try:
            return cls(name.lower())
        except ValueError:
            raise DomainError(f"unknown measure {name!r}; expected card, alpha or theta")


def measure_value(G: Graph, mask: VertexSet, mu: Measure, memo: Optional[MemoTable] = None) -> int:
    """mu_G(mask): size, independence number or clique-cover number of G[mask]."""
    if mu == Measure.CARD:
        return popcount(mask)
    if mu == Measure.ALPHA:
        return independence_number(G, mask, memo)
    return clique_cover_number(G, mask, memo)


@dataclass(frozen=True)
class TreeDecomposition:
    """A tree on nodes 0..len(bags)-1 with one bag per node."""
    bags: Tuple[VertexSet, ...]
    edges: Tuple[Tuple[int, int], ...]

    @classmethod
    def path(cls, bags: Sequence[VertexSet]) -> 'TreeDecomposition':
        """Path decomposition with the bags in order."""
        return cls(tuple(bags), tuple((i, i + 1) for i in range(len(bags) - 1)))

    @classmethod
    def single(cls, bag: VertexSet) -> 'TreeDecomposition':
        return cls((bag,), ())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'nodes': list(range(len(self.bags))),
            'edges': [list(e) for e in self.edges],
            'bags': [to_list(b) for b in self.bags],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TreeDecomposition':
        try:
            bags = tuple(to_mask(b) for b in data['bags'])
            edges = tuple((int(a), int(b)) for a, b in data['edges'])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidDecompositionError(f"malformed tree decomposition: {e}")
        return cls(bags, edges)


def check_td(G: Graph, td: TreeDecomposition) -> Optional[str]:
    """Return a description of the first violated axiom, or None if td is valid."""
    m = len(td.bags)
    if m == 0:
        return "a tree decomposition needs at least one node"
    tree = nx.Graph()
    tree.add_nodes_from(range(m))
    for a, b in td.edges:
        if not (0 <= a < m and 0 <= b < m) or a == b:
            return f"tree edge ({a}, {b}) is not between distinct nodes"
        tree.add_edge(a, b)
    if tree.number_of_edges() != m - 1 or not nx.is_connected(tree):
        return "the decomposition graph is not a tree"
    covered = 0
    for i, bag in enumerate(td.bags):
        if bag < 0 or bag >> G.n:
            return f"bag {i} contains a vertex outside the graph"
        covered |= bag
    if covered != G.vertex_mask:
        return f"vertices {to_list(G.vertex_mask & ~covered)} are in no bag"
    for u, v in G.edges():
        pair = (1 << u) | (1 << v)
        if not any(bag & pair == pair for bag in td.bags):
            return f"edge ({u}, {v}) is in no bag"
    for v in range(G.n):
        holding = [i for i, bag in enumerate(td.bags) if bag >> v & 1]
        if not nx.is_connected(tree.subgraph(holding)):
            return f"bags containing vertex {v} do not form a subtree"
    return None


def is_valid_td(G: Graph, td: TreeDecomposition) -> bool:
    return check_td(G, td) is None


def require_valid_td(G: Graph, td: TreeDecomposition) -> None:
    """Raise InvalidDecompositionError naming the first violated axiom."""
    problem = check_td(G, td)
    if problem is not None:
        raise InvalidDecompositionError(problem)


def mu_width(G: Graph, td: TreeDecomposition, mu: Measure, memo: Optional[MemoTable] = None) -> int:
    """Largest mu-value of a bag."""
    require_valid_td(G, td)
    table = memo if memo is not None else MemoTable(name=f"{mu.value}-width")
    return max(measure_value(G, bag, mu, table) for bag in td.bags)


def standard_convention(width: int) -> int:
    """Card width in the usual convention (largest bag minus one)."""
    return width - 1


def _bag_after(G: Graph, eliminated: VertexSet, v: int) -> VertexSet:
    comp = component_of(G, v, eliminated | (1 << v))
    return (1 << v) | (G.neighbourhood(comp) & ~eliminated)


def decomposition_from_ordering(G: Graph, ordering: Sequence[int]) -> TreeDecomposition:
    """
    Tree decomposition induced by an elimination ordering.

    Node i holds the bag created when ordering[i] is eliminated; its parent is
    the node of the earliest-eliminated vertex of that bag other than
    ordering[i]. Parentless nodes (one per component) are chained together.
    """
    if G.n == 0:
        return TreeDecomposition.single(0)
    position = {v: i for i, v in enumerate(ordering)}
    bags: List[VertexSet] = []
    edges: List[Tuple[int, int]] = []
    roots: List[int] = []
    eliminated = 0
    for i, v in enumerate(ordering):
        bag = _bag_after(G, eliminated, v)
        bags.append(bag)
        later = bag & ~(1 << v)
        if later:
            edges.append((i, min(position[u] for u in bits(later))))
        else:
            roots.append(i)
        eliminated |= 1 << v
    edges.extend(zip(roots, roots[1:]))
    return TreeDecomposition(tuple(bags), tuple(edges))


def exact_mu_treewidth(G: Graph, mu: Measure, cap: Optional[int] = None) -> Tuple[int, TreeDecomposition]:
    """
    Exact mu-treewidth with a witness decomposition.

    Args:
        G: Input graph (at most tw_card_cap vertices for card, tw_measure_cap otherwise)
        mu: The bag measure
        cap: Optional override of the applicable cap

    Returns:
        (width, decomposition of that width)
    """
    cap_name = 'tw_card_cap' if mu == Measure.CARD else 'tw_measure_cap'
    check_cap(cap_name, G.n, cap, entry=f"{mu.value}-treewidth")
    if G.n == 0:
        return 0, TreeDecomposition.single(0)

    memo = MemoTable(name=f"{mu.value}-bags")
    budget = SearchBudget.from_config()
    k = 1
    # k = mu(V) always succeeds, so the loop ends
    while True:
        ordering = _eliminate_within(G, mu, k, memo, budget)
        if ordering is not None:
            td = decomposition_from_ordering(G, ordering)
            logger.debug(f"{mu.value}-treewidth {k} after {budget.steps} steps; memo {memo.get_stats()}")
            return k, td
        k += 1


def _eliminate_within(G: Graph, mu: Measure, k: int, memo: MemoTable,
                      budget: SearchBudget) -> Optional[List[int]]:
    """An elimination ordering whose bags all have measure <= k, or None."""
    full = G.vertex_mask
    parent: Dict[VertexSet, Tuple[VertexSet, int]] = {}
    frontier = [0]
    seen = {0}
    while frontier:
        following = []
        for S in frontier:
            for v in bits(full & ~S):
                T = S | (1 << v)
                if T in seen:
                    continue
                budget.tick()
                bag = _bag_after(G, S, v)
                value = memo.get_or_compute((mu.value, bag), lambda: measure_value(G, bag, mu, memo))
                if value > k:
                    continue
                seen.add(T)
                parent[T] = (S, v)
                if T == full:
                    ordering = []
                    while T:
                        T, u = parent[T]
                        ordering.append(u)
                    return ordering[::-1]
                following.append(T)
        frontier = following
    return None


def brute_force_mu_treewidth(G: Graph, mu: Measure, cap: Optional[int] = None) -> int:
    """
    mu-treewidth as the minimum over chordal completions of the largest
    mu-value of a maximal clique of the completion (networkx clique finder).
    """
    check_cap('tw_oracle_cap', G.n, cap, entry=f"{mu.value}-treewidth oracle")
    if G.n == 0:
        return 0
    memo = MemoTable(name='oracle')
    non_edges = [(u, v) for u, v in combinations(range(G.n), 2) if not G.has_edge(u, v)]
    best: Optional[int] = None
    for size in range(len(non_edges) + 1):
        for fill in combinations(non_edges, size):
            H = G.to_networkx()
            H.add_edges_from(fill)
            if not _nx_chordal(H):
                continue
            width = max(measure_value(G, to_mask(K), mu, memo) for K in nx.find_cliques(H))
            if best is None or width < best:
                best = width
    return best


def _nx_chordal(H: nx.Graph) -> bool:
    if H.number_of_nodes() <= 3:
        return True
    return nx.is_chordal(H)


def is_chordal(G: Graph) -> bool:
    """True iff G has no induced cycle of length four or more."""
    return _nx_chordal(G.to_networkx())


def quotient_td(G: Graph, td: TreeDecomposition) -> TreeDecomposition:
    """Project every bag onto the twin classes it meets."""
    require_valid_td(G, td)
    Q = twin_partition(G)
    return TreeDecomposition(tuple(Q.project_set(bag) for bag in td.bags), td.edges)


def lift_td(G: Graph, td: TreeDecomposition) -> TreeDecomposition:
    """Replace every class in a quotient bag by all of its members."""
    Q = twin_partition(G)
    require_valid_td(Q.quotient, td)
    return TreeDecomposition(tuple(Q.expand_set(bag) for bag in td.bags), td.edges)


def grid_diagnostic(G: Graph, k: int) -> Dict[str, Any]:
    """
    Quantities governing when a (k x k)-grid induced minor is forced.

    Reports theta-treewidth, the clique-incidence-diversity s and the local
    independence number d, the growth terms k^10 and d^(5s) of the forcing
    threshold, and for k <= 3 whether the grid is actually an induced minor.
    """
    from .generators import Family, family_graph
    from .parameters import parameter_profile
    from .patterns import induced_minor_contains

    if k < 1:
        raise DomainError("grid size must be positive")
    profile = parameter_profile(G)
    theta_tw, _ = exact_mu_treewidth(G, Measure.THETA)
    s, d = profile.cid, profile.local_alpha
    contains = induced_minor_contains(G, family_graph(Family.GRID, k)) if k <= 3 else None
    return {
        'k': k,
        'theta_treewidth': theta_tw,
        'cid': s,
        'local_alpha': d,
        'threshold_terms': {'k_pow_10': k ** 10, 'exponent_d_pow_5s': d ** (5 * s)},
        'contains_grid': contains,
    }
