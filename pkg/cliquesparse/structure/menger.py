"""
Separations, induced linkages and the quotient-based induced Menger search.

Induced A-B-linkages are searched on the quotient graph, where they are
exhaustive at small sizes, and lifted back through twin representatives.
When no linkage exists a minimum vertex separator of the quotient is found
by max-flow on the vertex-split digraph and lifted as a separation of G.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.config import check_cap
from ..core.exceptions import DomainError, VerificationError
from ..core.logger import get_logger
from ..utils.budget import SearchBudget
from .cliques import QuotientMap, maximal_cliques, twin_partition
from .graph import Graph, VertexSet, bits, component_of, lowest, popcount, to_list, to_mask
from .parameters import clique_cover_number

logger = get_logger(__name__)

Path = List[int]


# ---------------------------------------------------------------------------
# Separations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Separation:
    """A pair (A, B) covering V(G) with no edge between A - B and B - A."""
    a: VertexSet
    b: VertexSet

    @property
    def separator(self) -> VertexSet:
        return self.a & self.b

    def to_dict(self) -> Dict[str, List[int]]:
        return {'A': to_list(self.a), 'B': to_list(self.b), 'separator': to_list(self.separator)}


def is_separation(G: Graph, sep: Separation) -> bool:
    if (sep.a | sep.b) != G.vertex_mask or sep.a >> G.n or sep.b >> G.n:
        return False
    only_a = sep.a & ~sep.b
    only_b = sep.b & ~sep.a
    return not any(G.adj[v] & only_b for v in bits(only_a))


def _require_separation(G: Graph, sep: Separation) -> None:
    if not is_separation(G, sep):
        raise DomainError(f"({to_list(sep.a)}, {to_list(sep.b)}) is not a separation")


def theta_order(G: Graph, sep: Separation) -> int:
    """theta(G[A & B])."""
    _require_separation(G, sep)
    return clique_cover_number(G, sep.separator)


def project_separation(G: Graph, sep: Separation) -> Separation:
    """(A~, B~): a separation of the quotient of order at most theta-order * cid."""
    _require_separation(G, sep)
    Q = twin_partition(G)
    return Separation(Q.project_set(sep.a), Q.project_set(sep.b))


def lift_separation(G: Graph, sep: Separation) -> Separation:
    """(union A~, union B~): a separation of G of theta-order at most |A~ & B~|."""
    Q = twin_partition(G)
    _require_separation(Q.quotient, sep)
    return Separation(Q.expand_set(sep.a), Q.expand_set(sep.b))


def separates(G: Graph, A: VertexSet, B: VertexSet, S: VertexSet) -> bool:
    """True iff G - S has no path from A to B."""
    rest = G.vertex_mask & ~S
    reached = 0
    for a in bits(A & rest):
        if not reached >> a & 1:
            reached |= component_of(G, a, rest)
    return not reached & B & rest


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

def is_induced_path(G: Graph, path: Sequence[int]) -> bool:
    """True iff the sequence is a chordless path of distinct vertices."""
    if not path or len(set(path)) != len(path):
        return False
    if any(not 0 <= v < G.n for v in path):
        return False
    for i, u in enumerate(path):
        for j in range(i + 1, len(path)):
            if G.has_edge(u, path[j]) != (j == i + 1):
                return False
    return True


def project_path(G: Graph, path: Sequence[int]) -> Path:
    """
    Class sequence of an induced path with at least three vertices.

    Raises:
        DomainError: for shorter paths or paths that are not induced
    """
    if len(path) < 3:
        raise DomainError("projection needs an induced path on at least three vertices")
    if not is_induced_path(G, path):
        raise DomainError(f"{list(path)} is not an induced path")
    Q = twin_partition(G)
    return [Q.project(v) for v in path]


def lift_path(G: Graph, path: Sequence[int],
              first_choices: Optional[VertexSet] = None,
              last_choices: Optional[VertexSet] = None) -> Path:
    """
    Lift an induced path of the quotient through class representatives.

    Interior classes use their smallest member. The first (last) class uses
    its smallest member inside first_choices (last_choices) when given. A
    single class constrained at both ends lifts to one vertex in both sets,
    or to two twins, one from each.

    Raises:
        DomainError: when the path is not induced in the quotient or a
            constrained end class has no admissible member
    """
    Q = twin_partition(G)
    if not is_induced_path(Q.quotient, path):
        raise DomainError(f"{list(path)} is not an induced path of the quotient")

    def pick(c: int, choices: Optional[VertexSet], end: str) -> int:
        members = Q.expand(c) if choices is None else Q.expand(c) & choices
        if not members:
            raise DomainError(f"class {c} has no member admissible as the {end} vertex")
        return lowest(members)

    if len(path) == 1 and first_choices is not None and last_choices is not None:
        c = path[0]
        both = Q.expand(c) & first_choices & last_choices
        if both:
            return [lowest(both)]
        return [pick(c, first_choices, 'first'), pick(c, last_choices, 'last')]

    lifted = [Q.representative(c) for c in path]
    lifted[0] = pick(path[0], first_choices, 'first')
    if len(path) > 1:
        lifted[-1] = pick(path[-1], last_choices, 'last')
    return lifted


# ---------------------------------------------------------------------------
# Induced linkages
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Linkage:
    paths: Tuple[Tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.paths)

    @property
    def vertices(self) -> VertexSet:
        return to_mask(v for p in self.paths for v in p)

    def to_lists(self) -> List[List[int]]:
        return [list(p) for p in self.paths]


def is_induced_linkage(G: Graph, linkage: Linkage, A: VertexSet, B: VertexSet) -> bool:
    """
    True iff the paths are disjoint A-B paths (each meeting A only in its
    first vertex and B only in its last) whose union induces exactly the paths.
    """
    used = 0
    for path in linkage.paths:
        if not is_induced_path(G, path):
            return False
        mask = to_mask(path)
        if mask & used:
            return False
        if A & mask != 1 << path[0] or B & mask != 1 << path[-1]:
            return False
        used |= mask
    for i, p in enumerate(linkage.paths):
        others = to_mask(v for j, q in enumerate(linkage.paths) if j != i for v in q)
        if any(G.adj[v] & others for v in p):
            return False
    return True


def induced_linkage_search(G: Graph, A: VertexSet, B: VertexSet, k: int,
                           cap: Optional[int] = None) -> Optional[Linkage]:
    """
    Exhaustive search for an induced A-B-linkage of order k.

    Paths are built one at a time with strictly increasing start vertices;
    every new vertex must avoid the closed neighbourhood of earlier paths and
    have no chord to its own path. Returns the first linkage in lexicographic
    search order, or None when none exists.

    Raises:
        CapacityError: above linkage_cap vertices or search_node_budget steps
    """
    check_cap('linkage_cap', G.n, cap, entry='induced linkage')
    G.validate_set(A, 'A')
    G.validate_set(B, 'B')
    if k < 0:
        raise DomainError("linkage order must be non-negative")
    budget = SearchBudget.from_config()
    paths: List[Path] = []

    def grow(path: Path, on_path: VertexSet, blocked: VertexSet, min_start: int) -> bool:
        budget.tick()
        last = path[-1]
        earlier = on_path & ~(1 << last)
        for w in bits(G.adj[last] & ~blocked & ~on_path & ~A):
            if G.adj[w] & earlier:
                continue
            path.append(w)
            if B >> w & 1:
                paths.append(list(path))
                found = place(blocked | G.closed_neighbourhood(on_path | (1 << w)), min_start)
                if found:
                    return True
                paths.pop()
            elif grow(path, on_path | (1 << w), blocked, min_start):
                return True
            path.pop()
        return False

    def place(blocked: VertexSet, min_start: int) -> bool:
        if len(paths) == k:
            return True
        for s in bits(A & ~blocked & ~((1 << min_start) - 1)):
            if B >> s & 1:
                paths.append([s])
                if place(blocked | G.closed_neighbours(s), s + 1):
                    return True
                paths.pop()
            elif grow([s], 1 << s, blocked, s + 1):
                return True
        return False

    if place(0, 0):
        logger.debug(f"induced linkage of order {k} after {budget.steps} steps")
        return Linkage(tuple(tuple(p) for p in paths))
    return None


# ---------------------------------------------------------------------------
# Induced Menger
# ---------------------------------------------------------------------------

def menger_bound(k: int, s: int, t: int) -> int:
    """k * (t(s-1)+1)^(t^2 (s-1)^2 + 1), exactly."""
    return k * (t * (s - 1) + 1) ** (t * t * (s - 1) ** 2 + 1)


@dataclass
class MengerResult:
    """Either an induced linkage or a lifted separation with its theta-order."""
    kind: str
    k: int
    s: int
    t: int
    bound: int
    paths: List[Path] = field(default_factory=list)
    separation: Optional[Separation] = None
    theta: Optional[int] = None
    quotient_order: Optional[int] = None

    @property
    def vertices(self) -> VertexSet:
        return self.separation.separator if self.separation is not None else 0

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            'kind': self.kind, 'k': self.k, 's': self.s, 't': self.t, 'paper_bound': self.bound,
        }
        if self.kind == 'linkage':
            data['paths'] = self.paths
        else:
            data['vertices'] = to_list(self.vertices)
            data['theta'] = self.theta
            data['quotient_order'] = self.quotient_order
            data['separation'] = self.separation.to_dict()
        return data


def minimum_vertex_separator(G: Graph, A: VertexSet, B: VertexSet) -> VertexSet:
    """
    A smallest S such that G - S has no A-B path (S may meet A and B).

    Each vertex v becomes an arc (v, in) -> (v, out) of capacity one; graph
    edges and the source/sink arcs carry no capacity attribute and are
    therefore unbounded for networkx.
    """
    if not A or not B:
        return 0
    D = nx.DiGraph()
    for v in range(G.n):
        D.add_edge(('in', v), ('out', v), capacity=1)
    for u, v in G.edges():
        D.add_edge(('out', u), ('in', v))
        D.add_edge(('out', v), ('in', u))
    for a in bits(A):
        D.add_edge('source', ('in', a))
    for b in bits(B):
        D.add_edge(('out', b), 'sink')
    value, (reachable, _) = nx.minimum_cut(D, 'source', 'sink')
    S = to_mask(v for v in range(G.n) if ('in', v) in reachable and ('out', v) not in reachable)
    if popcount(S) != value:
        raise VerificationError(f"vertex cut of size {popcount(S)} for flow value {value}")
    return S


def _separation_around(G: Graph, A: VertexSet, S: VertexSet) -> Separation:
    rest = G.vertex_mask & ~S
    R = 0
    for a in bits(A & rest):
        if not R >> a & 1:
            R |= component_of(G, a, rest)
    return Separation(R | S, G.vertex_mask & ~R)


def _clique_sparsity(G: Graph, Q: QuotientMap) -> Tuple[int, int]:
    K = maximal_cliques(G)
    s = max((popcount(Q.project_set(C)) for C in K.cliques), default=0)
    t = max((len(row) for row in K.incidence), default=0)
    return s, t


def induced_menger(G: Graph, A: VertexSet, B: VertexSet, k: int,
                   cap: Optional[int] = None) -> MengerResult:
    """
    Find an induced A-B-linkage of order k or a separator of small theta-order.

    The search runs on the quotient with A~ and B~. A quotient linkage is
    lifted path by path, pinning the first vertex into A and the last into
    B. Otherwise a minimum vertex separator S~ of the quotient is extended to
    a separation (X~, Y~) with X~ & Y~ = S~ and lifted to G.

    Raises:
        DomainError: when A or B is empty or k < 1
        CapacityError: when the quotient exceeds linkage_cap
    """
    G.validate_set(A, 'A')
    G.validate_set(B, 'B')
    if not A or not B:
        raise DomainError("induced Menger needs nonempty A and B")
    if k < 1:
        raise DomainError("linkage order must be positive")
    Q = twin_partition(G)
    H = Q.quotient
    check_cap('linkage_cap', H.n, cap, entry='induced Menger')
    s, t = _clique_sparsity(G, Q)
    result = MengerResult(kind='linkage', k=k, s=s, t=t, bound=menger_bound(k, max(s, 1), t))

    Aq, Bq = Q.project_set(A), Q.project_set(B)
    found = induced_linkage_search(H, Aq, Bq, k, cap=H.n)
    if found is not None:
        result.paths = [lift_path(G, list(p), A, B) for p in found.paths]
        if not is_induced_linkage(G, Linkage(tuple(tuple(p) for p in result.paths)), A, B):
            raise VerificationError(f"lifted paths {result.paths} are not an induced linkage")
        logger.info(f"induced linkage of order {k} lifted from a quotient on {H.n} classes")
        return result

    Sq = minimum_vertex_separator(H, Aq, Bq)
    sep = lift_separation(G, _separation_around(H, Aq, Sq))
    if not separates(G, A, B, sep.separator):
        raise VerificationError(f"lifted separator {to_list(sep.separator)} does not separate A from B")
    result.kind = 'separator'
    result.separation = sep
    result.quotient_order = popcount(Sq)
    result.theta = clique_cover_number(G, sep.separator)
    logger.info(f"no induced linkage of order {k}; separator of theta-order {result.theta}")
    return result
