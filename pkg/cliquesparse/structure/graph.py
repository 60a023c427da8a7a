"""
Immutable simple graphs over dense integer ids.

Adjacency rows and vertex sets are Python ints used as bitsets: bit v of a
row is set iff v is a neighbour. All transforms return new graphs.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.config import check_cap
from ..core.exceptions import DomainError, GraphParseError
from ..core.logger import get_logger
from ..utils.budget import SearchBudget

logger = get_logger(__name__)

VertexSet = int

FORMATS = ('edgelist', 'graph6')


def bits(mask: VertexSet) -> Iterator[int]:
    """Yield the set bits of mask in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: VertexSet) -> int:
    """Number of set bits."""
    return mask.bit_count()


def to_mask(vertices: Iterable[int]) -> VertexSet:
    """Build a bitset from vertex ids."""
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def to_list(mask: VertexSet) -> List[int]:
    """Vertex ids of a bitset in increasing order."""
    return list(bits(mask))


def lowest(mask: VertexSet) -> int:
    """Smallest vertex of a nonempty bitset."""
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True, eq=False)
class Graph:
    """
    Simple undirected graph on vertices 0..n-1.

    Attributes:
        n: Number of vertices
        adj: Adjacency bitset per vertex (symmetric, irreflexive)
        labels: Optional display name per vertex
        origin: Optional id of each vertex in the graph it was extracted from
    """
    n: int
    adj: Tuple[int, ...]
    labels: Optional[Tuple[str, ...]] = None
    origin: Optional[Tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise DomainError(f"adjacency has {len(self.adj)} rows for {self.n} vertices")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise DomainError(f"vertex {v} has a neighbour outside 0..{self.n - 1}")
            if row >> v & 1:
                raise DomainError(f"self-loop at vertex {v}")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise DomainError(f"adjacency not symmetric between {v} and {u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise DomainError("labels must name every vertex")
        if self.origin is not None and len(self.origin) != self.n:
            raise DomainError("origin map must cover every vertex")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        labels: Optional[Sequence[str]] = None,
    ) -> 'Graph':
        """
        Build a graph from an edge iterable.

        Args:
            n: Number of vertices
            edges: Pairs (u, v) with u != v
            labels: Optional vertex names

        Raises:
            DomainError: on out-of-range ids or self-loops
        """
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows), tuple(labels) if labels is not None else None)

    @classmethod
    def empty(cls, n: int) -> 'Graph':
        """Edgeless graph on n vertices."""
        return cls(n, (0,) * n)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"

    @property
    def vertex_mask(self) -> VertexSet:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(popcount(row) for row in self.adj) // 2

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in bits(self.adj[u] >> (u + 1) << (u + 1))]

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbours(self, v: int) -> VertexSet:
        return self.adj[v]

    def closed_neighbours(self, v: int) -> VertexSet:
        return self.adj[v] | (1 << v)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def max_degree(self) -> int:
        return max((self.degree(v) for v in range(self.n)), default=0)

    def neighbourhood(self, mask: VertexSet) -> VertexSet:
        """N(X): vertices outside X with a neighbour in X."""
        return self.closed_neighbourhood(mask) & ~mask

    def closed_neighbourhood(self, mask: VertexSet) -> VertexSet:
        """N[X] = X together with N(X)."""
        result = mask
        for v in bits(mask):
            result |= self.adj[v]
        return result

    def is_clique(self, mask: VertexSet) -> bool:
        return all((self.adj[v] | (1 << v)) & mask == mask for v in bits(mask))

    def is_independent(self, mask: VertexSet) -> bool:
        return all(self.adj[v] & mask == 0 for v in bits(mask))

    def complement(self) -> 'Graph':
        full = self.vertex_mask
        rows = tuple(~self.adj[v] & full & ~(1 << v) for v in range(self.n))
        return Graph(self.n, rows, self.labels)

    def validate_set(self, mask: VertexSet, name: str = 'vertex set') -> VertexSet:
        """Return mask unchanged, raising DomainError if it names a vertex >= n."""
        if mask < 0 or mask >> self.n:
            raise DomainError(f"{name} contains a vertex outside 0..{self.n - 1}")
        return mask

    def label_of(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def index_of_label(self, label: str) -> int:
        """
        Translate an input-file vertex name to its dense id.

        Raises:
            DomainError: when no vertex carries the label
        """
        if self.labels is None:
            try:
                v = int(label)
            except ValueError:
                raise DomainError(f"unknown vertex {label!r}")
            if not 0 <= v < self.n:
                raise DomainError(f"unknown vertex {label!r}")
            return v
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise DomainError(f"unknown vertex {label!r}")

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges())
        return g

    @classmethod
    def from_networkx(cls, g: nx.Graph) -> 'Graph':
        """Build a graph from a networkx graph, numbering nodes in iteration order."""
        index = {node: i for i, node in enumerate(g.nodes())}
        return cls.from_edges(len(index), ((index[u], index[v]) for u, v in g.edges()))


def induced_subgraph(G: Graph, S: VertexSet) -> Graph:
    """
    G[S] with ids compacted in increasing order.

    The result's origin map sends each new id to its id in G.
    """
    G.validate_set(S)
    keep = to_list(S)
    index = {v: i for i, v in enumerate(keep)}
    rows = []
    for v in keep:
        row = 0
        for u in bits(G.adj[v] & S):
            row |= 1 << index[u]
        rows.append(row)
    labels = tuple(G.label_of(v) for v in keep) if G.labels is not None else None
    return Graph(len(keep), tuple(rows), labels, tuple(keep))


def delete_vertices(G: Graph, X: VertexSet) -> Graph:
    """G - X."""
    return induced_subgraph(G, G.vertex_mask & ~G.validate_set(X))


def component_of(G: Graph, v: int, within: VertexSet) -> VertexSet:
    """Vertex set of the component of G[within] containing v."""
    comp = 1 << v
    frontier = comp
    while frontier:
        reach = 0
        for u in bits(frontier):
            reach |= G.adj[u]
        frontier = reach & within & ~comp
        comp |= frontier
    return comp


def connected_components(G: Graph, within: Optional[VertexSet] = None) -> List[VertexSet]:
    """Components of G[within] ordered by smallest vertex."""
    rest = G.vertex_mask if within is None else within
    components = []
    while rest:
        comp = component_of(G, lowest(rest), rest)
        components.append(comp)
        rest &= ~comp
    return components


def is_connected_set(G: Graph, mask: VertexSet) -> bool:
    return mask != 0 and component_of(G, lowest(mask), mask) == mask


def has_edge_between(G: Graph, X: VertexSet, Y: VertexSet) -> bool:
    """True iff some edge xy has x in X and y in Y (x != y)."""
    return any(G.adj[x] & Y for x in bits(X))


def distance_neighbourhood(G: Graph, v: int, r: int) -> VertexSet:
    """Vertices at distance at most r from v."""
    if r < 0:
        raise DomainError("radius must be non-negative")
    ball = 1 << v
    for _ in range(r):
        grown = G.closed_neighbourhood(ball)
        if grown == ball:
            break
        ball = grown
    return ball


def graph_power(G: Graph, r: int) -> Graph:
    """G^r: u ~ w iff 1 <= dist(u, w) <= r."""
    if r < 1:
        raise DomainError("power must be at least 1")
    rows = tuple(distance_neighbourhood(G, v, r) & ~(1 << v) for v in range(G.n))
    return Graph(G.n, rows, G.labels)


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

def parse_graph(text: str, fmt: str = 'edgelist') -> Graph:
    """
    Parse a graph from edge-list or graph6 text.

    Edge lists hold one "u v" pair per line with '#' comments. A leading
    "n <count>" header fixes the vertex set to 0..count-1 and keeps ids as
    written; without it, names are compacted to 0..n-1 in order of first
    appearance.

    Args:
        text: Input text
        fmt: 'edgelist' or 'graph6'

    Returns:
        The parsed graph

    Raises:
        GraphParseError: on malformed input, self-loops or duplicate edges
    """
    if fmt == 'edgelist':
        return _parse_edge_list(text)
    if fmt == 'graph6':
        return _parse_graph6(text)
    raise DomainError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


def _is_nat(token: str) -> bool:
    return token.isascii() and token.isdigit()


def _parse_edge_list(text: str) -> Graph:
    declared: Optional[int] = None
    names: Dict[int, int] = {}
    edges: List[Tuple[int, int]] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == 'n':
            if declared is not None or edges:
                raise GraphParseError("vertex-count header must precede all edges", lineno)
            if len(tokens) != 2 or not _is_nat(tokens[1]):
                raise GraphParseError(f"malformed header {line!r}", lineno)
            declared = int(tokens[1])
            continue
        if len(tokens) != 2 or not all(_is_nat(t) for t in tokens):
            raise GraphParseError(f"expected two non-negative integers, got {line!r}", lineno)
        a, b = int(tokens[0]), int(tokens[1])
        if a == b:
            raise GraphParseError(f"self-loop at vertex {a}", lineno)
        if declared is not None:
            if a >= declared or b >= declared:
                raise GraphParseError(f"vertex out of range for n {declared}", lineno)
            u, v = a, b
        else:
            u = names.setdefault(a, len(names))
            v = names.setdefault(b, len(names))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {a} {b}", lineno)
        seen.add(key)
        edges.append(key)
    if declared is not None:
        return Graph.from_edges(declared, edges)
    labels = [str(name) for name, _ in sorted(names.items(), key=lambda item: item[1])]
    return Graph.from_edges(len(names), edges, labels)


def _parse_graph6(text: str) -> Graph:
    lines = [(i, line.strip()) for i, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not lines:
        raise GraphParseError("empty graph6 input", 1)
    if len(lines) > 1:
        raise GraphParseError("expected a single graph6 record", lines[1][0])
    lineno, record = lines[0]
    if record.startswith('>>graph6<<'):
        record = record[len('>>graph6<<'):]
    try:
        g = nx.from_graph6_bytes(record.encode('ascii'))
    except (nx.NetworkXError, ValueError, UnicodeEncodeError) as e:
        raise GraphParseError(f"invalid graph6 record: {e}", lineno)
    return Graph.from_edges(g.number_of_nodes(), g.edges())


def serialize_graph(G: Graph, fmt: str = 'edgelist') -> str:
    """
    Serialize a graph as edge-list (with "n <count>" header) or graph6.
    """
    if fmt == 'edgelist':
        lines = [f"n {G.n}"] + [f"{u} {v}" for u, v in G.edges()]
        return "\n".join(lines) + "\n"
    if fmt == 'graph6':
        return nx.to_graph6_bytes(G.to_networkx(), header=False).decode('ascii').strip() + "\n"
    raise DomainError(f"unknown graph format {fmt!r}; expected one of {FORMATS}")


# ---------------------------------------------------------------------------
# Isomorphism
# ---------------------------------------------------------------------------

def _refine_colours(graphs: Sequence[Graph]) -> List[List[int]]:
    """Joint colour refinement started from degrees; colours are comparable across graphs."""
    colours = [[g.degree(v) for v in range(g.n)] for g in graphs]
    count = len({c for cs in colours for c in cs})
    while True:
        signatures = [
            [(cs[v], tuple(sorted(cs[u] for u in bits(g.adj[v])))) for v in range(g.n)]
            for g, cs in zip(graphs, colours)
        ]
        palette = {sig: i for i, sig in enumerate(sorted({s for sg in signatures for s in sg}))}
        colours = [[palette[s] for s in sg] for sg in signatures]
        if len(palette) == count:
            return colours
        count = len(palette)


def isomorphism(G: Graph, H: Graph, cap: Optional[int] = None) -> Optional[List[int]]:
    """
    Find an isomorphism G -> H by backtracking over refined colour classes.

    Args:
        G: First graph
        H: Second graph
        cap: Vertex-count limit (isomorphism_cap if None)

    Returns:
        mapping with mapping[v] the image of v, or None if non-isomorphic

    Raises:
        CapacityError: when either graph exceeds the cap
    """
    check_cap('isomorphism_cap', max(G.n, H.n), cap)
    if G.n != H.n or G.edge_count != H.edge_count:
        return None
    if sorted(G.degree(v) for v in range(G.n)) != sorted(H.degree(v) for v in range(H.n)):
        return None

    col_g, col_h = _refine_colours([G, H])
    if sorted(col_g) != sorted(col_h):
        return None

    classes: Dict[int, int] = {}
    for w, c in enumerate(col_h):
        classes[c] = classes.get(c, 0) | (1 << w)

    # smallest colour classes first, then neighbours of placed vertices
    order: List[int] = []
    placed = 0
    remaining = set(range(G.n))
    while remaining:
        v = min(
            remaining,
            key=lambda x: (-popcount(G.adj[x] & placed), popcount(classes[col_g[x]]), x),
        )
        order.append(v)
        placed |= 1 << v
        remaining.discard(v)

    mapping = [-1] * G.n
    budget = SearchBudget.from_config()

    def extend(depth: int, used: int) -> bool:
        if depth == len(order):
            return True
        budget.tick()
        v = order[depth]
        candidates = classes[col_g[v]] & ~used
        for u in order[:depth]:
            image = mapping[u]
            if G.adj[v] >> u & 1:
                candidates &= H.adj[image]
            else:
                candidates &= ~H.adj[image]
            if not candidates:
                return False
        for w in bits(candidates):
            mapping[v] = w
            if extend(depth + 1, used | (1 << w)):
                return True
        mapping[v] = -1
        return False

    if extend(0, 0):
        logger.debug(f"isomorphism found after {budget.steps} search nodes")
        return mapping
    return None


def are_isomorphic(G: Graph, H: Graph, cap: Optional[int] = None) -> bool:
    """True iff G and H are isomorphic (both at most `cap` vertices)."""
    return isomorphism(G, H, cap) is not None
