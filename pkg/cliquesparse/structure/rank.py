"""
Rank-decompositions, rankwidth, local complementation and vertex-minors.

A rank-decomposition is a subcubic tree whose leaves are the vertices of G;
each tree edge splits the leaves into X_e and its complement, and the width
is the largest cutrank of such a split. The exact solver works on rooted
binary hierarchies of vertex subsets: rooting the tree at a subdivided edge
turns every X_e into a subtree's leaf set.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import networkx as nx

from ..core.config import check_cap, resolve_cap
from ..core.exceptions import DomainError, InvalidDecompositionError
from ..core.logger import get_logger
from ..core.report import CheckReport
from ..utils.budget import SearchBudget
from ..utils.cache import MemoTable
from .cliques import twin_partition
from .decomposition import Measure, TreeDecomposition, is_chordal, mu_width
from .generators import Family, q_apex, q_apex_blocks, q_block_vertex, q_graph, q_z
from .gf2 import biadjacency, gf2_rank
from .graph import Graph, VertexSet, are_isomorphic, bits, induced_subgraph, to_list, to_mask
from .parameters import independence_number

logger = get_logger(__name__)


@dataclass(frozen=True)
class RankDecomposition:
    """
    Attributes:
        nodes: Number of tree nodes (ids 0..nodes-1)
        tree_edges: Edges of the tree
        leaf_map: leaf_map[v] is the tree node of vertex v
    """
    nodes: int
    tree_edges: Tuple[Tuple[int, int], ...]
    leaf_map: Tuple[int, ...]

    def tree(self) -> nx.Graph:
        T = nx.Graph()
        T.add_nodes_from(range(self.nodes))
        T.add_edges_from(self.tree_edges)
        return T

    def to_dict(self) -> Dict[str, Any]:
        return {'tree_edges': [list(e) for e in self.tree_edges], 'leaf_map': list(self.leaf_map)}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RankDecomposition':
        try:
            edges = tuple((int(a), int(b)) for a, b in data['tree_edges'])
            leaf_map = tuple(int(x) for x in data['leaf_map'])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidDecompositionError(f"malformed rank decomposition: {e}")
        ids = [x for e in edges for x in e] + list(leaf_map)
        return cls(max(ids, default=-1) + 1, edges, leaf_map)


def check_rd(G: Graph, rd: RankDecomposition) -> Optional[str]:
    """Return the first violated condition, or None if rd is a rank-decomposition of G."""
    if len(rd.leaf_map) != G.n:
        return f"leaf map covers {len(rd.leaf_map)} vertices, graph has {G.n}"
    if G.n == 0:
        return None if rd.nodes == 0 else "the empty graph has an empty decomposition"
    if any(not (0 <= a < rd.nodes and 0 <= b < rd.nodes) or a == b for a, b in rd.tree_edges):
        return "tree edge outside the node range"
    T = rd.tree()
    if T.number_of_edges() != len(rd.tree_edges) or not nx.is_tree(T):
        return "the decomposition graph is not a tree"
    if any(T.degree(t) not in (0, 1, 3) for t in T.nodes):
        return "internal tree nodes must have degree three"
    leaves = {t for t in T.nodes if T.degree(t) <= 1}
    if len(set(rd.leaf_map)) != G.n or set(rd.leaf_map) != leaves:
        return "leaf map is not a bijection onto the leaves"
    return None


def require_valid_rd(G: Graph, rd: RankDecomposition) -> None:
    problem = check_rd(G, rd)
    if problem is not None:
        raise InvalidDecompositionError(problem)


def edge_cuts(G: Graph, rd: RankDecomposition) -> List[Tuple[Tuple[int, int], VertexSet]]:
    """For each tree edge (a, b), the vertices whose leaves lie on a's side."""
    require_valid_rd(G, rd)
    T = rd.tree()
    vertex_at = {node: v for v, node in enumerate(rd.leaf_map)}
    cuts = []
    for a, b in rd.tree_edges:
        T.remove_edge(a, b)
        side = nx.node_connected_component(T, a)
        T.add_edge(a, b)
        cuts.append(((a, b), to_mask(vertex_at[t] for t in side if t in vertex_at)))
    return cuts


def _cutrank(G: Graph, X: VertexSet) -> int:
    rest = G.vertex_mask & ~X
    return gf2_rank([G.adj[x] & rest for x in bits(X)])


def rank_dec_width(G: Graph, rd: RankDecomposition) -> int:
    """Largest cutrank over the tree edges; 0 for trees without edges."""
    return max((_cutrank(G, X) for _, X in edge_cuts(G, rd)), default=0)


def exact_rankwidth(G: Graph, cap: Optional[int] = None) -> Tuple[int, RankDecomposition]:
    """
    Exact rankwidth with a witness decomposition.

    f(S) is the best width of a rooted binary hierarchy on S, where each
    split S = S1 + S2 costs max(rho(S1), rho(S2)); the root split of V costs
    rho of the subdivided root edge. Splits always put the lowest vertex of S
    into S1.

    Raises:
        CapacityError: above rankwidth_cap vertices
    """
    check_cap('rankwidth_cap', G.n, cap, entry='rankwidth')
    if G.n <= 1:
        return 0, RankDecomposition(G.n, (), tuple(range(G.n)))

    rho = MemoTable(name='cutrank')
    best_of: Dict[VertexSet, int] = {}
    choice: Dict[VertexSet, VertexSet] = {}
    budget = SearchBudget.from_config()

    def cut(X: VertexSet) -> int:
        return rho.get_or_compute(X, lambda: _cutrank(G, X))

    def solve(S: VertexSet) -> int:
        if S & (S - 1) == 0:
            return 0
        if S in best_of:
            return best_of[S]
        low = S & -S
        rest = S ^ low
        best, pick = G.n + 1, 0
        sub = rest
        while True:
            sub = (sub - 1) & rest
            budget.tick()
            S1 = low | sub
            S2 = S ^ S1
            width = max(cut(S1), cut(S2))
            if width < best:
                width = max(width, solve(S1))
                if width < best:
                    width = max(width, solve(S2))
                    if width < best:
                        best, pick = width, S1
            if sub == 0:
                break
        best_of[S] = best
        choice[S] = pick
        return best

    width = solve(G.vertex_mask)
    rd = _hierarchy_to_rd(G.n, G.vertex_mask, choice)
    logger.debug(f"rankwidth {width} on {G.n} vertices after {budget.steps} splits")
    return width, rd


def _hierarchy_to_rd(n: int, full: VertexSet, choice: Dict[VertexSet, VertexSet]) -> RankDecomposition:
    edges: List[Tuple[int, int]] = []
    leaf_map = [0] * n
    counter = [0]

    def build(S: VertexSet) -> int:
        node = counter[0]
        counter[0] += 1
        if S & (S - 1) == 0:
            leaf_map[S.bit_length() - 1] = node
            return node
        edges.append((node, build(choice[S])))
        edges.append((node, build(S ^ choice[S])))
        return node

    left = build(choice[full])
    right = build(full ^ choice[full])
    edges.append((left, right))
    return RankDecomposition(counter[0], tuple(edges), tuple(leaf_map))


def brute_force_rankwidth(G: Graph, cap: Optional[int] = None) -> int:
    """
    Rankwidth by enumerating every labelled cubic tree, inserting leaves one
    at a time on each existing edge.
    """
    check_cap('rankwidth_oracle_cap', G.n, cap, entry='rankwidth oracle')
    if G.n <= 1:
        return 0
    if G.n == 2:
        return biadjacency(G, 1, 2).rank()

    best = [G.n]

    def width_of(edges: List[Tuple[int, int]], leaf_of: Dict[int, int]) -> int:
        neighbours: Dict[int, List[int]] = {}
        for a, b in edges:
            neighbours.setdefault(a, []).append(b)
            neighbours.setdefault(b, []).append(a)
        vertex_at = {node: v for v, node in leaf_of.items()}
        width = 0
        for a, b in edges:
            side, stack = {a}, [a]
            while stack:
                t = stack.pop()
                for u in neighbours[t]:
                    if u not in side and not (t == a and u == b):
                        side.add(u)
                        stack.append(u)
            X = to_mask(vertex_at[t] for t in side if t in vertex_at)
            width = max(width, biadjacency(G, X, G.vertex_mask & ~X).rank())
            if width >= best[0]:
                break
        return width

    def insert(v: int, edges: List[Tuple[int, int]], leaf_of: Dict[int, int], next_id: int) -> None:
        if v == G.n:
            best[0] = min(best[0], width_of(edges, leaf_of))
            return
        for i, (a, b) in enumerate(edges):
            middle, leaf = next_id, next_id + 1
            grown = edges[:i] + edges[i + 1:] + [(a, middle), (middle, b), (middle, leaf)]
            leaf_of[v] = leaf
            insert(v + 1, grown, leaf_of, next_id + 2)
        leaf_of.pop(v, None)

    insert(3, [(0, 3), (1, 3), (2, 3)], {0: 0, 1: 1, 2: 2}, 4)
    return best[0]


# ---------------------------------------------------------------------------
# Relations to tree-decompositions and the quotient
# ---------------------------------------------------------------------------

def rankdec_to_treedec(G: Graph, rd: RankDecomposition) -> TreeDecomposition:
    """
    Tree-decomposition on the same tree.

    Leaves keep their own vertex. An internal node splits the vertices into
    three parts, one per incident edge; its bag holds every vertex with a
    neighbour in a different part.
    """
    require_valid_rd(G, rd)
    if G.n <= 2:
        return TreeDecomposition.single(G.vertex_mask)
    T = rd.tree()
    vertex_at = {node: v for v, node in enumerate(rd.leaf_map)}
    bags = [0] * rd.nodes
    for t in range(rd.nodes):
        if t in vertex_at:
            bags[t] = 1 << vertex_at[t]
            continue
        rest = T.copy()
        rest.remove_node(t)
        parts = [
            to_mask(vertex_at[u] for u in comp if u in vertex_at)
            for comp in nx.connected_components(rest)
        ]
        bag = 0
        for P in parts:
            outside = G.vertex_mask & ~P
            bag |= to_mask(v for v in bits(P) if G.adj[v] & outside)
        bags[t] = bag
    return TreeDecomposition(tuple(bags), rd.tree_edges)


def lift_rankdec(G: Graph, rd: RankDecomposition) -> RankDecomposition:
    """
    Rank-decomposition of G from one of its quotient.

    The leaf of each twin class becomes the root of a binary caterpillar
    carrying the class members; for a one-class quotient the first member
    keeps the old leaf and the caterpillar hangs off it.
    """
    Q = twin_partition(G)
    require_valid_rd(Q.quotient, rd)
    if G.n == 0:
        return rd
    edges = list(rd.tree_edges)
    leaf_map = [0] * G.n
    counter = [rd.nodes]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def hang(members: Sequence[int], node: int) -> None:
        if len(members) == 1:
            leaf_map[members[0]] = node
            return
        first, others = fresh(), fresh()
        edges.extend([(node, first), (node, others)])
        hang(members[:1], first)
        hang(members[1:], others)

    for c in range(Q.size):
        members = to_list(Q.expand(c))
        node = rd.leaf_map[c]
        if Q.size == 1 and len(members) > 1:
            leaf_map[members[0]] = node
            below = fresh()
            edges.append((node, below))
            hang(members[1:], below)
        else:
            hang(members, node)
    return RankDecomposition(counter[0], tuple(edges), tuple(leaf_map))


# ---------------------------------------------------------------------------
# Local complementation and vertex-minors
# ---------------------------------------------------------------------------

def local_complement(G: Graph, v: int) -> Graph:
    """G * v: complement the subgraph induced by N(v)."""
    if not 0 <= v < G.n:
        raise DomainError(f"vertex {v} is not in the graph")
    N = G.adj[v]
    rows = list(G.adj)
    for u in bits(N):
        rows[u] ^= N & ~(1 << u)
    return Graph(G.n, tuple(rows), G.labels, G.origin)


@dataclass
class VertexMinorProgram:
    """Sequence of ('lc', v) and ('delete', v) steps over the original vertex ids."""
    steps: List[Tuple[str, int]] = field(default_factory=list)

    def complement_at(self, v: int) -> 'VertexMinorProgram':
        self.steps.append(('lc', v))
        return self

    def delete(self, v: int) -> 'VertexMinorProgram':
        self.steps.append(('delete', v))
        return self

    def to_dict(self) -> Dict[str, Any]:
        return {'steps': [list(step) for step in self.steps]}


def apply_program(G: Graph, program: VertexMinorProgram) -> Graph:
    """
    Run a vertex-minor program and compact the surviving vertices.

    The result's origin map gives each vertex's id in G.

    Raises:
        DomainError: when a step names a vertex that is absent at that point
    """
    rows = list(G.adj)
    alive = G.vertex_mask
    for index, (op, v) in enumerate(program.steps):
        if not (0 <= v < G.n and alive >> v & 1):
            raise DomainError(f"step {index} ({op} {v}) names a vertex that is not present")
        if op == 'lc':
            N = rows[v] & alive
            for u in bits(N):
                rows[u] ^= N & ~(1 << u)
        elif op == 'delete':
            alive &= ~(1 << v)
        else:
            raise DomainError(f"unknown vertex-minor step {op!r}")
    full = G.vertex_mask
    masked = tuple(row & alive & full if alive >> v & 1 else 0 for v, row in enumerate(rows))
    return induced_subgraph(Graph(G.n, masked, G.labels), alive)


# ---------------------------------------------------------------------------
# Chained block constructions
# ---------------------------------------------------------------------------

REDUCIBLE_FAMILIES = (Family.MKK, Family.HKK, Family.MKI, Family.AKK)


def _compare(report: CheckReport, clause: str, reached: Graph, target: Graph, cap: int) -> bool:
    iso = are_isomorphic(reached, target, cap)
    report.record(clause, iso, {
        'reached_edges': [list(e) for e in reached.edges()],
        'target_edges': [list(e) for e in target.edges()],
        'reached_vertices': reached.n,
        'target_vertices': target.n,
    })
    return iso


def qk_reduction_check(family: Family, m: int, cap: Optional[int] = None) -> CheckReport:
    """
    Reduce Q_m(family_m) to a chain of matchings by local complementation.

    MKK and HKK: complement at every apex, reaching Q_m(MII_m) resp.
    Q_m(HII_m). AKK: complement at every z^i and delete them; the completed
    program also complements at the interior apexes, since the interior
    blocks are complemented twice. MKI: complement at the odd apexes,
    suppress every even-block vertex of degree two and delete degree-one
    vertices, reaching Q_ceil(m/2)(MII_m).
    """
    if family not in REDUCIBLE_FAMILIES:
        raise DomainError(f"no reduction for {family.value}; expected one of {[f.value for f in REDUCIBLE_FAMILIES]}")
    if m < 3:
        raise DomainError(f"reductions are checked for chains of at least three blocks, got m = {m}")
    limit = resolve_cap('qk_isomorphism_cap', cap)
    G = q_graph(family, m, m)
    check_cap('qk_isomorphism_cap', G.n, limit, entry=f"vertex-minor check for {family.value}")
    report = CheckReport(check=f"vertex-minor-{family.value}", data={'m': m, 'vertices': G.n})

    if family in (Family.MKK, Family.HKK):
        program = VertexMinorProgram()
        for i in range(1, m + 1):
            program.complement_at(q_apex(family, m, m, i))
        target = q_graph(Family.MII if family == Family.MKK else Family.HII, m, m)
        reached = apply_program(G, program)
        report.data['literal_equal'] = reached == target
        report.data['program'] = program.to_dict()
        _compare(report, 'program-reaches-target', reached, target, limit)

    elif family == Family.AKK:
        target = q_graph(Family.MII, m, m)
        zs = [q_z(m, m, i) for i in range(1, m)]
        literal = VertexMinorProgram()
        for z in zs:
            literal.complement_at(z)
        completed = VertexMinorProgram(list(literal.steps))
        for i in range(2, m):
            completed.complement_at(q_apex(family, m, m, i))
        for z in zs:
            literal.delete(z)
            completed.delete(z)

        literal_graph = apply_program(G, literal)
        literal_iso = are_isomorphic(literal_graph, target, limit)
        report.data['literal_program_isomorphic'] = literal_iso
        if not literal_iso:
            report.add_finding(
                f"complementing at z^1..z^{m - 1} and deleting them leaves the interior blocks "
                f"X^2..X^{m - 1} as cliques; the result is not isomorphic to Q_{m}(MII_{m})"
            )
        reached = apply_program(G, completed)
        report.data['literal_equal'] = reached == target
        report.data['program'] = completed.to_dict()
        _compare(report, 'completed-program-reaches-target', reached, target, limit)

    else:
        program = VertexMinorProgram()
        for i in q_apex_blocks(family, m):
            program.complement_at(q_apex(family, m, m, i))
        for e in range(2, m, 2):
            for j in range(1, m + 1):
                x = q_block_vertex(m, e, j)
                program.complement_at(x).delete(x)
        partial = apply_program(G, program)
        for v in range(partial.n):
            if partial.degree(v) == 1:
                program.delete(partial.origin[v])
        reached = apply_program(G, program)
        length = (m + 1) // 2
        target = q_graph(Family.MII, m, length)
        report.data['target_length'] = length
        report.data['program'] = program.to_dict()
        stated = m // 2 - 1
        if stated < 2:
            report.add_finding(f"stated target length floor(m/2)-1 = {stated} is not a valid chain length for m = {m}")
        elif stated != length:
            report.add_finding(f"stated target length {stated} differs from the reached length {length}")
        _compare(report, 'program-reaches-target', reached, target, limit)

    if not report.passed:
        logger.warning(f"vertex-minor reduction for {family.value}_{m} failed")
    return report


def qk_witness_decomposition(family: Family, n: int) -> TreeDecomposition:
    """
    Hand-built decomposition of Q_n(family_n) with independence number at most two per bag.

    MKK, HKK: path of bags X^i + X^{i+1} + {y^i, y^{i+1}}. AKK: path of bags
    X^i + X^{i+1} + {z^i} with a leaf bag X^i + {y^i} per block. MKI: path
    over consecutive odd blocks with their apexes, plus a leaf bag N[x] for
    every even-block vertex x.
    """
    if family not in REDUCIBLE_FAMILIES:
        raise DomainError(f"no witness decomposition for {family.value}")
    k = n

    def block(i: int) -> VertexSet:
        return to_mask(q_block_vertex(n, i, j) for j in range(1, n + 1))

    if family in (Family.MKK, Family.HKK):
        bags = [
            block(i) | block(i + 1) | (1 << q_apex(family, n, k, i)) | (1 << q_apex(family, n, k, i + 1))
            for i in range(1, k)
        ]
        return TreeDecomposition.path(bags)

    if family == Family.AKK:
        bags = [block(i) | block(i + 1) | (1 << q_z(n, k, i)) for i in range(1, k)]
        edges = [(i, i + 1) for i in range(len(bags) - 1)]
        for i in range(1, k + 1):
            edges.append((min(i, k - 1) - 1, len(bags)))
            bags.append(block(i) | (1 << q_apex(family, n, k, i)))
        return TreeDecomposition(tuple(bags), tuple(edges))

    odd = q_apex_blocks(family, k)
    with_apex = {i: block(i) | (1 << q_apex(family, n, k, i)) for i in odd}
    if len(odd) == 1:
        bags = [with_apex[odd[0]]]
    else:
        bags = [with_apex[a] | with_apex[b] for a, b in zip(odd, odd[1:])]
    edges = [(i, i + 1) for i in range(len(bags) - 1)]
    for e in range(2, k + 1, 2):
        holder = min(odd.index(e - 1), len(bags) - 1)
        for j in range(1, n + 1):
            x = q_block_vertex(n, e, j)
            closed = (1 << x) | (1 << q_block_vertex(n, e - 1, j))
            if e + 1 <= k:
                closed |= 1 << q_block_vertex(n, e + 1, j)
            edges.append((holder, len(bags)))
            bags.append(closed)
    return TreeDecomposition(tuple(bags), tuple(edges))


def qk_width_certificate(family: Family, n: int) -> Dict[str, Any]:
    """
    Exact alpha-treewidth of Q_n(family_n) beyond the exact solver's cap.

    The value is 1 iff the graph is chordal; otherwise it is 2 whenever the
    witness decomposition has alpha-width 2.
    """
    G = q_graph(family, n, n)
    td = qk_witness_decomposition(family, n)
    memo = MemoTable(name='qk-width')
    width = mu_width(G, td, Measure.ALPHA, memo)
    chordal = is_chordal(G)
    local_alpha = max(independence_number(G, G.closed_neighbours(v), memo) for v in range(G.n))
    if chordal:
        alpha_tw: Optional[int] = 1
    elif width == 2:
        alpha_tw = 2
    else:
        alpha_tw = None
    return {
        'family': family.value,
        'n': n,
        'vertices': G.n,
        'witness_width': width,
        'chordal': chordal,
        'local_alpha': local_alpha,
        'alpha_treewidth': alpha_tw,
        'decomposition': td.to_dict(),
    }
