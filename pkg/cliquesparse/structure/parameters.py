"""
Clique-sparsity parameters and the inequalities relating them.

Exact independence numbers use branch-and-bound with memoization on vertex
bitsets; clique-cover numbers are chromatic numbers of the complement,
computed by DSATUR branch-and-bound.
"""

import random
from dataclasses import asdict, dataclass
from typing import Any, Dict, List, Optional

from ..core.config import check_cap
from ..core.logger import get_logger
from ..core.report import CheckReport
from ..utils.cache import MemoTable
from .cliques import QuotientMap, maximal_cliques, twin_partition
from .gf2 import cutrank, local_cutrank
from .graph import Graph, VertexSet, bits, popcount, to_list

logger = get_logger(__name__)


# ---------------------------------------------------------------------------
# Exact measures on vertex subsets
# ---------------------------------------------------------------------------

def maximum_independent_set(G: Graph, S: Optional[VertexSet] = None,
                            memo: Optional[MemoTable] = None,
                            cap: Optional[int] = None) -> VertexSet:
    """
    A maximum independent set of G[S].

    Vertices of degree at most one inside the candidate set are taken
    greedily; otherwise the search branches on a vertex of maximum degree.
    """
    mask = G.vertex_mask if S is None else G.validate_set(S)
    check_cap('exact_measure_cap', popcount(mask), cap, entry='alpha')
    table = memo if memo is not None else MemoTable(name='alpha')
    adj = G.adj

    def solve(P: VertexSet) -> VertexSet:
        if not P:
            return 0
        cached = table.get(('mis', P))
        if cached is not None:
            return cached
        low_v, low_d, high_v, high_d = -1, 1 << 30, -1, -1
        for v in bits(P):
            d = popcount(adj[v] & P)
            if d < low_d:
                low_v, low_d = v, d
            if d > high_d:
                high_v, high_d = v, d
        if low_d <= 1:
            best = (1 << low_v) | solve(P & ~adj[low_v] & ~(1 << low_v))
        else:
            take = (1 << high_v) | solve(P & ~adj[high_v] & ~(1 << high_v))
            skip = solve(P & ~(1 << high_v))
            best = take if popcount(take) >= popcount(skip) else skip
        table.set(('mis', P), best)
        return best

    return solve(mask)


def independence_number(G: Graph, S: Optional[VertexSet] = None,
                        memo: Optional[MemoTable] = None,
                        cap: Optional[int] = None) -> int:
    """alpha(G[S]); 0 for the empty set."""
    return popcount(maximum_independent_set(G, S, memo, cap))


def clique_cover_number(G: Graph, S: Optional[VertexSet] = None,
                        memo: Optional[MemoTable] = None,
                        cap: Optional[int] = None) -> int:
    """
    theta(G[S]): fewest cliques covering S, as the chromatic number of the
    complement of G[S].
    """
    mask = G.vertex_mask if S is None else G.validate_set(S)
    check_cap('exact_measure_cap', popcount(mask), cap, entry='theta')
    if not mask:
        return 0
    table = memo if memo is not None else MemoTable(name='theta')
    cached = table.get(('theta', mask))
    if cached is not None:
        return cached
    conflict = {v: ~G.adj[v] & mask & ~(1 << v) for v in bits(mask)}
    result = _chromatic_number(conflict, mask)
    table.set(('theta', mask), result)
    return result


def _chromatic_number(conflict: Dict[int, int], mask: VertexSet) -> int:
    """DSATUR branch-and-bound colouring of the conflict graph on mask."""
    vertices = to_list(mask)

    # greedy clique in the conflict graph as a lower bound
    lower, candidates = 0, mask
    while candidates:
        v = max(bits(candidates), key=lambda u: popcount(conflict[u] & candidates))
        lower += 1
        candidates &= conflict[v]

    classes: List[int] = []
    best = [len(vertices)]

    def saturation(v: int) -> int:
        return sum(1 for cls in classes if cls & conflict[v])

    def search(uncoloured: VertexSet) -> None:
        if len(classes) >= best[0]:
            return
        if not uncoloured:
            best[0] = len(classes)
            return
        v = max(
            bits(uncoloured),
            key=lambda u: (saturation(u), popcount(conflict[u] & uncoloured), -u),
        )
        rest = uncoloured & ~(1 << v)
        for i in range(len(classes)):
            if not classes[i] & conflict[v]:
                classes[i] |= 1 << v
                search(rest)
                classes[i] &= ~(1 << v)
                if best[0] == lower:
                    return
        if len(classes) + 1 < best[0]:
            classes.append(1 << v)
            search(rest)
            classes.pop()

    search(mask)
    return best[0]


# ---------------------------------------------------------------------------
# Parameter profile
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterProfile:
    """The nine clique-sparsity parameters of a graph."""
    omega: int
    cid: int
    cideg: int
    cdeg: int
    delta_tilde: int
    local_alpha: int
    local_theta: int
    alpha: int
    theta: int

    def to_dict(self) -> Dict[str, int]:
        return asdict(self)


def parameter_profile(G: Graph, memo: Optional[MemoTable] = None,
                      clique_cap: Optional[int] = None,
                      measure_cap: Optional[int] = None) -> ParameterProfile:
    """
    Compute every parameter exactly.

    Args:
        G: Input graph
        memo: Optional shared memo table for alpha/theta of subsets
        clique_cap: Override of the maximal-clique count cap
        measure_cap: Override of the exact alpha/theta size cap

    Raises:
        CapacityError: naming the entry whose computation exceeded a cap
    """
    table = memo if memo is not None else MemoTable(name='profile')
    K = maximal_cliques(G, clique_cap)
    Q = twin_partition(G)

    omega = max((popcount(C) for C in K.cliques), default=0)
    cid = max((popcount(Q.project_set(C)) for C in K.cliques), default=0)
    cideg = max((len(row) for row in K.incidence), default=0)
    cdeg = max(
        (sum(1 for j, D in enumerate(K.cliques) if j != i and C & D) for i, C in enumerate(K.cliques)),
        default=0,
    )
    delta_tilde = Q.quotient.max_degree()
    local_alpha = max(
        (independence_number(G, G.closed_neighbours(v), table, measure_cap) for v in range(G.n)),
        default=0,
    )
    local_theta = max(
        (clique_cover_number(G, G.closed_neighbours(v), table, measure_cap) for v in range(G.n)),
        default=0,
    )
    alpha = independence_number(G, None, table, measure_cap)
    theta = clique_cover_number(G, None, table, measure_cap)
    profile = ParameterProfile(omega, cid, cideg, cdeg, delta_tilde, local_alpha, local_theta, alpha, theta)
    logger.debug(f"profile {profile.to_dict()} (memo {table.get_stats()})")
    return profile


def diverse_set(G: Graph, X: VertexSet) -> VertexSet:
    """One vertex of N(X) per distinct trace N(y) & X, the smallest of each."""
    G.validate_set(X, 'X')
    traces: Dict[int, int] = {}
    for y in bits(G.neighbourhood(X)):
        traces.setdefault(G.adj[y] & X, y)
    return sum(1 << y for y in traces.values())


def diversity_number(G: Graph, X: VertexSet) -> int:
    """dn(X): the number of distinct traces N(y) & X over y in N(X)."""
    return popcount(diverse_set(G, X))


def parameter_bounds(delta_tilde: int) -> Dict[str, int]:
    """
    Explicit upper bounds implied by a bound on the quotient's maximum degree.

    Used to check that bounding delta_tilde bounds cdeg, max(cideg, cid),
    max(local_alpha, cid) and max(local_theta, cid).
    """
    cideg = 3 ** -(-delta_tilde // 3)
    cid = max(delta_tilde, 1)
    return {
        'cid': cid,
        'cideg': cideg,
        'cdeg': cid * max(cideg - 1, 0),
        'local_alpha': cideg,
        'local_theta': cideg,
    }


def verify_inequalities(G: Graph, profile: Optional[ParameterProfile] = None,
                        seed: int = 0, trials: int = 10) -> CheckReport:
    """
    Evaluate every inequality between the clique-sparsity parameters.

    Per-clique clauses relate |K~| to the diversity number and local cutrank of
    each maximal clique; logarithmic statements are compared by
    exponentiating the other side in integer arithmetic. The cutrank of a
    union of classes is also compared with the cutrank of the classes in the
    quotient on random class sets.
    """
    p = profile if profile is not None else parameter_profile(G)
    report = CheckReport(check='inequalities', data={'profile': p.to_dict()})
    Q = twin_partition(G)
    edgeless_quotient = Q.quotient.edge_count == 0
    witness: Dict[str, Any] = {'profile': p.to_dict()}

    if edgeless_quotient:
        report.record('cid-le-delta', p.cid <= 1 and p.delta_tilde == 0, witness)
    else:
        report.record('cid-le-delta', p.cid <= p.delta_tilde, witness)
    report.record('cideg-le-3pow-delta', p.cideg <= 3 ** -(-p.delta_tilde // 3), witness)
    report.record('delta-le-cideg-times-cid', p.delta_tilde <= p.cideg * max(p.cid - 1, 0), witness)
    report.record('localalpha-le-localtheta', p.local_alpha <= p.local_theta, witness)
    report.record('localtheta-le-cideg', p.local_theta <= p.cideg, witness)
    report.record('delta-le-localalpha-pow-cid', p.delta_tilde <= p.local_alpha ** p.cid, witness)
    report.record('cdeg-le-cid-times-cideg', p.cdeg <= p.cid * max(p.cideg - 1, 0), witness)
    report.record('cid-le-2pow-cdeg', p.cid <= 2 ** p.cdeg, witness)
    report.record('cideg-le-cdeg-plus-one', G.n == 0 or p.cideg <= p.cdeg + 1, witness)
    report.record('alpha-le-theta', p.alpha <= p.theta, witness)

    bounds = parameter_bounds(p.delta_tilde)
    report.record(
        'bounded-by-delta',
        p.cid <= bounds['cid'] and p.cideg <= bounds['cideg'] and p.cdeg <= bounds['cdeg']
        and p.local_alpha <= bounds['local_alpha'] and p.local_theta <= bounds['local_theta'],
        {'profile': p.to_dict(), 'bounds': bounds},
    )

    for K in maximal_cliques(G).cliques:
        size_q = popcount(Q.project_set(K))
        dn = diversity_number(G, K)
        rho = local_cutrank(G, K, G.neighbourhood(K))
        data = {'clique': to_list(K), 'classes': size_q, 'dn': dn, 'local_cutrank': rho}
        report.record('diversity-lower', dn + 2 <= 2 ** size_q, data)
        report.record('diversity-upper', size_q <= 2 ** dn, data)
        report.record('classes-le-2pow-2pow-cutrank', size_q <= 2 ** (2 ** rho), data)

    report.merge(_check_cutrank_quotient(G, Q, seed, trials))
    if not report.passed:
        logger.warning(f"inequality violations: {report.failed_clauses()}")
    return report


def _check_cutrank_quotient(G: Graph, Q: QuotientMap, seed: int, trials: int) -> CheckReport:
    rng = random.Random(seed)
    report = CheckReport(check='cutrank-quotient')
    for _ in range(trials):
        Xq = rng.getrandbits(Q.size) if Q.size else 0
        lhs = cutrank(G, Q.expand_set(Xq))
        rhs = cutrank(Q.quotient, Xq)
        report.record('cutrank-of-union-equals-quotient-cutrank', lhs == rhs,
                      {'classes': to_list(Xq), 'graph': lhs, 'quotient': rhs})
    return report
