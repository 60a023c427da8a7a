"""
Deterministic constructors for the parametric graph families.

Labelling conventions:
- pair families: ids 0..n-1 are x_1..x_n, ids n..2n-1 are y_1..y_n;
- Star: centre 0, leaves 1..n;
- Grid: vertex (r, c) has id r*n + c;
- MoonMoserUniversal: part p holds ids 3p..3p+2, the universal vertex is 3n;
- Q families: x_j^i has id (i-1)n + (j-1), then the apexes y^i, then (AKK
  only) z^1..z^{k-1}. The MKI variant only has apexes on odd blocks, so its
  apex y^{2i-1} is the i-th apex id.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Dict, List, Optional, Tuple

from ..core.exceptions import DomainError
from ..core.logger import get_logger
from .graph import Graph

logger = get_logger(__name__)


class Family(str, Enum):
    STAR = 'Star'
    MII = 'MII'
    MKI = 'MKI'
    MKK = 'MKK'
    AII = 'AII'
    AKI = 'AKI'
    AKK = 'AKK'
    HII = 'HII'
    HKI = 'HKI'
    HKK = 'HKK'
    GRID = 'Grid'
    MOON_MOSER_UNIVERSAL = 'MoonMoserUniversal'
    KN = 'Kn'
    KNN = 'Knn'
    PATH = 'Path'
    CYCLE = 'Cycle'
    Q = 'Q'

    @classmethod
    def parse(cls, name: str) -> 'Family':
        """Look a family up by name, case-insensitively."""
        for member in cls:
            if member.value.lower() == name.lower():
                return member
        raise DomainError(f"unknown family {name!r}; expected one of {[m.value for m in cls]}")


PAIR_FAMILIES = (
    Family.MII, Family.MKI, Family.MKK,
    Family.AII, Family.AKI, Family.AKK,
    Family.HII, Family.HKI, Family.HKK,
)

Q_INNER_FAMILIES = (Family.MII, Family.MKI, Family.MKK, Family.HII, Family.HKK, Family.AKK)

# cross-edge rule between x_i and y_j (1-based)
CROSS_RULES: Dict[str, Callable[[int, int], bool]] = {
    'M': lambda i, j: i == j,
    'A': lambda i, j: i != j,
    'H': lambda i, j: i <= j,
}


@dataclass(frozen=True)
class FamilySpec:
    """Which graph to build: a family, its order and, for Q, the inner family and length."""
    family: Family
    n: int
    inner: Optional[Family] = None
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise DomainError(f"order must be positive, got {self.n}")
        if self.family == Family.Q:
            if self.inner not in Q_INNER_FAMILIES:
                raise DomainError(
                    f"Q needs an inner family from {[f.value for f in Q_INNER_FAMILIES]}, got {self.inner}"
                )
            if self.k is None or self.k < 2:
                raise DomainError(f"Q needs length k >= 2, got {self.k}")
        elif self.inner is not None or self.k is not None:
            raise DomainError(f"{self.family.value} takes no inner family or length")
        if self.family == Family.CYCLE and self.n < 3:
            raise DomainError("cycles need at least 3 vertices")

    def describe(self) -> str:
        if self.family == Family.Q:
            return f"Q_{self.k}({self.inner.value}_{self.n})"
        return f"{self.family.value}_{self.n}"


def generate(spec: FamilySpec) -> Graph:
    """
    Build the graph described by spec.

    Raises:
        DomainError: for an invalid spec
    """
    family = spec.family
    if family in PAIR_FAMILIES:
        graph = _pair_graph(family, spec.n)
    elif family == Family.Q:
        graph = _q_graph(spec.inner, spec.n, spec.k)
    else:
        builder = _SIMPLE_BUILDERS[family]
        graph = builder(spec.n)
    logger.debug(f"generated {spec.describe()}: {graph}")
    return graph


def family_graph(family: Family, n: int) -> Graph:
    """Shorthand for generate(FamilySpec(family, n))."""
    return generate(FamilySpec(family, n))


def q_graph(inner: Family, n: int, k: int) -> Graph:
    """Shorthand for generate(FamilySpec(Family.Q, n, inner, k))."""
    return generate(FamilySpec(Family.Q, n, inner, k))


def _pair_graph(family: Family, n: int) -> Graph:
    rule = CROSS_RULES[family.value[0]]
    x_clique = family.value[1] == 'K'
    y_clique = family.value[2] == 'K'
    edges: List[Tuple[int, int]] = []
    for i in range(n):
        for j in range(n):
            if rule(i + 1, j + 1):
                edges.append((i, n + j))
            if j > i:
                if x_clique:
                    edges.append((i, j))
                if y_clique:
                    edges.append((n + i, n + j))
    labels = [f"x{i}" for i in range(1, n + 1)] + [f"y{i}" for i in range(1, n + 1)]
    return Graph.from_edges(2 * n, edges, labels)


def _star(n: int) -> Graph:
    labels = ['c'] + [f"l{i}" for i in range(1, n + 1)]
    return Graph.from_edges(n + 1, [(0, i) for i in range(1, n + 1)], labels)


def _grid(n: int) -> Graph:
    edges = []
    for r in range(n):
        for c in range(n):
            if c + 1 < n:
                edges.append((r * n + c, r * n + c + 1))
            if r + 1 < n:
                edges.append((r * n + c, (r + 1) * n + c))
    labels = [f"r{r}c{c}" for r in range(n) for c in range(n)]
    return Graph.from_edges(n * n, edges, labels)


def _moon_moser_universal(n: int) -> Graph:
    total = 3 * n
    edges = [(u, v) for u in range(total) for v in range(u + 1, total) if u // 3 != v // 3]
    edges += [(u, total) for u in range(total)]
    labels = [f"p{u // 3}.{u % 3}" for u in range(total)] + ['u']
    return Graph.from_edges(total + 1, edges, labels)


def _complete(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def _complete_bipartite(n: int) -> Graph:
    return Graph.from_edges(2 * n, [(u, n + v) for u in range(n) for v in range(n)])


def _path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def _cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


_SIMPLE_BUILDERS: Dict[Family, Callable[[int], Graph]] = {
    Family.STAR: _star,
    Family.GRID: _grid,
    Family.MOON_MOSER_UNIVERSAL: _moon_moser_universal,
    Family.KN: _complete,
    Family.KNN: _complete_bipartite,
    Family.PATH: _path,
    Family.CYCLE: _cycle,
}


# ---------------------------------------------------------------------------
# Q_k layout
# ---------------------------------------------------------------------------

def q_block_vertex(n: int, i: int, j: int) -> int:
    """Id of x_j^i (both 1-based)."""
    return (i - 1) * n + (j - 1)


def q_apex_blocks(inner: Family, k: int) -> List[int]:
    """Blocks carrying an apex y^i, in id order."""
    if inner == Family.MKI:
        return list(range(1, k + 1, 2))
    return list(range(1, k + 1))


def q_apex(inner: Family, n: int, k: int, i: int) -> int:
    """
    Id of the apex y^i.

    Raises:
        DomainError: when block i carries no apex
    """
    blocks = q_apex_blocks(inner, k)
    if i not in blocks:
        raise DomainError(f"block {i} of Q_{k}({inner.value}_{n}) has no apex")
    return k * n + blocks.index(i)


def q_z(n: int, k: int, i: int) -> int:
    """Id of z^i in Q_k(AKK_n), 1 <= i <= k-1."""
    if not 1 <= i <= k - 1:
        raise DomainError(f"z^{i} does not exist for k = {k}")
    return k * n + k + (i - 1)


def _q_graph(inner: Family, n: int, k: int) -> Graph:
    rule = CROSS_RULES[inner.value[0]]
    apex_blocks = q_apex_blocks(inner, k)
    total = k * n + len(apex_blocks) + (k - 1 if inner == Family.AKK else 0)
    edges: List[Tuple[int, int]] = []

    for i in range(1, k):
        for a in range(1, n + 1):
            for b in range(1, n + 1):
                if rule(a, b):
                    edges.append((q_block_vertex(n, i, a), q_block_vertex(n, i + 1, b)))

    block_is_clique = inner.value[1:] == 'KK' or inner == Family.MKI
    for i in apex_blocks:
        y = q_apex(inner, n, k, i)
        block = [q_block_vertex(n, i, j) for j in range(1, n + 1)]
        edges.extend((x, y) for x in block)
        if block_is_clique:
            edges.extend((u, v) for idx, u in enumerate(block) for v in block[idx + 1:])

    if inner == Family.AKK:
        for i in range(1, k):
            z = q_z(n, k, i)
            for block in (i, i + 1):
                edges.extend((q_block_vertex(n, block, j), z) for j in range(1, n + 1))

    labels = [f"x{j}^{i}" for i in range(1, k + 1) for j in range(1, n + 1)]
    labels += [f"y^{i}" for i in apex_blocks]
    if inner == Family.AKK:
        labels += [f"z^{i}" for i in range(1, k)]
    return Graph.from_edges(total, edges, labels)
