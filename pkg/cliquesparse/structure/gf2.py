"""
Matrices over GF(2) stored as integer bit rows, and graph cutranks.

Row r of a matrix is an int whose bit c is entry (r, c).
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from ..core.exceptions import DomainError
from .graph import Graph, VertexSet, bits, to_list


def gf2_rank(rows: Sequence[int]) -> int:
    """Rank over GF(2) by elimination on an XOR basis keyed by leading bit."""
    basis: dict = {}
    for row in rows:
        while row:
            lead = row.bit_length() - 1
            pivot = basis.get(lead)
            if pivot is None:
                basis[lead] = row
                break
            row ^= pivot
    return len(basis)


@dataclass(frozen=True)
class F2Matrix:
    """Dense GF(2) matrix with bit rows."""
    rows: int
    cols: int
    bits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.bits) != self.rows:
            raise DomainError(f"matrix has {len(self.bits)} bit rows for {self.rows} rows")
        if any(row >> self.cols for row in self.bits):
            raise DomainError("matrix row wider than its column count")

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> 'F2Matrix':
        """Build from a list of 0/1 rows."""
        cols = len(entries[0]) if entries else 0
        rows = []
        for entry in entries:
            if len(entry) != cols:
                raise DomainError("ragged matrix rows")
            rows.append(sum((value & 1) << c for c, value in enumerate(entry)))
        return cls(len(rows), cols, tuple(rows))

    def rank(self) -> int:
        return gf2_rank(self.bits)

    def distinct_rows(self) -> int:
        return len(set(self.bits))

    def transpose(self) -> 'F2Matrix':
        cols = [0] * self.cols
        for r, row in enumerate(self.bits):
            for c in bits(row):
                cols[c] |= 1 << r
        return F2Matrix(self.cols, self.rows, tuple(cols))

    def to_lists(self) -> List[List[int]]:
        return [[row >> c & 1 for c in range(self.cols)] for row in self.bits]


def biadjacency(G: Graph, X: VertexSet, Y: VertexSet) -> F2Matrix:
    """Submatrix of Adj(G) with rows X and columns Y, both in increasing id order."""
    cols = to_list(Y)
    position = {v: i for i, v in enumerate(cols)}
    rows = []
    for x in bits(X):
        row = 0
        for y in bits(G.adj[x] & Y):
            row |= 1 << position[y]
        rows.append(row)
    return F2Matrix(len(rows), len(cols), tuple(rows))


def local_cutrank(G: Graph, X: VertexSet, Y: VertexSet) -> int:
    """
    Rank of the X-by-Y submatrix of the adjacency matrix.

    Raises:
        DomainError: when X and Y overlap
    """
    G.validate_set(X, 'X')
    G.validate_set(Y, 'Y')
    if X & Y:
        raise DomainError("local cutrank needs disjoint sets")
    # rank is independent of column order
    return gf2_rank([G.adj[x] & Y for x in bits(X)])


def cutrank(G: Graph, X: VertexSet) -> int:
    """Cutrank of X: the local cutrank of X against its complement."""
    G.validate_set(X, 'X')
    return local_cutrank(G, X, G.vertex_mask & ~X)
