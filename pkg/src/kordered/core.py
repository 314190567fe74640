"""Immutable bitset-backed simple graphs and degree/density primitives.

Vertices are dense integer indices 0..n-1.  Each adjacency row is a Python
int used as a bitset over the vertex indices, which keeps neighbourhood
intersections, degree counts and subset restrictions cheap.  Graphs are
immutable after construction; "removal" operations return new graphs.
Vertex sets are passed around either as iterables of indices or directly
as int bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


def mask_of(vertices: Iterable[int]) -> int:
    """Pack an iterable of vertex indices into a bitmask."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Yield the set bit positions of a mask in ascending order."""
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def bit_list(mask: int) -> list[int]:
    return list(bits(mask))


class GraphError(ValueError):
    """Raised for malformed graph construction or invalid vertex sets."""


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph: ``n`` vertices, one bitset row per vertex.

    Invariants (checked on construction): adjacency is symmetric, there
    are no loops, and every row fits in ``n`` bits.
    """

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError("vertex count must be non-negative")
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adj)}")
        full = (1 << self.n) - 1
        for u, row in enumerate(self.adj):
            if row & ~full:
                raise GraphError(f"row {u} has bits outside 0..{self.n - 1}")
            if row & (1 << u):
                raise GraphError(f"loop at vertex {u}")
        for u, row in enumerate(self.adj):
            r = row
            while r:
                b = r & -r
                r ^= b
                v = b.bit_length() - 1
                if not self.adj[v] & (1 << u):
                    raise GraphError(f"asymmetric edge {u}-{v}")

    # -- constructors ------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, (0,) * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << u) for u in range(n)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise GraphError("a cycle needs at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def complete_bipartite(cls, p: int, q: int) -> "Graph":
        """K_{p,q} with side vertices 0..p-1 and p..p+q-1."""
        return cls.from_edges(p + q, [(a, p + b) for a in range(p) for b in range(q)])

    # -- queries -----------------------------------------------------

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] & (1 << v))

    def neighbors(self, v: int) -> Iterator[int]:
        return bits(self.adj[v])

    def edges(self) -> Iterator[tuple[int, int]]:
        for u in range(self.n):
            row = self.adj[u] >> (u + 1)
            base = u + 1
            while row:
                b = row & -row
                yield (u, base + b.bit_length() - 1)
                row ^= b

    def deg_into(self, v: int, members) -> int:
        """Number of neighbours of v inside the given vertex set."""
        return (self.adj[v] & self._mask(members)).bit_count()

    def without_edges(self, pairs: Iterable[tuple[int, int]]) -> "Graph":
        """New graph with the listed edges removed (absent edges ignored)."""
        rows = list(self.adj)
        for u, v in pairs:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, tuple(rows))

    def _mask(self, members) -> int:
        if isinstance(members, int):
            m = members
        else:
            m = mask_of(members)
        if m & ~self.vertex_mask:
            raise GraphError("vertex set has members outside 0..n-1")
        return m


@dataclass(frozen=True)
class DegreeProfile:
    degrees: tuple[int, ...]
    min_degree: int
    max_degree: int


def degree_profile(g: Graph) -> DegreeProfile:
    """Per-vertex degrees together with the minimum and maximum degree."""
    degs = tuple(row.bit_count() for row in g.adj)
    if not degs:
        return DegreeProfile((), 0, 0)
    return DegreeProfile(degs, min(degs), max(degs))


def edges_between(g: Graph, a, b) -> int:
    """Count edges with one endpoint in a and the other in b (disjoint sets)."""
    am, bm = g._mask(a), g._mask(b)
    if am & bm:
        raise GraphError("edges_between requires disjoint vertex sets")
    total = 0
    m = am
    while m:
        bit = m & -m
        m ^= bit
        total += (g.adj[bit.bit_length() - 1] & bm).bit_count()
    return total


def density(g: Graph, a, b) -> Fraction:
    """Exact pair density e(a,b) / (|a|*|b|) between disjoint non-empty sets."""
    am, bm = g._mask(a), g._mask(b)
    ca, cb = am.bit_count(), bm.bit_count()
    if ca == 0 or cb == 0:
        raise GraphError("density requires non-empty sets")
    return Fraction(edges_between(g, am, bm), ca * cb)


def induced_subgraph(g: Graph, members) -> tuple[Graph, tuple[int, ...]]:
    """Restriction of g to a non-empty vertex set.

    Returns the induced graph plus the index map: position i of the map
    holds the original label of new vertex i.
    """
    m = g._mask(members)
    if m == 0:
        raise GraphError("induced_subgraph requires a non-empty set")
    old = bit_list(m)
    new_index = {v: i for i, v in enumerate(old)}
    rows = []
    for v in old:
        row = 0
        r = g.adj[v] & m
        while r:
            b = r & -r
            r ^= b
            row |= 1 << new_index[b.bit_length() - 1]
        rows.append(row)
    return Graph(len(old), tuple(rows)), tuple(old)
