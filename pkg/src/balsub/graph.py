"""Immutable undirected simple graphs and the degree/subgraph primitives.

Vertex ids are always ``0..n-1``.  Operations that restrict to a vertex
subset return the new graph together with an id-remapping table so callers
can lift results back to the host graph.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .outcomes import EmptyGraphError, InvalidArgumentError, InvalidVertexError


class Graph:
    """Simple undirected graph, immutable once constructed.

    Self-loops are rejected; duplicate edges collapse silently.  Adjacency
    lists are stored sorted so every traversal in the library is
    deterministic.
    """

    __slots__ = ("n", "_adj", "_edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise InvalidArgumentError("vertex count must be nonnegative")
        self.n = n
        edge_set: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InvalidVertexError(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise InvalidArgumentError(f"self-loop at {u}")
            edge_set.add((u, v) if u < v else (v, u))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edge_set:
            adj[u].append(v)
            adj[v].append(u)
        self._adj: tuple[tuple[int, ...], ...] = tuple(
            tuple(sorted(nbrs)) for nbrs in adj
        )
        self._edges: frozenset[tuple[int, int]] = frozenset(edge_set)

    # -- basic accessors ---------------------------------------------------

    def vertices(self) -> range:
        return range(self.n)

    def neighbors(self, v: int) -> tuple[int, ...]:
        self.check_vertex(v)
        return self._adj[v]

    def degree(self, v: int) -> int:
        self.check_vertex(v)
        return len(self._adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return ((u, v) if u < v else (v, u)) in self._edges

    def edge_count(self) -> int:
        return len(self._edges)

    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self._edges))

    def check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise InvalidVertexError(f"vertex {v} outside 0..{self.n - 1}")

    def check_subset(self, vs: Iterable[int]) -> frozenset[int]:
        out = frozenset(vs)
        for v in out:
            self.check_vertex(v)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self._edges)})"

    # -- traversal helpers -------------------------------------------------

    def components(self) -> list[frozenset[int]]:
        """Connected components, sorted by smallest member id."""
        seen = [False] * self.n
        comps: list[frozenset[int]] = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            queue = deque([s])
            comp = {s}
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.add(w)
                        queue.append(w)
            comps.append(frozenset(comp))
        return comps

    def two_coloring(self) -> tuple[int, ...] | None:
        """Proper 2-coloring with color 0 on each component's least vertex,
        or None when some component contains an odd cycle."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] != -1:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if color[w] == -1:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return tuple(color)

    def bfs_distances(self, sources: Iterable[int], blocked: frozenset[int] = frozenset()) -> dict[int, int]:
        """Distances from the source set, never entering `blocked`."""
        dist: dict[int, int] = {}
        queue: deque[int] = deque()
        for s in sorted(set(sources)):
            self.check_vertex(s)
            if s in blocked:
                continue
            dist[s] = 0
            queue.append(s)
        while queue:
            u = queue.popleft()
            for w in self._adj[u]:
                if w not in dist and w not in blocked:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    # -- subgraphs ----------------------------------------------------------

    def induced(self, keep: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph plus the table mapping new ids to host ids."""
        ids = tuple(sorted(self.check_subset(keep)))
        back = {old: new for new, old in enumerate(ids)}
        edges = [
            (back[u], back[v])
            for u, v in self._edges
            if u in back and v in back
        ]
        return Graph(len(ids), edges), ids

    def delete(self, drop: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on the complement of `drop`, with id table."""
        gone = self.check_subset(drop)
        return self.induced(v for v in range(self.n) if v not in gone)


@dataclass(frozen=True)
class DegreeStats:
    """Exact degree summary; the average is kept rational."""

    average: Fraction
    minimum: int
    maximum: int


def degree_stats(g: Graph) -> DegreeStats:
    """Average (exact), minimum, and maximum degree of a nonempty graph."""
    if g.n == 0:
        raise EmptyGraphError("degree stats need at least one vertex")
    degs = [g.degree(v) for v in g.vertices()]
    return DegreeStats(Fraction(2 * g.edge_count(), g.n), min(degs), max(degs))


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise EmptyGraphError("average degree needs at least one vertex")
    return Fraction(2 * g.edge_count(), g.n)


def external_neighborhood(g: Graph, xs: Iterable[int]) -> frozenset[int]:
    """N(X): vertices outside X with at least one neighbor in X."""
    x = g.check_subset(xs)
    out: set[int] = set()
    for v in x:
        for w in g.neighbors(v):
            if w not in x:
                out.add(w)
    return frozenset(out)


def min_degree_peel(g: Graph, t: int) -> tuple[Graph, tuple[int, ...]]:
    """Maximal induced subgraph with minimum degree >= t (the t-core).

    Possibly empty.  The result is order-independent, so any deletion
    schedule reaches the same core; returns the core with its id table.
    """
    if t < 0:
        raise InvalidArgumentError("degree threshold must be nonnegative")
    alive = [True] * g.n
    deg = [g.degree(v) for v in g.vertices()]
    queue = deque(v for v in g.vertices() if deg[v] < t)
    while queue:
        v = queue.popleft()
        if not alive[v]:
            continue
        alive[v] = False
        for w in g.neighbors(v):
            if alive[w]:
                deg[w] -= 1
                if deg[w] < t:
                    queue.append(w)
    return g.induced(v for v in g.vertices() if alive[v])


def bipartite_half(g: Graph) -> tuple[Graph, tuple[frozenset[int], frozenset[int]]]:
    """Spanning bipartite subgraph keeping at least half the edges.

    Seeds the partition by vertex-id parity, then runs a deterministic
    local search: any vertex with strictly more same-side than cross
    neighbors flips.  At the fixed point every vertex has at least half its
    edges crossing, so the crossing subgraph H has d(H) >= d(G)/2.
    """
    side = [v % 2 for v in g.vertices()]
    changed = True
    while changed:
        changed = False
        for v in g.vertices():
            same = sum(1 for w in g.neighbors(v) if side[w] == side[v])
            cross = g.degree(v) - same
            if same > cross:
                side[v] = 1 - side[v]
                changed = True
    crossing = [(u, v) for u, v in g.edges() if side[u] != side[v]]
    part0 = frozenset(v for v in g.vertices() if side[v] == 0)
    part1 = frozenset(v for v in g.vertices() if side[v] == 1)
    return Graph(g.n, crossing), (part0, part1)
