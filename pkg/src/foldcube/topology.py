"""Hypercube and folded-hypercube construction.

Vertices are plain ints in ``[0, 2**n)``. Bit position ``i`` (1-based,
counted from the left of the rendered string) is the integer bit
``n - i``, so ``format_vertex(0b0100, 4) == "0100"`` has position 2 set.
Edges are ``(u, v)`` tuples with ``u < v``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Iterator

from foldcube import config
from foldcube.errors import DimensionError, EdgeNotPresent, NotAnFqEdge

if TYPE_CHECKING:
    from foldcube.matching import Matching

Edge = tuple[int, int]


class GraphKind(enum.Enum):
    HYPERCUBE = "hypercube"
    FOLDED_HYPERCUBE = "folded"
    DERIVED = "derived"


@dataclass(frozen=True)
class Dimensional:
    position: int

    def __str__(self):
        return f"E^{self.position}"


@dataclass(frozen=True)
class Complementary:
    def __str__(self):
        return "E_c"


# ---------------------------------------------------------------------------
# labels and edges
# ---------------------------------------------------------------------------


def position_mask(n: int, i: int) -> int:
    """Integer mask of bit position ``i`` (1 is the leftmost position)."""
    if not 1 <= i <= n:
        raise DimensionError(f"position {i} out of range 1..{n}")
    return 1 << (n - i)


def full_mask(n: int) -> int:
    return (1 << n) - 1


def format_vertex(v: int, n: int) -> str:
    if not 0 <= v < (1 << n):
        raise DimensionError(f"vertex {v} out of range for n={n}")
    return format(v, f"0{n}b") if n else ""


def parse_vertex(s: str, n: int | None = None) -> int:
    s = s.strip()
    if not s or any(c not in "01" for c in s):
        raise ValueError(f"not a binary label: {s!r}")
    if n is not None and len(s) != n:
        raise ValueError(f"label {s!r} has {len(s)} characters, expected {n}")
    return int(s, 2)


def make_edge(u: int, v: int) -> Edge:
    if u == v:
        raise ValueError(f"self-loop at {u}")
    return (u, v) if u < v else (v, u)


def format_edge(e: Edge, n: int) -> str:
    return f"{format_vertex(e[0], n)} {format_vertex(e[1], n)}"


def check_dimension(n: int, minimum: int = 1) -> None:
    limit = config.max_dimension()
    if not minimum <= n <= limit:
        raise DimensionError(f"dimension n={n} outside supported range {minimum}..{limit}")


# ---------------------------------------------------------------------------
# graphs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertices ``0 .. 2**n - 1``.

    ``adjacency[v]`` is the ascending tuple of neighbors of ``v``. Equality
    compares ``n`` and the adjacency only, so a derived graph equal to
    ``Q_n`` compares equal to it.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    kind: GraphKind = field(default=GraphKind.DERIVED, compare=False)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge], kind: GraphKind = GraphKind.DERIVED) -> Graph:
        size = 1 << n
        nbrs: list[set[int]] = [set() for _ in range(size)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < size and 0 <= v < size):
                raise DimensionError(f"edge ({u}, {v}) has an endpoint outside 0..{size - 1}")
            nbrs[u].add(v)
            nbrs[v].add(u)
        return cls(n, tuple(tuple(sorted(s)) for s in nbrs), kind)

    @property
    def vertex_count(self) -> int:
        return len(self.adjacency)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def vertices(self) -> range:
        return range(len(self.adjacency))

    def neighbors(self, v: int) -> tuple[int, ...]:
        self._check_vertex(v)
        return self.adjacency[v]

    def neighbor_mask(self, v: int) -> int:
        mask = 0
        for w in self.adjacency[v]:
            mask |= 1 << w
        return mask

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        if not (0 <= u < len(self.adjacency) and 0 <= v < len(self.adjacency)):
            return False
        return v in self.adjacency[u]

    def edges(self) -> Iterator[Edge]:
        """Edges in canonical ascending order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def without_edges(self, edges: Iterable[Edge]) -> Graph:
        drop: dict[int, set[int]] = {}
        for u, v in edges:
            if not self.has_edge(u, v):
                raise EdgeNotPresent(make_edge(u, v))
            drop.setdefault(u, set()).add(v)
            drop.setdefault(v, set()).add(u)
        adjacency = tuple(
            tuple(w for w in nbrs if w not in drop[u]) if u in drop else nbrs
            for u, nbrs in enumerate(self.adjacency)
        )
        return Graph(self.n, adjacency, GraphKind.DERIVED)

    def relabel(self, perm) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def connected_components(self) -> list[list[int]]:
        seen = [False] * self.vertex_count
        components = []
        for root in self.vertices():
            if seen[root]:
                continue
            seen[root] = True
            comp = [root]
            queue = deque([root])
            while queue:
                v = queue.popleft()
                for w in self.adjacency[v]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            components.append(sorted(comp))
        return components

    def induced_subgraph(self, vertices: list[int]) -> Graph:
        """Induced subgraph, relabelled ``vertices[k] -> k``.

        ``len(vertices)`` must be a power of two.
        """
        size = len(vertices)
        if size == 0 or size & (size - 1):
            raise ValueError("induced subgraph needs a power-of-two vertex count")
        index = {v: k for k, v in enumerate(vertices)}
        edges = [
            (index[u], index[w])
            for u in vertices
            for w in self.adjacency[u]
            if w in index and u < w
        ]
        return Graph.from_edges(size.bit_length() - 1, edges)

    def _check_vertex(self, v: int) -> None:
        if not 0 <= v < len(self.adjacency):
            raise DimensionError(f"vertex {v} out of range 0..{len(self.adjacency) - 1}")


def build_hypercube(n: int) -> Graph:
    check_dimension(n, 1)
    bits = [1 << k for k in range(n)]
    adjacency = tuple(tuple(sorted(v ^ b for b in bits)) for v in range(1 << n))
    return Graph(n, adjacency, GraphKind.HYPERCUBE)


def build_folded_hypercube(n: int) -> Graph:
    check_dimension(n, 2)
    full = full_mask(n)
    bits = [1 << k for k in range(n)] + [full]
    adjacency = tuple(tuple(sorted(v ^ b for b in bits)) for v in range(1 << n))
    return Graph(n, adjacency, GraphKind.FOLDED_HYPERCUBE)


def edge_class(n: int, e: Edge) -> Dimensional | Complementary:
    u, v = e
    diff = u ^ v
    if not (0 <= u < (1 << n) and 0 <= v < (1 << n)) or diff == 0:
        raise NotAnFqEdge(f"({u}, {v}) is not an edge of FQ_{n}")
    # n=1: the single edge is both; it is reported as dimensional.
    if diff & (diff - 1) == 0:
        return Dimensional(n - diff.bit_length() + 1)
    if diff == full_mask(n):
        return Complementary()
    raise NotAnFqEdge(
        f"{format_vertex(u, n)} and {format_vertex(v, n)} differ in "
        f"{bin(diff).count('1')} positions; not an edge of FQ_{n}"
    )


def dimension_class(n: int, i: int) -> "Matching":
    from foldcube.matching import Matching

    check_dimension(n, 1)
    mask = position_mask(n, i)
    return Matching(n, ((u, u | mask) for u in range(1 << n) if not u & mask))


def complementary_class(n: int) -> "Matching":
    from foldcube.matching import Matching

    check_dimension(n, 2)
    full = full_mask(n)
    top = 1 << (n - 1)
    return Matching(n, ((u, u ^ full) for u in range(top)))


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Distances from ``source``; unreachable vertices get -1."""
    g._check_vertex(source)
    dist = [-1] * g.vertex_count
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance(g: Graph, u: int, v: int) -> int:
    g._check_vertex(v)
    d = bfs_distances(g, u)[v]
    if d < 0:
        raise ValueError(f"vertices {u} and {v} are in different components")
    return d


def edge_distance(g: Graph, e: Edge, f: Edge) -> int:
    for x, y in (e, f):
        if not g.has_edge(x, y):
            raise EdgeNotPresent(make_edge(x, y))
    best = None
    for a in e:
        dist = bfs_distances(g, a)
        for b in f:
            if dist[b] >= 0 and (best is None or dist[b] < best):
                best = dist[b]
    if best is None:
        raise ValueError("edges lie in different components")
    return best


def common_neighbors(g: Graph, u: int, v: int) -> frozenset[int]:
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise ValueError("common_neighbors needs two distinct vertices")
    return frozenset(g.adjacency[u]).intersection(g.adjacency[v])


def common_neighbor_counts(g: Graph) -> Iterator[tuple[int, int, int]]:
    """Yield ``(u, v, |N(u) & N(v)|)`` for every pair ``u < v``."""
    masks = [g.neighbor_mask(v) for v in g.vertices()]
    size = len(masks)
    for u in range(size):
        mu = masks[u]
        for v in range(u + 1, size):
            yield u, v, (mu & masks[v]).bit_count()
