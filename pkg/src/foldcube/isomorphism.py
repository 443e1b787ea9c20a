"""Hypercube recognition with certificates, the folding bijection, and
non-isomorphism witnesses for FQ_n minus a perfect matching."""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from itertools import combinations

from foldcube import config
from foldcube.errors import DimensionError, NotMixed, ResourceGuardExceeded
from foldcube.matching import Matching, Mixed, classify_matching
from foldcube.topology import (
    Complementary,
    Edge,
    Graph,
    build_folded_hypercube,
    check_dimension,
    common_neighbor_counts,
    edge_class,
    format_edge,
    format_vertex,
    full_mask,
    make_edge,
    position_mask,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Labeling:
    """Vertex map ``u -> mapping[u]`` from a graph into Q_n."""

    n: int
    mapping: tuple[int, ...]

    def __call__(self, u: int) -> int:
        return self.mapping[u]

    def __len__(self):
        return len(self.mapping)

    @classmethod
    def identity(cls, n: int) -> Labeling:
        return cls(n, tuple(range(1 << n)))

    def is_bijective(self) -> bool:
        size = 1 << self.n
        return len(self.mapping) == size and sorted(self.mapping) == list(range(size))


# ---------------------------------------------------------------------------
# witnesses
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CommonNeighborViolation:
    """Two vertices whose common-neighbor count is neither 0 nor 2.

    ``m_edge`` is the removed matching edge that broke the pair, when the
    witness came from a matching.
    """

    u: int
    v: int
    neighbors: frozenset[int]
    m_edge: Edge | None = None
    kind = "common_neighbor_violation"

    def to_dict(self, n: int) -> dict:
        out = {
            "kind": self.kind,
            "vertices": [format_vertex(self.u, n), format_vertex(self.v, n)],
            "common_neighbors": [format_vertex(w, n) for w in sorted(self.neighbors)],
        }
        if self.m_edge is not None:
            out["matching_edge"] = format_edge(self.m_edge, n)
        return out


@dataclass(frozen=True)
class FourCycleWitness:
    """4-cycle of FQ_n (vertices in cyclic order) meeting M only in ``m_edge``."""

    cycle: tuple[int, int, int, int]
    m_edge: Edge
    kind = "four_cycle"

    def diagonal(self) -> tuple[int, int]:
        # Either diagonal works: removing m_edge costs each one a common neighbor.
        return (self.cycle[0], self.cycle[2])

    def cycle_edges(self) -> list[Edge]:
        c = self.cycle
        return [make_edge(c[k], c[(k + 1) % 4]) for k in range(4)]

    def to_dict(self, n: int) -> dict:
        return {
            "kind": self.kind,
            "vertices": [format_vertex(v, n) for v in self.cycle],
            "matching_edge": format_edge(self.m_edge, n),
        }


@dataclass(frozen=True)
class StructuralMismatch:
    reason: str
    kind = "structural_mismatch"

    def to_dict(self, n: int) -> dict:
        return {"kind": self.kind, "vertices": [], "reason": self.reason}


Witness = CommonNeighborViolation | FourCycleWitness | StructuralMismatch


@dataclass(frozen=True)
class IsoResult:
    """Outcome of a hypercube test: a certificate or a witness, never both."""

    certificate: Labeling | None = None
    witness: Witness | None = None

    @property
    def is_isomorphic(self) -> bool:
        return self.certificate is not None

    def __bool__(self):
        return self.is_isomorphic


# ---------------------------------------------------------------------------
# matching removal and the folding bijection
# ---------------------------------------------------------------------------


def remove_matching(g: Graph, m) -> Graph:
    """``g`` with the edges of ``m`` deleted; raises EdgeNotPresent."""
    return g.without_edges(m)


def phi_map(n: int, i: int) -> Labeling:
    """Bijection certifying ``FQ_n - E^i`` is a hypercube.

    Vertices with position ``i`` clear are fixed; the others have every bit
    except position ``i`` complemented.
    """
    check_dimension(n, 2)
    pos = position_mask(n, i)
    flip = full_mask(n) ^ pos
    return Labeling(n, tuple(u ^ flip if u & pos else u for u in range(1 << n)))


def isomorphism_problem(g: Graph, target_n: int, lab: Labeling) -> str | None:
    """First reason ``lab`` fails to certify ``g`` is Q_target_n, or None."""
    size = 1 << target_n
    if g.vertex_count != size:
        return f"graph has {g.vertex_count} vertices, Q_{target_n} has {size}"
    if lab.n != target_n or not lab.is_bijective():
        return "labeling is not a bijection onto V(Q_n)"
    expected = target_n << (target_n - 1)
    if g.edge_count != expected:
        return f"graph has {g.edge_count} edges, Q_{target_n} has {expected}"
    images = lab.mapping
    for u, v in g.edges():
        diff = images[u] ^ images[v]
        if diff & (diff - 1):
            return (
                f"edge {format_edge((u, v), target_n)} maps to "
                f"{format_vertex(images[u], target_n)} {format_vertex(images[v], target_n)}, "
                "not adjacent in Q_n"
            )
    return None


def verify_isomorphism(g: Graph, target_n: int, lab: Labeling) -> bool:
    return isomorphism_problem(g, target_n, lab) is None


# ---------------------------------------------------------------------------
# recognition
# ---------------------------------------------------------------------------


def _structural_problem(g: Graph, n: int) -> str | None:
    for v in g.vertices():
        if g.degree(v) != n:
            return f"degree of {format_vertex(v, n)} is {g.degree(v)}, expected {n}"
    expected = n << (n - 1) if n else 0
    if g.edge_count != expected:
        return f"edge count {g.edge_count}, expected {expected}"
    if len(g.connected_components()) != 1:
        return "graph is disconnected"
    if not _is_bipartite(g):
        return "graph is not bipartite"
    return None


def _is_bipartite(g: Graph) -> bool:
    side = [-1] * g.vertex_count
    for root in g.vertices():
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if side[w] < 0:
                    side[w] = side[v] ^ 1
                    queue.append(w)
                elif side[w] == side[v]:
                    return False
    return True


def _propagate_labels(g: Graph, n: int) -> Labeling | str:
    """BFS label propagation from vertex 0; returns a labeling or a reason."""
    size = g.vertex_count
    level = [-1] * size
    level[0] = 0
    order = [0]
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.adjacency[v]:
            if level[w] < 0:
                level[w] = level[v] + 1
                order.append(w)
                queue.append(w)
    label = [-1] * size
    used = set()
    label[0] = 0
    used.add(0)
    for k, w in enumerate(g.adjacency[0]):
        label[w] = 1 << (n - 1 - k)
        used.add(label[w])
    for v in order[1 + len(g.adjacency[0]):]:
        d = level[v]
        back = sorted(label[w] for w in g.adjacency[v] if level[w] == d - 1)
        if len(back) < 2:
            return f"vertex {format_vertex(v, n)} at level {d} has {len(back)} back-neighbors"
        candidate = back[0] | back[1]
        if candidate.bit_count() != d or candidate in used:
            return f"no consistent label for vertex {format_vertex(v, n)}"
        for b in back:
            diff = b ^ candidate
            if diff & (diff - 1):
                return f"back-neighbors of {format_vertex(v, n)} disagree"
        label[v] = candidate
        used.add(candidate)
    return Labeling(n, tuple(label))


def find_common_neighbor_violation(g: Graph) -> CommonNeighborViolation | None:
    """Lexicographically smallest pair with a common-neighbor count outside {0, 2}."""
    for u, v, count in common_neighbor_counts(g):
        if count not in (0, 2):
            shared = frozenset(g.adjacency[u]).intersection(g.adjacency[v])
            return CommonNeighborViolation(u, v, shared)
    return None


def recognize_hypercube(g: Graph, n: int) -> IsoResult:
    """Decide whether ``g`` is isomorphic to Q_n.

    A positive answer always carries a labeling that passed
    ``verify_isomorphism``; the propagation step is only a way to find one.
    """
    if g.vertex_count != 1 << n:
        raise DimensionError(f"graph has {g.vertex_count} vertices, Q_{n} has {1 << n}")
    reason = _structural_problem(g, n)
    if reason is None:
        attempt = _propagate_labels(g, n)
        if isinstance(attempt, Labeling):
            reason = isomorphism_problem(g, n, attempt)
            if reason is None:
                return IsoResult(certificate=attempt)
        else:
            reason = attempt
    witness = find_common_neighbor_violation(g)
    return IsoResult(witness=witness or StructuralMismatch(reason))


# ---------------------------------------------------------------------------
# brute-force oracle
# ---------------------------------------------------------------------------


def brute_force_isomorphic(g: Graph, h: Graph) -> bool:
    """Exact isomorphism test by backtracking; small graphs only."""
    limit = config.BRUTE_FORCE_MAX_VERTICES
    for graph in (g, h):
        if graph.vertex_count > limit:
            raise ResourceGuardExceeded("brute-force vertex limit", limit, graph.vertex_count)
    size = g.vertex_count
    if size != h.vertex_count or g.edge_count != h.edge_count:
        return False
    gdeg = [g.degree(v) for v in g.vertices()]
    hdeg = [h.degree(v) for v in h.vertices()]
    if sorted(gdeg) != sorted(hdeg):
        return False
    gmask = [g.neighbor_mask(v) for v in g.vertices()]
    hmask = [h.neighbor_mask(v) for v in h.vertices()]

    # Each vertex after the first of its component has an earlier neighbor.
    order: list[int] = []
    anchor: list[int] = []
    seen = [False] * size
    for root in sorted(range(size), key=lambda v: -gdeg[v]):
        if seen[root]:
            continue
        seen[root] = True
        order.append(root)
        anchor.append(-1)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adjacency[v]:
                if not seen[w]:
                    seen[w] = True
                    order.append(w)
                    anchor.append(v)
                    queue.append(w)

    image = [-1] * size

    def place(k: int, used: int) -> bool:
        if k == size:
            return True
        v = order[k]
        if anchor[k] >= 0:
            pool = hmask[image[anchor[k]]] & ~used
        else:
            pool = ((1 << size) - 1) & ~used
        while pool:
            bit = pool & -pool
            pool ^= bit
            w = bit.bit_length() - 1
            if hdeg[w] != gdeg[v]:
                continue
            ok = True
            for j in range(k):
                u = order[j]
                if (gmask[v] >> u & 1) != (hmask[w] >> image[u] & 1):
                    ok = False
                    break
            if ok:
                image[v] = w
                if place(k + 1, used | bit):
                    return True
                image[v] = -1
        return False

    return place(0, 0)


# ---------------------------------------------------------------------------
# non-isomorphism witnesses
# ---------------------------------------------------------------------------


def _single_common_neighbor(g: Graph, a: int, b: int) -> CommonNeighborViolation | None:
    shared = frozenset(g.adjacency[a]).intersection(g.adjacency[b])
    if len(shared) not in (0, 2):
        return CommonNeighborViolation(a, b, shared)
    return None


def _cycle_witness(fq: Graph, m: Matching, cycle) -> FourCycleWitness | None:
    a, b, c, d = cycle
    if len({a, b, c, d}) != 4:
        return None
    edges = [(a, b), (b, c), (c, d), (d, a)]
    if not all(fq.has_edge(x, y) for x, y in edges):
        return None
    hits = [make_edge(x, y) for x, y in edges if (x, y) in m or (y, x) in m]
    if len(hits) != 1:
        return None
    return FourCycleWitness(tuple(cycle), hits[0])


def _scan_four_cycles(fq: Graph, m: Matching) -> FourCycleWitness | None:
    for a in fq.vertices():
        for b, d in combinations(fq.adjacency[a], 2):
            for c in sorted(set(fq.adjacency[b]).intersection(fq.adjacency[d])):
                if c <= a:
                    continue
                found = _cycle_witness(fq, m, (a, b, c, d))
                if found is not None:
                    return found
    return None


def find_noniso_witness(n: int, m) -> Witness:
    """Small proof that ``FQ_n - m`` is not a hypercube, for n >= 4.

    With a complementary edge in ``m`` the witness is a vertex pair left
    with one common neighbor; otherwise it is a 4-cycle of FQ_n containing
    exactly one edge of ``m``.
    """
    if n < 4:
        raise DimensionError(f"non-isomorphism witnesses need n >= 4, got n={n}")
    if not isinstance(m, Matching):
        m = Matching(n, m)
    cls = classify_matching(n, m)
    if not isinstance(cls, Mixed):
        raise NotMixed(f"{cls} leaves a hypercube; no witness exists")
    fq = build_folded_hypercube(n)
    rest = remove_matching(fq, m)
    full = full_mask(n)

    if cls.complementary_count:
        for u, v in m.edges:
            if u ^ v != full:
                continue
            for x in (u, v):
                for y in fq.adjacency[x]:
                    if y ^ x == full:
                        continue
                    z = m.partner(y)
                    if z is None or (y ^ z) == full:
                        continue
                    found = _single_common_neighbor(rest, x, z)
                    if found is not None:
                        return CommonNeighborViolation(x, z, found.neighbors, make_edge(y, z))

    else:
        dims = {e: edge_class(n, e) for e in m.edges}
        for e in m.edges:
            for x in e:
                u = e[0] if x == e[1] else e[1]
                for w in fq.adjacency[x]:
                    if w == u:
                        continue
                    f_partner = m.partner(w)
                    f = make_edge(w, f_partner)
                    if isinstance(dims[f], Complementary) or dims[f] == dims[e]:
                        continue
                    jmask = w ^ f_partner
                    # The 4-cycle through e parallel to f.
                    found = _cycle_witness(fq, m, (x, u, u ^ jmask, x ^ jmask))
                    if found is None:
                        # x, w, f's other end, and x shifted along f.
                        found = _cycle_witness(fq, m, (x, w, f_partner, x ^ jmask))
                    if found is not None:
                        return found

    logger.warning("structured witness search exhausted for %r; falling back to a 4-cycle scan", m)
    found = _scan_four_cycles(fq, m)
    if found is not None:
        return found
    pair = find_common_neighbor_violation(rest)
    if pair is not None:
        return pair
    return StructuralMismatch("no 4-cycle or common-neighbor witness found")
