"""Perfect matchings of Q_n and FQ_n: validation, enumeration, counting,
uniform sampling and classification against the edge classes."""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from foldcube import config
from foldcube.errors import (
    NoPerfectMatching,
    NotAPerfectMatching,
    NotAnFqEdge,
    ResourceGuardExceeded,
)
from foldcube.topology import (
    Complementary,
    Edge,
    Graph,
    build_folded_hypercube,
    edge_class,
    format_edge,
    make_edge,
)


class Matching:
    """Set of pairwise vertex-disjoint edges in an ``n``-dimensional cube.

    Edges are stored canonically (``u < v``) and sorted. Construction fails
    with ``ValueError`` if two edges share an endpoint.
    """

    __slots__ = ("n", "edges", "_partner")

    def __init__(self, n: int, edges: Iterable[Edge]):
        canonical = sorted({make_edge(u, v) for u, v in edges})
        partner: dict[int, int] = {}
        for u, v in canonical:
            for a, b in ((u, v), (v, u)):
                if a in partner:
                    raise ValueError(f"vertex {a} is covered twice")
                partner[a] = b
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(canonical)
        self._partner = partner

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __contains__(self, edge):
        u, v = edge
        return self._partner.get(u) == v

    def __eq__(self, other):
        if not isinstance(other, Matching):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def __repr__(self):
        shown = ", ".join(format_edge(e, self.n) for e in self.edges[:4])
        more = ", ..." if len(self.edges) > 4 else ""
        return f"Matching(n={self.n}, [{shown}{more}])"

    @property
    def is_perfect(self) -> bool:
        return len(self.edges) == 1 << (self.n - 1)

    def partner(self, v: int) -> int | None:
        return self._partner.get(v)


@dataclass(frozen=True)
class AllComplementary:
    def __str__(self):
        return "E_c"


@dataclass(frozen=True)
class SingleDimension:
    position: int

    def __str__(self):
        return f"E^{self.position}"


@dataclass(frozen=True)
class Mixed:
    complementary_count: int
    dimension_histogram: dict

    def __hash__(self):
        return hash((self.complementary_count, tuple(sorted(self.dimension_histogram.items()))))

    def __str__(self):
        hist = ",".join(f"{k}:{v}" for k, v in sorted(self.dimension_histogram.items()))
        return f"mixed(c={self.complementary_count};{hist})"


MatchingClass = AllComplementary | SingleDimension | Mixed


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------


def perfect_matching_problem(g: Graph, m) -> str | None:
    """Return why ``m`` is not a perfect matching of ``g``, or None."""
    seen: dict[int, Edge] = {}
    count = 0
    for u, v in m:
        e = make_edge(u, v) if u != v else (u, v)
        if not g.has_edge(u, v):
            return f"edge {e} is not an edge of the graph"
        for x in e:
            if x in seen:
                return f"vertex {x} is shared by edges {seen[x]} and {e}"
            seen[x] = e
        count += 1
    if 2 * count != g.vertex_count:
        return f"matching has {count} edges, a perfect matching needs {g.vertex_count // 2}"
    return None


def is_perfect_matching(g: Graph, m) -> bool:
    """True iff ``m`` (a Matching or any iterable of edges) is a perfect
    matching of ``g``."""
    return perfect_matching_problem(g, m) is None


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _guard(g: Graph, limit: int, name: str) -> None:
    if g.vertex_count > limit:
        raise ResourceGuardExceeded(name, limit, g.vertex_count)


def enumerate_perfect_matchings(g: Graph) -> Iterator[Matching]:
    """Yield every perfect matching of ``g`` exactly once.

    Branches on the lowest unsaturated vertex and tries its neighbors in
    ascending order, so the output order is fixed.
    """
    _guard(g, config.ENUMERATE_MAX_VERTICES, "enumeration vertex limit")
    adjacency = g.adjacency
    chosen: list[Edge] = []

    def extend(unmatched: int) -> Iterator[Matching]:
        if unmatched == 0:
            yield Matching(g.n, chosen)
            return
        low = unmatched & -unmatched
        v = low.bit_length() - 1
        for w in adjacency[v]:
            if unmatched >> w & 1 and w != v:
                chosen.append((v, w))
                yield from extend(unmatched ^ low ^ (1 << w))
                chosen.pop()

    if g.vertex_count % 2:
        return
    yield from extend((1 << g.vertex_count) - 1)


# ---------------------------------------------------------------------------
# counting and sampling
# ---------------------------------------------------------------------------


class _CompletionCounter:
    """Memoised count of perfect matchings of the subgraph induced by an
    unmatched-vertex bitmask."""

    def __init__(self, g: Graph):
        self.masks = [g.neighbor_mask(v) for v in g.vertices()]
        self.memo: dict[int, int] = {0: 1}

    def __call__(self, unmatched: int) -> int:
        memo = self.memo
        hit = memo.get(unmatched)
        if hit is not None:
            return hit
        low = unmatched & -unmatched
        rest = unmatched ^ low
        candidates = self.masks[low.bit_length() - 1] & rest
        total = 0
        while candidates:
            bit = candidates & -candidates
            candidates ^= bit
            total += self(rest ^ bit)
        memo[unmatched] = total
        return total


@lru_cache(maxsize=8)
def _counter_for(g: Graph) -> _CompletionCounter:
    return _CompletionCounter(g)


def count_perfect_matchings(g: Graph) -> int:
    """Exact number of perfect matchings, by DP over unmatched-vertex sets."""
    _guard(g, config.COUNT_MAX_VERTICES, "counting vertex limit")
    if g.vertex_count % 2:
        return 0
    return _counter_for(g)((1 << g.vertex_count) - 1)


def sample_perfect_matching(g: Graph, seed: int) -> Matching:
    """Uniformly random perfect matching, deterministic in ``seed``.

    At each step the lowest unmatched vertex picks a partner with
    probability proportional to the number of completions.
    """
    _guard(g, config.COUNT_MAX_VERTICES, "counting vertex limit")
    counter = _counter_for(g)
    unmatched = (1 << g.vertex_count) - 1
    if g.vertex_count % 2 or counter(unmatched) == 0:
        raise NoPerfectMatching("graph has no perfect matching")
    rng = random.Random(seed)
    edges = []
    while unmatched:
        low = unmatched & -unmatched
        v = low.bit_length() - 1
        rest = unmatched ^ low
        options = [(w, counter(rest ^ (1 << w))) for w in g.adjacency[v] if rest >> w & 1]
        pick = rng.randrange(sum(c for _, c in options))
        for w, c in options:
            if pick < c:
                break
            pick -= c
        edges.append((v, w))
        unmatched = rest ^ (1 << w)
    return Matching(g.n, edges)


def random_perfect_matching(g: Graph, seed: int, max_restarts: int = 1000) -> Matching:
    """Random perfect matching by randomised backtracking with restarts.

    Not uniform. Meant for graphs past the counting guard, where every
    perfect matching still has positive probability. Branches on the
    unmatched vertex with the fewest free neighbors; a search that runs
    past its node budget restarts with fresh random choices.
    """
    rng = random.Random(seed)
    if g.vertex_count % 2:
        raise NoPerfectMatching("graph has no perfect matching")
    budget = 4 * g.vertex_count
    for _ in range(max_restarts):
        try:
            found = _backtrack_matching(g, rng, budget)
        except _BudgetSpent:
            continue
        if found is None:
            raise NoPerfectMatching("graph has no perfect matching")
        return Matching(g.n, found)
    raise NoPerfectMatching(f"no perfect matching found after {max_restarts} restarts")


class _BudgetSpent(Exception):
    pass


def _backtrack_matching(g: Graph, rng: random.Random, budget: int) -> list[Edge] | None:
    free = set(g.vertices())
    free_degree = [g.degree(v) for v in g.vertices()]
    chosen: list[Edge] = []
    nodes = 0

    def take(v):
        free.discard(v)
        for w in g.adjacency[v]:
            free_degree[w] -= 1

    def give(v):
        free.add(v)
        for w in g.adjacency[v]:
            free_degree[w] += 1

    def extend() -> bool:
        nonlocal nodes
        if not free:
            return True
        nodes += 1
        if nodes > budget:
            raise _BudgetSpent
        v = min(free, key=lambda x: (free_degree[x], x))
        options = [w for w in g.adjacency[v] if w in free]
        rng.shuffle(options)
        take(v)
        for w in options:
            take(w)
            chosen.append((v, w))
            stranded = any(free_degree[x] == 0 for x in g.adjacency[w] if x in free)
            if not stranded and extend():
                return True
            chosen.pop()
            give(w)
        give(v)
        return False

    return chosen if extend() else None


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------


def complementary_count(n: int, m) -> int:
    return sum(isinstance(edge_class(n, e), Complementary) for e in m)


def classify_matching(n: int, m) -> MatchingClass:
    """Place a perfect matching of FQ_n into E_c, some E^i, or Mixed."""
    problem = perfect_matching_problem(build_folded_hypercube(n), m)
    if problem is not None:
        raise NotAPerfectMatching(f"not a perfect matching of FQ_{n}: {problem}")
    comp = 0
    histogram: Counter[int] = Counter()
    for e in m:
        try:
            cls = edge_class(n, e)
        except NotAnFqEdge as exc:  # unreachable after the check above
            raise NotAPerfectMatching(str(exc)) from exc
        if isinstance(cls, Complementary):
            comp += 1
        else:
            histogram[cls.position] += 1
    size = 1 << (n - 1)
    # n=1 is excluded by the FQ_n dimension guard, so the classes differ.
    if comp == size:
        return AllComplementary()
    if comp == 0 and len(histogram) == 1:
        (position,) = histogram
        return SingleDimension(position)
    return Mixed(comp, dict(sorted(histogram.items())))


def is_mixed(cls: MatchingClass) -> bool:
    return isinstance(cls, Mixed)
