"""Text formats: edge lists, matching files, certificates and witness JSON.

All vertices are written as n-character binary strings, lines end in LF.
"""

from __future__ import annotations

import hashlib
import json

from foldcube.errors import MatchingFormatError
from foldcube.isomorphism import Labeling
from foldcube.matching import Matching
from foldcube.topology import Graph, GraphKind, format_edge, format_vertex, make_edge, parse_vertex


def write_edge_list(g: Graph) -> str:
    lines = [f"{g.vertex_count} {g.edge_count}"]
    lines.extend(format_edge(e, g.n) for e in g.edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = text.splitlines()
    if not lines:
        raise ValueError("empty edge list")
    try:
        vertex_count, edge_count = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line: {lines[0]!r}") from None
    if vertex_count < 1 or vertex_count & (vertex_count - 1):
        raise ValueError(f"vertex count {vertex_count} is not a power of two")
    n = vertex_count.bit_length() - 1
    edges = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected two labels, got {line!r}")
        edges.append(make_edge(parse_vertex(parts[0], n), parse_vertex(parts[1], n)))
    if len(edges) != edge_count or len(set(edges)) != edge_count:
        raise ValueError(f"header announces {edge_count} edges, found {len(set(edges))} distinct")
    return Graph.from_edges(n, edges, GraphKind.DERIVED)


def write_matching(m: Matching) -> str:
    return "".join(format_edge(e, m.n) + "\n" for e in m.edges)


def parse_matching(text: str, n: int | None = None) -> Matching:
    """Parse a matching file. Blank lines are skipped; a vertex covered
    twice is reported with the line number of its second occurrence."""
    edges = []
    covered: dict[int, int] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MatchingFormatError(f"expected two labels, got {line!r}", lineno)
        if n is None:
            n = len(parts[0])
        try:
            u, v = (parse_vertex(p, n) for p in parts)
            e = make_edge(u, v)
        except ValueError as exc:
            raise MatchingFormatError(str(exc), lineno) from None
        for x in e:
            if x in covered:
                raise MatchingFormatError(
                    f"vertex {format_vertex(x, n)} already covered on line {covered[x]}", lineno
                )
            covered[x] = lineno
        edges.append(e)
    if n is None:
        raise MatchingFormatError("empty matching file without a dimension")
    return Matching(n, edges)


def write_certificate(lab: Labeling) -> str:
    return "".join(
        f"{format_vertex(u, lab.n)} {format_vertex(img, lab.n)}\n" for u, img in enumerate(lab.mapping)
    )


def parse_certificate(text: str) -> Labeling:
    pairs = {}
    n = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected '<source> <image>'")
        n = n or len(parts[0])
        pairs[parse_vertex(parts[0], n)] = parse_vertex(parts[1], n)
    if n is None or sorted(pairs) != list(range(1 << n)):
        raise ValueError("certificate does not list every vertex exactly once")
    return Labeling(n, tuple(pairs[u] for u in range(1 << n)))


def certificate_digest(lab: Labeling) -> str:
    return hashlib.sha256(write_certificate(lab).encode()).hexdigest()


def witness_json(witness, n: int) -> str:
    return json.dumps(witness.to_dict(n), indent=2, sort_keys=True) + "\n"
