"""Shared oracles. These use closed-form adjacency and brute force only,
never the package's own graph builders."""

from itertools import combinations

import pytest


def fq_adjacent(n, a, b, folded=True):
    d = bin(a ^ b).count("1")
    return d == 1 or (folded and n > 1 and d == n)


def oracle_edges(n, folded=True):
    size = 1 << n
    return [(u, v) for u in range(size) for v in range(u + 1, size) if fq_adjacent(n, u, v, folded)]


def brute_force_perfect_matchings(n, folded=True):
    """All perfect matchings by scanning every edge subset of size 2^(n-1)."""
    size = 1 << n
    found = []
    for subset in combinations(oracle_edges(n, folded), size // 2):
        if len({x for e in subset for x in e}) == size:
            found.append(tuple(sorted(subset)))
    return found


def ryser_permanent(matrix):
    """Permanent of a 0/1 square matrix, Ryser's formula with Gray-code order."""
    k = len(matrix)
    if k == 0:
        return 1
    row_sums = [0] * k
    total = 0
    prev_gray = 0
    for step in range(1, 1 << k):
        gray = step ^ (step >> 1)
        changed = (gray ^ prev_gray).bit_length() - 1
        sign = 1 if gray & (1 << changed) else -1
        for r in range(k):
            row_sums[r] += sign * matrix[r][changed]
        prev_gray = gray
        prod = 1
        for s in row_sums:
            prod *= s
            if not prod:
                break
        total += (-1) ** (k - bin(gray).count("1")) * prod
    return total


def bipartite_matching_count(n, folded):
    """Perfect matchings of a bipartite Q_n / FQ_n via the permanent."""
    even = [v for v in range(1 << n) if bin(v).count("1") % 2 == 0]
    odd = [v for v in range(1 << n) if bin(v).count("1") % 2 == 1]
    matrix = [[int(fq_adjacent(n, r, c, folded)) for c in odd] for r in even]
    return ryser_permanent(matrix)


def bfs_oracle_distance(n, a, b, folded=True):
    """Closed form: Hamming distance, or via one complementary hop."""
    h = bin(a ^ b).count("1")
    return min(h, n - h + 1) if folded else h


@pytest.fixture
def mixed_fq4():
    """Perfect matching of FQ_4 containing (0000,1111) and (0001,0011)."""
    from foldcube.formats import parse_matching

    return parse_matching(
        "0000 1111\n0001 0011\n0010 0110\n0100 0101\n"
        "0111 1000\n1001 1011\n1010 1110\n1100 1101\n"
    )


def folded_even_census(n):
    """Perfect matchings of FQ_n for even n, by number of complementary edges.

    For even n a complementary edge joins two vertices of the same parity, so
    after choosing which complementary edges to use, the rest is a perfect
    matching of a bipartite piece of Q_n: a permanent.
    """
    from collections import Counter

    size = 1 << n
    full = size - 1
    even = [v for v in range(size) if bin(v).count("1") % 2 == 0]
    odd = [v for v in range(size) if bin(v).count("1") % 2 == 1]
    comp = [(u, u ^ full) for u in range(size // 2)]
    census = Counter()
    for k in range(len(comp) + 1):
        for chosen in combinations(comp, k):
            used = {x for e in chosen for x in e}
            rows = [v for v in even if v not in used]
            cols = [v for v in odd if v not in used]
            if len(rows) != len(cols):
                continue
            matrix = [[int(fq_adjacent(n, r, c, folded=False)) for c in cols] for r in rows]
            census[k] += ryser_permanent(matrix)
    return census
