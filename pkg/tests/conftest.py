import numpy as np
import pytest

from frobstab.code import Code
from frobstab.codefile import read_code
from frobstab.ring import build_ring

# free Z4 code, n = 7, and its dual
G_FREE_NONPURE = [
    [1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0, 3, 3, 2, 3, 2, 0, 1, 1],
    [0, 0, 1, 0, 0, 0, 0, 1, 2, 2, 3, 3, 3, 3],
    [0, 0, 0, 1, 0, 0, 2, 1, 3, 1, 3, 0, 2, 3],
    [0, 0, 0, 0, 1, 0, 1, 2, 3, 2, 3, 1, 3, 2],
    [0, 0, 0, 0, 0, 1, 2, 0, 3, 1, 0, 3, 2, 0],
]
H_FREE_NONPURE = G_FREE_NONPURE + [
    [0, 0, 0, 0, 0, 0, 1, 0, 1, 3, 3, 2, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 3, 0, 2, 1, 2, 3],
]
WEIGHT3_NONPURE = [0, 1, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0]

# free self-orthogonal Z8 code, n = 3
G_SELF_ORTH = [[1, 0, 0, 1, 2, 2], [0, 1, 4, 2, 1, 2]]
H_SELF_ORTH = G_SELF_ORTH + [[0, 0, 1, 2, 2, 0], [0, 0, 0, 0, 4, 7]]

# non-free Z8 code, n = 5
G_NONFREE = [
    [1, 0, 0, 0, 3, 0, 0, 2, 3, 0],
    [0, 1, 0, 0, 3, 0, 0, 7, 7, 0],
    [0, 0, 2, 0, 0, 6, 0, 0, 0, 2],
    [0, 0, 0, 2, 0, 6, 6, 0, 0, 0],
]
H_NONFREE = [
    [1, 0, 0, 0, 3, 0, 0, 2, 3, 0],
    [0, 1, 0, 0, 3, 0, 0, 7, 7, 0],
    [0, 0, 1, 0, 0, 7, 4, 0, 0, 1],
    [0, 0, 0, 1, 0, 7, 3, 0, 0, 4],
    [0, 0, 0, 0, 1, 0, 0, 1, 4, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 5],
    [0, 0, 0, 0, 0, 0, 0, 4, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 4, 0],
]
G_NONFREE_RED = [[1, 0, 0, 0, 1, 0, 0, 0, 1, 0], [0, 1, 0, 0, 1, 0, 0, 1, 1, 0]]
H_NONFREE_RED = G_NONFREE_RED + [
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 1],
    [0, 0, 0, 1, 0, 1, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, 1, 1, 0, 0, 1],
]

# self-dual binary code, n = 4, with a weight-preserving map G1 -> G2 that does not extend
G1_NONEXT = [[1, 0, 1, 1, 0, 1, 0, 0], [0, 1, 0, 1, 1, 0, 0, 0],
             [0, 0, 0, 0, 1, 0, 1, 0], [0, 0, 0, 0, 1, 1, 0, 1]]
G2_NONEXT = [[1, 1, 1, 0, 1, 0, 1, 1], [0, 0, 0, 0, 1, 1, 0, 1],
             [0, 1, 0, 1, 0, 1, 0, 1], [0, 0, 0, 0, 0, 1, 1, 1]]
H1_NONEXT = [[1, 0, 0, 1, 1, 0, 1, 0], [0, 1, 1, 0, 0, 0, 1, 0],
             [0, 1, 0, 0, 0, 1, 0, 0], [0, 1, 0, 1, 0, 0, 0, 1]]
H2_NONEXT = [[1, 1, 1, 0, 1, 1, 0, 1], [0, 1, 0, 1, 0, 0, 0, 1],
             [0, 0, 1, 1, 0, 0, 1, 1], [0, 0, 0, 1, 0, 1, 0, 1]]

F4 = "GF4:x^2+x+1"
X1_F4 = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]
Z1_F4 = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]]


def ds_gap_rows(ring, n):
    alpha = ring.alpha
    rows = [[1] * (2 * n)]
    for i in range(n):
        row = [0] * (2 * n)
        row[i] = row[n + i] = alpha
        rows.append(row)
    return rows


def brute_span(ring, n, gens):
    """All R-combinations of ``gens`` by breadth-first closure (independent oracle)."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    seeds = {tuple(int(x) for x in ring.mul(r, g)) for g in gens for r in range(ring.q)}
    seen = {(0,) * (2 * n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for v in frontier:
            for s in seeds:
                w = tuple(int(x) for x in ring.add(np.asarray(v), np.asarray(s)))
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return seen


def random_code(ring, n, rng, max_rows=None):
    rows = rng.integers(1, (max_rows or 2 * n) + 1)
    return Code(ring, n, rng.integers(0, ring.q, size=(rows, 2 * n)))


@pytest.fixture
def z4():
    return build_ring("Z4")


@pytest.fixture
def z8():
    return build_ring("Z8")


@pytest.fixture
def example():
    return read_code
