import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from frobstab.code import Code
from frobstab.normalforms import (brute_force_elements, cyclic_decomposition, kernel_of_pairing,
                                  smith_normal_form, subgroup_membership)
from frobstab.ring import build_ring
from frobstab.symplectic import symplectic_inner

from conftest import G_FREE_NONPURE, G_NONFREE, G_SELF_ORTH, H_FREE_NONPURE, H_SELF_ORTH, brute_span


def det(M):
    """Integer determinant by cofactor expansion (small matrices only)."""
    if len(M) == 0:
        return 1
    if len(M) == 1:
        return M[0][0]
    return sum((-1) ** j * M[0][j] * det([row[:j] + row[j + 1:] for row in M[1:]]) for j in range(len(M)))


def matmul(A, B):
    return (np.array(A, dtype=object) @ np.array(B, dtype=object)).tolist()


def check_snf(A):
    U, D, V, Ui, Vi = smith_normal_form(A, return_inverses=True)
    assert matmul(matmul(U, A), V) == D
    m, k = len(A), len(A[0])
    assert matmul(U, Ui) == np.eye(m, dtype=int).tolist()
    assert matmul(V, Vi) == np.eye(k, dtype=int).tolist()
    assert abs(det(U)) == 1 and abs(det(V)) == 1
    diag = [D[i][i] for i in range(min(m, k))]
    assert all(D[i][j] == 0 for i in range(m) for j in range(k) if i != j)
    assert all(d >= 0 for d in diag)
    for a, b in zip(diag, diag[1:]):
        assert (b == 0) if a == 0 else (b % a == 0)
    return diag


def test_snf_examples():
    assert check_snf([[2, 4], [6, 8]]) == [2, 4]
    assert check_snf([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) == [1, 1, 1]
    assert check_snf([[0, 0], [0, 0]]) == [0, 0]


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 4).flatmap(lambda m: st.integers(1, 4).flatmap(
    lambda k: st.lists(st.lists(st.integers(-20, 20), min_size=k, max_size=k), min_size=m, max_size=m))))
def test_snf_random(A):
    check_snf(A)


def test_decomposition_examples():
    z4 = build_ring("Z4")
    d = cyclic_decomposition(z4, [[2, 2]])
    assert d.orders == (2,)
    z8 = build_ring("Z8")
    assert cyclic_decomposition(z8, G_NONFREE).order == 8**3 * 2
    assert cyclic_decomposition(z8, [[1]]).orders == (8,)
    with pytest.raises(ValueError):
        cyclic_decomposition(z4, [[0, 0]])


@pytest.mark.parametrize("spec", ["Z4", "Z8", "Z9", "GF4:x^2+x+1", "F2u2", "F2XY"])
@pytest.mark.parametrize("seed", range(6))
def test_decomposition_matches_closure(spec, seed):
    ring = build_ring(spec)
    rng = np.random.default_rng(seed)
    n = 1 if ring.q > 4 else 2
    gens = rng.integers(0, ring.q, size=(rng.integers(1, 3), 2 * n))
    if not gens.any():
        gens[0, 0] = 1
    closure = brute_span(ring, n, gens)
    d = cyclic_decomposition(ring, gens)
    assert d.order == len(closure)
    assert all(m > 1 for m in d.orders)
    elems = np.concatenate(list(d.elements()))
    # bijection: every exponent tuple gives a different vector, all inside the closure
    assert len({tuple(v) for v in elems.tolist()}) == d.order
    assert {tuple(v) for v in elems.tolist()} == closure
    ambient = brute_force_elements(ring, 2 * n)
    member = d.contains(ambient)
    assert {tuple(v) for v in ambient[member].tolist()} == closure


def test_membership_examples():
    z4 = build_ring("Z4")
    C = Code(z4, 7, G_FREE_NONPURE)
    d = cyclic_decomposition(z4, G_FREE_NONPURE)
    c = subgroup_membership(d, np.array(G_FREE_NONPURE[0]))
    assert c is not None and np.array_equal(d.combine(c), G_FREE_NONPURE[0])
    small = cyclic_decomposition(z4, [[2, 2]])
    assert subgroup_membership(small, np.array([1, 0])) is None
    assert subgroup_membership(small, np.array([0, 0])) == (0,)
    with pytest.raises(ValueError):
        subgroup_membership(small, np.array([0, 0, 0]))
    assert C.cardinality == 4**6


def test_membership_coordinates_roundtrip():
    z8 = build_ring("Z8")
    d = cyclic_decomposition(z8, G_NONFREE)
    rng = np.random.default_rng(1)
    for _ in range(50):
        c = tuple(int(rng.integers(0, m)) for m in d.orders)
        v = d.combine(c)
        assert subgroup_membership(d, v) == c


def _pairing(ring):
    return lambda V, g: symplectic_inner(ring, V, g)


def test_kernel_examples():
    z8 = build_ring("Z8")
    k = kernel_of_pairing(z8, G_SELF_ORTH, _pairing(z8), 6)
    assert Code(z8, 3, k.generators) == Code(z8, 3, H_SELF_ORTH)
    z4 = build_ring("Z4")
    k = kernel_of_pairing(z4, G_FREE_NONPURE, _pairing(z4), 14)
    assert k.order == 4**8
    assert Code(z4, 7, k.generators) == Code(z4, 7, H_FREE_NONPURE)
    full = kernel_of_pairing(z4, np.zeros((0, 4)), _pairing(z4), 4)
    assert full.order == 4**4


@pytest.mark.parametrize("spec", ["Z4", "Z8", "Z9", "GF4:x^2+x+1", "F2u2", "F2XY"])
@pytest.mark.parametrize("seed", range(4))
def test_kernel_against_brute_force(spec, seed):
    ring = build_ring(spec)
    n = 1 if ring.q > 8 else 2
    rng = np.random.default_rng(100 + seed)
    gens = rng.integers(0, ring.q, size=(rng.integers(1, 3), 2 * n))
    k = kernel_of_pairing(ring, gens, _pairing(ring), 2 * n)
    ambient = brute_force_elements(ring, 2 * n)
    orth = (symplectic_inner(ring, ambient[:, None, :], gens[None, :, :]) == 0).all(axis=1)
    assert k.order == int(orth.sum())
    assert (k.contains(ambient) == orth).all()
    C = Code(ring, n, gens)
    assert C.cardinality * k.order == ring.q ** (2 * n)
