import itertools

import numpy as np
import pytest

from frobstab.code import Code
from frobstab.errors import ConsistencyError, GuardError
from frobstab.pauli import (PauliElement, StabilizerGroup, brute_force_exponent, commute,
                            group_exponent, pauli_mul, pauli_order, pauli_pow, quantum_code,
                            realize_matrix, solve_congruence, stabilizer_lift)
from frobstab.ring import build_ring

from conftest import F4, G_SELF_ORTH, X1_F4, Z1_F4

RINGS = ["Z3", "Z4", "Z8", F4, "F2u2", "F2XY"]


def test_realized_matrices_f4():
    f4 = build_ring(F4)
    X = realize_matrix(PauliElement(f4, 0, (1,), (0,)))
    Z = realize_matrix(PauliElement(f4, 0, (0,), (1,)))
    assert np.array_equal(X, np.array(X1_F4, dtype=complex))
    assert np.array_equal(Z, np.array(Z1_F4, dtype=complex))


@pytest.mark.parametrize("spec,N", [("Z3", 3), ("Z4", 8), ("Z8", 16), (F4, 4), ("F2XY", 4)])
def test_group_exponent(spec, N):
    assert group_exponent(spec) == N
    assert brute_force_exponent(spec) == N


def test_mul_pow_examples(z4):
    XZ = PauliElement(z4, 0, (1,), (1,))
    sq = pauli_pow(XZ, 2)
    assert (sq.phase, sq.a, sq.b) == (2, (2,), (2,))
    assert pauli_pow(XZ, 4) == PauliElement(z4, 4, (0,), (0,))
    assert pauli_order(XZ) == 8
    assert pauli_mul(XZ, XZ) == sq
    Z = PauliElement(z4, 0, (0,), (1,))
    X = PauliElement(z4, 0, (1,), (0,))
    assert (Z * X).phase == z4.char_exp(1) and (X * Z).phase == 0
    assert not commute(X, Z)
    assert commute(XZ, XZ)


@pytest.mark.parametrize("spec", RINGS)
def test_pow_matches_repeated_product(spec):
    ring = build_ring(spec)
    rng = np.random.default_rng(0)
    for _ in range(10):
        P = PauliElement(ring, int(rng.integers(ring.N)), rng.integers(0, ring.q, 2), rng.integers(0, ring.q, 2))
        acc = PauliElement.identity(ring, 2)
        for m in range(2 * ring.N + 1):
            assert pauli_pow(P, m) == acc
            acc = acc * P
        assert pauli_pow(P, pauli_order(P)).is_identity()
        assert ring.N % pauli_order(P) == 0


@pytest.mark.parametrize("spec", RINGS)
def test_exact_arithmetic_matches_matrices(spec):
    ring = build_ring(spec)
    elems = [PauliElement(ring, l, (a,), (b,)) for l in (0, 1) for a in range(ring.q) for b in range(ring.q)]
    mats = {P: realize_matrix(P) for P in elems}
    rng = np.random.default_rng(1)
    for i, j in rng.integers(0, len(elems), size=(60, 2)):
        P, Q = elems[i], elems[j]
        assert np.allclose(mats[P] @ mats[Q], realize_matrix(P * Q), atol=1e-9)
        comm = np.allclose(mats[P] @ mats[Q], mats[Q] @ mats[P], atol=1e-9)
        assert comm == commute(P, Q)
        m = int(rng.integers(0, 2 * ring.N))
        assert np.allclose(np.linalg.matrix_power(mats[P], m), realize_matrix(pauli_pow(P, m)), atol=1e-9)


@pytest.mark.parametrize("spec", ["Z3", "Z4", F4, "F2XY"])
def test_error_basis_orthonormal_and_trace(spec):
    ring = build_ring(spec)
    q = ring.q
    mats = [realize_matrix(PauliElement(ring, 0, (a,), (b,))) for a in range(q) for b in range(q)]
    gram = np.array([[np.trace(A.conj().T @ B) / q for B in mats] for A in mats])
    assert np.allclose(gram, np.eye(q * q), atol=1e-9)
    for a, b in itertools.product(range(q), repeat=2):
        tr = np.trace(realize_matrix(PauliElement(ring, 0, (a,), (b,))))
        assert np.isclose(tr, q if a == b == 0 else 0, atol=1e-9)


def test_solve_congruence():
    assert solve_congruence(2, 6, 8) == 1
    assert solve_congruence(4, 0, 16) == 0
    assert (3 * solve_congruence(3, 5, 7) + 5) % 7 == 0
    with pytest.raises(ConsistencyError):
        solve_congruence(2, 1, 8)


def test_four_element_stabilizer_f4():
    f4 = build_ring(F4)
    elems = [PauliElement(f4, 0, (0,), (0,)), PauliElement(f4, 0, (1,), (0,)),
             PauliElement(f4, 0, (0,), (1,)), PauliElement(f4, 0, (1,), (1,))]
    S = StabilizerGroup.from_elements(elems)
    assert S.is_valid()
    dim, basis = quantum_code(S)
    assert dim == 1
    target = np.array([1, 1, 0, 0]) / np.sqrt(2)
    assert abs(np.vdot(target, basis[:, 0])) > 1 - 1e-9


def test_lift_f4_diagonal():
    f4 = build_ring(F4)
    S = stabilizer_lift(Code(f4, 1, [[1, 1]]))
    assert len(S) == 4 and S.is_valid()
    dim, basis = quantum_code(S)
    assert dim == 1 == 4 // len(S)
    # the alternative phase assignment (-i on alpha, i on alpha^2) is also a valid lift
    other = StabilizerGroup(f4, 1, [0, 0, 3, 1], [[0], [1], [2], [3]], [[0], [1], [2], [3]])
    assert other.is_valid()


def test_lift_z8_example(z8):
    S = stabilizer_lift(Code(z8, 3, G_SELF_ORTH))
    assert len(S) == 64
    assert S.is_valid()
    assert S.image_code() == Code(z8, 3, G_SELF_ORTH)


def test_lift_trivial_group(z4):
    S = stabilizer_lift(Code.zero(z4, 1))
    assert len(S) == 1 and S.is_valid()
    assert quantum_code(S)[0] == 4


def test_lift_rejects_non_self_orthogonal(z4):
    with pytest.raises(ValueError):
        stabilizer_lift(Code.full(z4, 1))


def test_invalid_groups_detected(z4):
    X = PauliElement(z4, 0, (1,), (0,))
    Z = PauliElement(z4, 0, (0,), (1,))
    assert not StabilizerGroup.from_elements([PauliElement.identity(z4, 1), X, Z]).validity()["abelian"]
    minus = StabilizerGroup.from_elements([PauliElement.identity(z4, 1), PauliElement(z4, 4, (0,), (0,))])
    assert not minus.validity()["trivial_phase_kernel"]


def test_realize_guard(z8):
    with pytest.raises(GuardError):
        realize_matrix(PauliElement(z8, 0, (0, 0, 0), (0, 0, 0)))
