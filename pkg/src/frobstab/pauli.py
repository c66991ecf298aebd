"""Pauli group elements ``omega^l X(a) Z(b)`` with exact phase arithmetic.

Phases are exponents in Z_N, where ``omega = exp(2 pi i / N)``. Complex
matrices appear only in :func:`realize_matrix` and :func:`quantum_code`, which
exist to validate the exact arithmetic at tiny sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd, lcm

import numpy as np

from frobstab.code import Code
from frobstab.errors import ConsistencyError, GuardError
from frobstab.ring import LocalRing, build_ring
from frobstab.symplectic import symplectic_inner

REALIZE_LIMIT = 64
CLOSURE_LIMIT = 4096


@dataclass(frozen=True)
class PauliElement:
    ring: LocalRing
    phase: int
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ValueError("a and b must have the same length")
        object.__setattr__(self, "phase", int(self.phase) % self.ring.N)
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, 0, (0,) * n, (0,) * n)

    @classmethod
    def from_vector(cls, ring, v, phase=0):
        v = [int(x) for x in v]
        n = len(v) // 2
        return cls(ring, phase, v[:n], v[n:])

    @property
    def n(self):
        return len(self.a)

    @property
    def vector(self) -> tuple:
        """The image ``(a | b)`` in R^{2n}."""
        return self.a + self.b

    def is_identity(self) -> bool:
        return self.phase == 0 and not any(self.a) and not any(self.b)

    def __mul__(self, other):
        return pauli_mul(self, other)

    def __repr__(self):
        return f"PauliElement(phase={self.phase}/{self.ring.N}, a={self.a}, b={self.b})"


def _check(P: PauliElement, Q: PauliElement):
    if P.ring is not Q.ring or P.n != Q.n:
        raise ValueError("Pauli elements over different rings or sizes")


def _dot(ring, u, v) -> int:
    return int(ring.dot(np.asarray(u, dtype=np.int64), np.asarray(v, dtype=np.int64))) if u else 0


def pauli_mul(P: PauliElement, Q: PauliElement) -> PauliElement:
    """``P Q = omega^(l + l' + e(b.a')) X(a + a') Z(b + b')``."""
    _check(P, Q)
    ring = P.ring
    phase = P.phase + Q.phase + int(ring.char_exp(_dot(ring, P.b, Q.a)))
    return PauliElement(ring, phase, ring.add(P.a, Q.a).tolist() if P.n else (),
                        ring.add(P.b, Q.b).tolist() if P.n else ())


def pauli_pow(P: PauliElement, m: int) -> PauliElement:
    """Closed form ``P^m = omega^(m l) chi(m(m-1)/2 b.a) X(m a) Z(m b)`` for ``m >= 0``."""
    if m < 0:
        return pauli_pow(P, m % pauli_order(P))
    ring = P.ring
    ba = _dot(ring, P.b, P.a)
    phase = m * P.phase + int(ring.char_exp(int(ring.int_mul(m * (m - 1) // 2, ba))))
    a = ring.int_mul(m, np.asarray(P.a, dtype=np.int64)).tolist() if P.n else ()
    b = ring.int_mul(m, np.asarray(P.b, dtype=np.int64)).tolist() if P.n else ()
    return PauliElement(ring, phase, a, b)


def pauli_order(P: PauliElement) -> int:
    N = P.ring.N
    for m in range(1, N + 1):
        if pauli_pow(P, m).is_identity():
            if N % m:
                raise ConsistencyError(f"order {m} does not divide N = {N}")
            return m
    raise ConsistencyError(f"{P} has no order dividing N = {N}")


def group_exponent(ring) -> int:
    """``N = c`` for odd characteristic ``c`` and ``2c`` for even."""
    ring = build_ring(ring) if isinstance(ring, (str, tuple)) else ring
    c = ring.char
    return c if c % 2 else 2 * c


def brute_force_exponent(ring) -> int:
    """lcm of the orders of all phase-free ``X(a)Z(b)`` with n = 1."""
    ring = build_ring(ring) if isinstance(ring, (str, tuple)) else ring
    orders = [pauli_order(PauliElement(ring, 0, (a,), (b,)))
              for a in range(ring.q) for b in range(ring.q)]
    return reduce(lcm, orders, 1)


def commute(P: PauliElement, Q: PauliElement) -> bool:
    _check(P, Q)
    ring = P.ring
    return int(ring.char_exp(int(symplectic_inner(ring, P.vector, Q.vector)))) == 0


def solve_congruence(m: int, k: int, N: int) -> int:
    """Smallest ``t >= 0`` with ``m t = -k (mod N)``."""
    g = gcd(m, N)
    if (-k) % g:
        raise ConsistencyError(f"{m} t = {-k} (mod {N}) has no solution")
    Ng = N // g
    return ((-k) // g * pow(m // g, -1, Ng)) % Ng if Ng > 1 else 0


class StabilizerGroup:
    """A finite set of Pauli elements stored as arrays (phases, a, b)."""

    def __init__(self, ring: LocalRing, n: int, phases, A, B, generators=None, orders=None):
        self.ring, self.n = ring, n
        self.phases = np.asarray(phases, dtype=np.int64) % ring.N
        self.A = np.asarray(A, dtype=np.int64).reshape(-1, n)
        self.B = np.asarray(B, dtype=np.int64).reshape(-1, n)
        self.generators = list(generators or [])
        self.orders = tuple(orders or ())

    @classmethod
    def from_elements(cls, elements):
        elements = list(elements)
        P0 = elements[0]
        return cls(P0.ring, P0.n, [P.phase for P in elements],
                   [P.a for P in elements], [P.b for P in elements])

    def __len__(self):
        return len(self.phases)

    def elements(self):
        return [PauliElement(self.ring, int(l), a, b) for l, a, b in zip(self.phases, self.A, self.B)]

    def _keys(self, phases, A, B):
        q, N = self.ring.q, self.ring.N
        key = np.zeros(len(phases), dtype=np.int64)
        for col in np.concatenate([A, B], axis=1).T:
            key = key * q + col
        return key * N + phases

    def validity(self) -> dict:
        """Closure, commutativity and trivial phase kernel, checked exhaustively."""
        ring = self.ring
        size = len(self)
        if size > CLOSURE_LIMIT:
            raise GuardError(f"closure check over {size} elements exceeds {CLOSURE_LIMIT}")
        V = np.concatenate([self.A, self.B], axis=1)
        gram = symplectic_inner(ring, V[:, None, :], V[None, :, :])
        abelian = not ring.char_exp(gram).any()
        keys = self._keys(self.phases, self.A, self.B)
        cross = ring.dot(self.B[:, None, :], self.A[None, :, :]) if self.n else np.zeros((size, size), dtype=np.int64)
        prod_phase = (self.phases[:, None] + self.phases[None, :] + ring.char_exp(cross)) % ring.N
        prod_A = ring.add(self.A[:, None, :], self.A[None, :, :])
        prod_B = ring.add(self.B[:, None, :], self.B[None, :, :])
        prod_keys = self._keys(prod_phase.ravel(), prod_A.reshape(-1, self.n).astype(np.int64),
                               prod_B.reshape(-1, self.n).astype(np.int64))
        closed = bool(np.isin(prod_keys, keys).all())
        vec_keys = self._keys(np.zeros(size, dtype=np.int64), self.A, self.B)
        injective = len(np.unique(vec_keys)) == size
        zero_vec = ~V.any(axis=1)
        trivial_kernel = bool(zero_vec.sum() == 1 and (self.phases[zero_vec] == 0).all())
        return {"abelian": bool(abelian), "closed": closed, "injective_image": injective,
                "trivial_phase_kernel": trivial_kernel,
                "valid": bool(abelian and closed and injective and trivial_kernel)}

    def is_valid(self) -> bool:
        return self.validity()["valid"]

    def image_code(self) -> Code:
        return Code(self.ring, self.n, np.concatenate([self.A, self.B], axis=1))


def stabilizer_lift(C: Code) -> StabilizerGroup:
    """Phases making the codewords of a self-orthogonal ``C`` into a stabilizer group.

    Each cyclic generator ``v_j`` of order ``m_j`` gets the phase ``t_j`` solving
    ``m_j t_j = -k_j (mod N)`` where ``omega^k_j`` is the phase of ``X(a_j)Z(b_j)^m_j``.
    """
    if not C.is_self_orthogonal():
        raise ValueError("only self-orthogonal codes lift to stabilizer groups")
    ring, n, N = C.ring, C.n, C.ring.N
    decomp = C.decomposition
    gens = []
    for v, m in zip(decomp.generators, decomp.orders):
        P = PauliElement.from_vector(ring, v)
        powered = pauli_pow(P, m)
        if any(powered.a) or any(powered.b):
            raise ConsistencyError("generator order mismatch")
        t = solve_congruence(m, powered.phase, N)
        g = PauliElement.from_vector(ring, v, t)
        if not pauli_pow(g, m).is_identity():
            raise ConsistencyError("lifted generator does not have the code order")
        gens.append(g)
    for i, g in enumerate(gens):
        for h in gens[i + 1:]:
            if not commute(g, h):
                raise ConsistencyError("lifted generators do not commute")
    # all products prod g_j^{c_j}, accumulated one generator at a time
    phases = np.zeros(1, dtype=np.int64)
    A = np.zeros((1, n), dtype=np.int64)
    B = np.zeros((1, n), dtype=np.int64)
    for g, m in zip(gens, decomp.orders):
        pw = [pauli_pow(g, c) for c in range(m)]
        pp = np.array([p.phase for p in pw], dtype=np.int64)
        pa = np.array([p.a for p in pw], dtype=np.int64)
        pb = np.array([p.b for p in pw], dtype=np.int64)
        cross = ring.dot(B[:, None, :], pa[None, :, :]).astype(np.int64)
        phases = (phases[:, None] + pp[None, :] + ring.char_exp(cross)).ravel() % N
        A = ring.add(A[:, None, :], pa[None, :, :]).reshape(-1, n).astype(np.int64)
        B = ring.add(B[:, None, :], pb[None, :, :]).reshape(-1, n).astype(np.int64)
    S = StabilizerGroup(ring, n, phases, A, B, gens, decomp.orders)
    if len(S) != C.cardinality or not C.contains_many(np.concatenate([A, B], axis=1)).all():
        raise ConsistencyError("lift image is not the code")
    return S


# --- complex realization (tiny sizes only) ---

def _basis(ring: LocalRing, n: int) -> np.ndarray:
    total = ring.q**n
    if total > REALIZE_LIMIT:
        raise GuardError(f"q^n = {total} exceeds the realization limit {REALIZE_LIMIT}")
    idx = np.arange(total)
    powers = ring.q ** np.arange(n - 1, -1, -1)
    return (idx[:, None] // powers) % ring.q


def realize_matrix(P: PauliElement) -> np.ndarray:
    """Matrix of ``omega^l X(a) Z(b)`` on C^{q^n}, basis indexed lexicographically by R^n."""
    ring, n = P.ring, P.n
    xs = _basis(ring, n)
    powers = ring.q ** np.arange(n - 1, -1, -1)
    a = np.asarray(P.a, dtype=np.int64)
    b = np.asarray(P.b, dtype=np.int64)
    targets = (ring.add(xs, a).astype(np.int64) * powers).sum(axis=1)
    expo = (P.phase + ring.char_exp(ring.dot(xs, np.broadcast_to(b, xs.shape)))) % ring.N
    M = np.zeros((len(xs), len(xs)), dtype=complex)
    M[targets, np.arange(len(xs))] = roots_of_unity(ring.N)[expo]
    return M


def roots_of_unity(N: int) -> np.ndarray:
    """``omega^k`` for k in 0..N-1, exact at multiples of a quarter turn."""
    roots = np.exp(2j * np.pi * np.arange(N) / N)
    for k in range(N):
        if (4 * k) % N == 0:
            roots[k] = (1, 1j, -1, -1j)[4 * k // N]
    return roots


def quantum_code(S: StabilizerGroup, tol: float = 1e-6):
    """``(dimension, orthonormal basis columns)`` of the common +1 eigenspace."""
    ring, n = S.ring, S.n
    dim_space = ring.q**n
    _basis(ring, n)
    proj = sum(realize_matrix(P) for P in S.elements()) / len(S)
    trace = np.trace(proj).real
    dim = int(round(trace))
    if abs(trace - dim) > tol:
        raise ConsistencyError(f"projector trace {trace} is not an integer")
    if not np.allclose(proj @ proj, proj, atol=tol):
        raise ConsistencyError("averaged stabilizer is not a projector")
    vals, vecs = np.linalg.eigh((proj + proj.conj().T) / 2)
    basis = vecs[:, vals > 0.5]
    if basis.shape[1] != dim:
        raise ConsistencyError(f"projector rank {basis.shape[1]} != trace {dim}")
    if dim * len(S) != dim_space:
        raise ConsistencyError(f"dim Q = {dim} but q^n/|S| = {dim_space}/{len(S)}")
    return dim, basis
