"""Submodules of R^{2n}: duals, freeness, and the systematic normal form."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from frobstab.errors import ConsistencyError
from frobstab.normalforms import (CyclicDecomposition, cyclic_decomposition,
                                  kernel_of_pairing, subgroup_membership)
from frobstab.ring import LocalRing, build_ring
from frobstab.symplectic import apply_tau_i, apply_tau_sigma, symplectic_inner


class Code:
    """An R-submodule of R^{2n} given by generator rows.

    Codes are values: every operation returns a new code. Equality is equality
    of the underlying sets.
    """

    def __init__(self, ring, n: int, generators=()):
        if isinstance(ring, (str, tuple)):
            ring = build_ring(ring)
        self.ring: LocalRing = ring
        self.n = int(n)
        if self.n < 1:
            raise ValueError("n must be positive")
        G = np.asarray(generators, dtype=np.int64)
        if G.size == 0:
            G = G.reshape(0, 2 * self.n)
        if G.ndim == 1:
            G = G.reshape(1, -1)
        if G.ndim != 2 or G.shape[1] != 2 * self.n:
            raise ValueError(f"generator rows must have length 2n = {2 * self.n}, got shape {G.shape}")
        if (G < 0).any() or (G >= ring.q).any():
            raise ValueError(f"element codes must lie in 0..{ring.q - 1}")
        self.generators = G.astype(np.uint8)
        self.generators.setflags(write=False)

    def __repr__(self):
        return f"Code({self.ring.spec}, n={self.n}, rows={len(self.generators)}, |C|={self.cardinality})"

    @classmethod
    def full(cls, ring, n):
        ring = build_ring(ring) if isinstance(ring, (str, tuple)) else ring
        return cls(ring, n, np.eye(2 * n, dtype=np.int64))

    @classmethod
    def zero(cls, ring, n):
        return cls(ring, n, [])

    # --- group structure ---

    @cached_property
    def decomposition(self) -> CyclicDecomposition:
        return cyclic_decomposition(self.ring, self.generators, 2 * self.n, allow_zero=True)

    @property
    def cardinality(self) -> int:
        return self.decomposition.order

    def __len__(self):
        return self.cardinality

    @property
    def is_zero(self) -> bool:
        return self.cardinality == 1

    def contains(self, v) -> bool:
        v = np.asarray(v)
        if v.shape != (2 * self.n,):
            raise ValueError(f"vector of shape {v.shape} is not in R^{2 * self.n}")
        return subgroup_membership(self.decomposition, v) is not None

    def contains_many(self, V) -> np.ndarray:
        V = np.asarray(V)
        if V.shape[-1] != 2 * self.n:
            raise ValueError(f"vectors of length {V.shape[-1]} are not in R^{2 * self.n}")
        return self.decomposition.contains(V)

    def elements(self, chunk: int = 1 << 16):
        return self.decomposition.elements(chunk)

    def issubset(self, other: "Code") -> bool:
        self._check_same_space(other)
        return bool(other.contains_many(self.generators).all()) if len(self.generators) else True

    def __eq__(self, other):
        if not isinstance(other, Code):
            return NotImplemented
        return (self.ring is other.ring and self.n == other.n
                and self.cardinality == other.cardinality and self.issubset(other))

    __hash__ = None

    def _check_same_space(self, other):
        if self.ring is not other.ring or self.n != other.n:
            raise ValueError("codes live in different ambient spaces")

    # --- symplectic data ---

    def is_self_orthogonal(self) -> bool:
        G = self.generators
        if len(G) == 0:
            return True
        gram = symplectic_inner(self.ring, G[:, None, :], G[None, :, :])
        return not gram.any()

    def gram(self) -> np.ndarray:
        G = self.generators
        return symplectic_inner(self.ring, G[:, None, :], G[None, :, :])

    @cached_property
    def _dual(self) -> "Code":
        ring, n = self.ring, self.n
        decomp = kernel_of_pairing(ring, self.generators,
                                   lambda V, g: symplectic_inner(ring, V, g), 2 * n)
        dual = Code(ring, n, decomp.generators)
        dual.__dict__["decomposition"] = decomp
        if self.cardinality * dual.cardinality != ring.q ** (2 * n):
            raise ConsistencyError(f"|C| |C^perp| = {self.cardinality * dual.cardinality} != |R|^{2 * n}")
        return dual

    def dual(self) -> "Code":
        return self._dual

    def is_self_dual(self) -> bool:
        return self.is_self_orthogonal() and self.cardinality**2 == self.ring.q ** (2 * self.n)

    # --- freeness ---

    @cached_property
    def _minimal(self):
        ring = self.ring
        G = self.generators
        if len(G) == 0:
            return 0, G
        Z = np.asarray(ring.maximal_ideal_gens, dtype=np.int64)
        mC = ring.mul_table[Z[:, None, None], G[None, :, :]].reshape(-1, 2 * self.n) if len(Z) else G[:0]
        mC_order = cyclic_decomposition(ring, mC, 2 * self.n, allow_zero=True).order
        f = ring.field.q
        ratio = self.cardinality // mC_order
        mu = round(np.log(ratio) / np.log(f)) if ratio > 1 else 0
        if f**mu != ratio or mC_order * ratio != self.cardinality:
            raise ConsistencyError(f"|C/mC| = {ratio} is not a power of |F| = {f}")
        kept = []
        for g in G:
            span = np.concatenate([np.asarray(kept, dtype=np.int64).reshape(-1, 2 * self.n), mC])
            d = cyclic_decomposition(ring, span, 2 * self.n, allow_zero=True)
            if not d.contains(g):
                kept.append(g)
        if len(kept) != mu:
            raise ConsistencyError(f"greedy generating set has {len(kept)} rows, expected {mu}")
        return mu, np.asarray(kept, dtype=np.uint8).reshape(-1, 2 * self.n)

    def minimal_generators(self):
        """``(mu, rows)``: the minimal number of generators and a generating set of that size."""
        return self._minimal

    @property
    def mu(self) -> int:
        return self._minimal[0]

    def is_free(self) -> bool:
        return self.cardinality == self.ring.q**self.mu

    @property
    def rank(self) -> int | None:
        """Free rank, or None for non-free codes."""
        return self.mu if self.is_free() else None


# --- standard form ---

@dataclass
class StandardForm:
    code: Code
    trail: list
    k: int
    M: np.ndarray
    N1: np.ndarray
    N2: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        k, n = self.k, self.code.n
        return np.concatenate([np.eye(k, dtype=np.uint8), self.M, self.N1, self.N2], axis=1)


def _eliminate(ring: LocalRing, G: np.ndarray, row: int, col: int) -> None:
    """Scale ``row`` so ``G[row, col] = 1`` and clear column ``col`` in all other rows."""
    u = int(G[row, col])
    G[row] = ring.mul(ring.inv(u), G[row])
    for r in range(len(G)):
        if r != row and G[r, col]:
            G[r] = ring.sub(G[r], ring.mul(int(G[r, col]), G[row]))


def standard_form(C: Code) -> StandardForm:
    """Bring a free self-orthogonal code to ``im(I_k | M | N1 | N2)`` with ``tau`` moves.

    For row ``r`` the pivot is the first unit among the left-half columns
    ``r..n-1``; failing that, the first unit among the right-half columns
    ``r..n-1`` is moved left by ``tau_i``. A transposition then brings it to
    column ``r``.
    """
    ring, n = C.ring, C.n
    if not C.is_free():
        raise ConsistencyError("standard form needs a free code")
    if not C.is_self_orthogonal():
        raise ConsistencyError("standard form needs a self-orthogonal code")
    k, basis = C.minimal_generators()
    G = basis.copy()
    trail = []
    units = ring.is_unit
    for r in range(k):
        left = [c for c in range(r, n) if units[G[r, c]]]
        if left:
            c = left[0]
        else:
            right = [c for c in range(r, n) if units[G[r, n + c]]]
            if not right:
                raise ConsistencyError(f"no unit pivot for row {r}: code is not free self-orthogonal")
            c = right[0]
            trail.append(("tau_i", c))
            G = apply_tau_i(ring, c, G)
        if c != r:
            perm = list(range(n))
            perm[r], perm[c] = c, r
            trail.append(("tau_sigma", tuple(perm)))
            G = apply_tau_sigma(perm, G)
        G = np.array(G, dtype=np.uint8)
        _eliminate(ring, G, r, r)
    M = G[:, k:n]
    N1 = G[:, n:n + k]
    N2 = G[:, n + k:]
    S = ring.add(N1, _matmul(ring, N2, M.T))
    if not (S == S.T).all():
        raise ConsistencyError("N1 + N2 M^T is not symmetric")
    return StandardForm(Code(ring, n, G), trail, k, M.copy(), N1.copy(), N2.copy())


def _matmul(ring: LocalRing, A, B) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
    return ring.dot(A[:, None, :], B.T[None, :, :])


def dual_standard_form(ring: LocalRing, k: int, M, N1, N2) -> np.ndarray:
    """Generator rows of the dual of ``im(I_k | M | N1 | N2)``."""
    M = np.asarray(M, dtype=np.int64).reshape(k, -1)
    N1 = np.asarray(N1, dtype=np.int64).reshape(k, k)
    N2 = np.asarray(N2, dtype=np.int64).reshape(k, -1)
    m = M.shape[1]
    S = ring.add(N1, _matmul(ring, N2, M.T))
    if not (S == S.T).all():
        raise ConsistencyError("N1 + N2 M^T is not symmetric")
    minus_one = int(ring.neg(1))
    Z = lambda r, c: np.zeros((r, c), dtype=np.int64)
    top = np.concatenate([np.eye(k, dtype=np.int64), Z(k, m), N1.T, Z(k, m)], axis=1)
    mid = np.concatenate([Z(m, k), np.eye(m, dtype=np.int64), N2.T, Z(m, m)], axis=1)
    bot = np.concatenate([Z(m, k), Z(m, m), M.T, minus_one * np.eye(m, dtype=np.int64)], axis=1)
    return np.concatenate([top, mid, bot]).astype(np.uint8)
