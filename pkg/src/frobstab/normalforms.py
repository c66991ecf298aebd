"""Integer normal forms and the additive presentation of submodules.

A subgroup ``H`` of ``prod Z_{m_j}`` is handled through the lattice
``L = {y in Z^D : y mod m in H}``, which contains ``diag(m) Z^D``. Two Smith
reductions give everything downstream needs:

* ``[A; diag(m)] -> diag(s)`` yields a basis ``diag(s) V^-1`` of ``L`` and the
  membership test ``(y V)_i = 0 mod s_i``;
* ``diag(m) V diag(1/s) -> diag(d)`` presents ``H = L / diag(m) Z^D`` as
  ``(+) Z_{d_i}``, i.e. the cyclic decomposition.

Integer work is done on Python ints (arbitrary precision); only the final
membership matrix, whose columns are reduced mod ``s_i``, goes to int64.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import prod
from typing import Callable, Sequence

import numpy as np

from frobstab.errors import ConsistencyError, GuardError
from frobstab.ring import LocalRing

BRUTE_FORCE_LIMIT = 2**24


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A, return_inverses: bool = False):
    """Smith normal form ``U A V = D`` with unimodular ``U``, ``V``.

    ``D`` is diagonal (same shape as ``A``) with non-negative entries and
    ``d_i | d_{i+1}``. Pivots are chosen as the entry of least absolute value,
    ties broken by smallest (row, column), so the output is deterministic.
    With ``return_inverses`` also returns ``U^-1`` and ``V^-1``.
    """
    D = [[int(x) for x in row] for row in A]
    m = len(D)
    k = len(D[0]) if m else 0
    U, V = _identity(m), _identity(k)
    Ui, Vi = _identity(m), _identity(k)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, c):  # row i += c * row j
        if not c:
            return
        Di, Dj = D[i], D[j]
        for t in range(k):
            Di[t] += c * Dj[t]
        Ui_, Uj = U[i], U[j]
        for t in range(m):
            Ui_[t] += c * Uj[t]
        for row in Ui:
            row[j] -= c * row[i]

    def neg_row(i):
        D[i] = [-x for x in D[i]]
        U[i] = [-x for x in U[i]]
        for row in Ui:
            row[i] = -row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def add_col(i, j, c):  # col i += c * col j
        if not c:
            return
        for row in D:
            row[i] += c * row[j]
        for row in V:
            row[i] += c * row[j]
        Vi_j, Vi_i = Vi[j], Vi[i]
        for t in range(k):
            Vi_j[t] -= c * Vi_i[t]

    def move_min_to(t, rows, cols):
        best = None
        for i in rows:
            for j in cols:
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            return False
        _, i, j = best
        if i != t:
            swap_rows(i, t)
        if j != t:
            swap_cols(j, t)
        return True

    for t in range(min(m, k)):
        if not move_min_to(t, range(t, m), range(t, k)):
            break
        while True:
            piv = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    add_row(i, t, -(D[i][t] // piv))
            for j in range(t + 1, k):
                if D[t][j]:
                    add_col(j, t, -(D[t][j] // piv))
            col_left = any(D[i][t] for i in range(t + 1, m))
            row_left = any(D[t][j] for j in range(t + 1, k))
            if col_left or row_left:
                cells = [(i, t) for i in range(t, m)] + [(t, j) for j in range(t + 1, k)]
                best = min(((abs(D[i][j]), i, j) for i, j in cells if D[i][j]))
                _, i, j = best
                if i != t:
                    swap_rows(i, t)
                if j != t:
                    swap_cols(j, t)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, k)
                        if D[i][j] % piv), None)
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if D[t][t] < 0:
            neg_row(t)

    out = (U, D, V)
    if return_inverses:
        out += (Ui, Vi)
    return out


def _matmul(A, B):
    Bt = list(zip(*B)) if B else []
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of ``prod Z_{m_j}`` with its lattice data and cyclic decomposition."""

    moduli: tuple[int, ...]
    s: tuple[int, ...]            # elementary divisors of the lattice L
    V: tuple[tuple[int, ...], ...]
    Vinv: tuple[tuple[int, ...], ...]
    V2: tuple[tuple[int, ...], ...]
    d: tuple[int, ...]            # invariant factors of H (all > 1)
    d_index: tuple[int, ...]      # which columns of V2 carry the d_i
    generators: np.ndarray        # additive coordinates of the cyclic generators
    _membership: np.ndarray = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return prod(self.d)

    @classmethod
    def from_generators(cls, rows, moduli: Sequence[int]) -> "Subgroup":
        moduli = tuple(int(m) for m in moduli)
        D = len(moduli)
        rows = [[int(x) % m for x, m in zip(r, moduli)] for r in rows]
        stacked = [r for r in rows if any(r)] + [[m if i == j else 0 for j in range(D)]
                                                 for i, m in enumerate(moduli)]
        return cls._from_lattice_rows(stacked, moduli)

    @classmethod
    def _from_lattice_rows(cls, stacked, moduli) -> "Subgroup":
        D = len(moduli)
        _, Dg, V, _, Vinv = smith_normal_form(stacked, return_inverses=True)
        s = [Dg[i][i] for i in range(D)]
        if any(x == 0 for x in s):
            raise ConsistencyError("lattice lost full rank; moduli rows missing")
        # diag(m) Z^D in w-coordinates (w = y V diag(1/s))
        X = []
        for j in range(D):
            row = []
            for i in range(D):
                num = moduli[j] * V[j][i]
                if num % s[i]:
                    raise ConsistencyError("non-integral change of lattice basis")
                row.append(num // s[i])
            X.append(row)
        _, Dx, V2, _, V2inv = smith_normal_form(X, return_inverses=True)
        dd = [Dx[i][i] for i in range(D)]
        keep = [i for i in range(D) if dd[i] > 1]
        gens = []
        for i in keep:
            w = [V2inv[i][t] * s[t] for t in range(D)]
            y = [sum(w[t] * Vinv[t][c] for t in range(D)) % moduli[c] for c in range(D)]
            gens.append(y)
        memb = np.array([[V[r][i] % s[i] for i in range(D)] for r in range(D)], dtype=np.int64)
        sub = cls(moduli=tuple(moduli), s=tuple(s), V=tuple(map(tuple, V)),
                  Vinv=tuple(map(tuple, Vinv)), V2=tuple(map(tuple, V2)),
                  d=tuple(dd[i] for i in keep), d_index=tuple(keep),
                  generators=np.array(gens, dtype=np.int64).reshape(len(gens), D),
                  _membership=memb)
        if prod(moduli) != sub.order * prod(s):
            raise ConsistencyError("|H| * det(L) != prod(m)")
        return sub

    def lattice_basis(self):
        """Rows of ``diag(s) V^-1``: a Z-basis of ``L``."""
        D = len(self.moduli)
        return [[self.s[i] * self.Vinv[i][c] for c in range(D)] for i in range(D)]

    def contains(self, Y) -> np.ndarray:
        """Vectorised membership for additive-coordinate rows ``Y`` (shape ``(..., D)``)."""
        Y = np.asarray(Y, dtype=np.int64)
        s = np.asarray(self.s, dtype=np.int64)
        return ((Y @ self._membership) % s == 0).all(axis=-1)

    def coordinates(self, y) -> tuple[int, ...] | None:
        """Exponent tuple ``c`` with ``sum c_i g_i = y``, or None if ``y`` is outside."""
        D = len(self.moduli)
        y = [int(v) for v in y]
        yv = [sum(y[r] * self.V[r][i] for r in range(D)) for i in range(D)]
        if any(yv[i] % self.s[i] for i in range(D)):
            return None
        w = [yv[i] // self.s[i] for i in range(D)]
        return tuple(sum(w[t] * self.V2[t][i] for t in range(D)) % di
                     for i, di in zip(self.d_index, self.d))


def lattice_preimage(Phi, moduli_dom: Sequence[int], target_basis) -> Subgroup:
    """``{y : y Phi in T}`` where ``T`` has Z-basis rows ``target_basis``.

    ``Phi`` (D x E) must be a lift of an additive homomorphism from
    ``prod Z_{moduli_dom}``; ``T`` must contain the codomain's modulus lattice.
    """
    D = len(moduli_dom)
    Phi = [[int(x) for x in row] for row in Phi]
    stacked = Phi + [[int(x) for x in row] for row in target_basis]
    U, Dg, _ = smith_normal_form(stacked)
    rank = sum(1 for i in range(min(len(Dg), len(Dg[0]) if Dg else 0)) if Dg[i][i])
    null_rows = [U[i][:D] for i in range(rank, len(U))]
    rows = null_rows + [[m if i == j else 0 for j in range(D)] for i, m in enumerate(moduli_dom)]
    rows = [[x % m for x, m in zip(r, moduli_dom)] for r in rows]
    rows = [r for r in rows if any(r)] + [[m if i == j else 0 for j in range(D)]
                                          for i, m in enumerate(moduli_dom)]
    return Subgroup._from_lattice_rows(rows, tuple(int(m) for m in moduli_dom))


# --- vectors in R^L ---

def vectors_to_additive(ring: LocalRing, vecs) -> np.ndarray:
    """Flatten ``(..., L)`` element codes into ``(..., L*s)`` additive coordinates."""
    digits = ring.to_additive(vecs)
    return digits.reshape(digits.shape[:-2] + (-1,))


def additive_to_vectors(ring: LocalRing, coords, length: int) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    digits = coords.reshape(coords.shape[:-1] + (length, len(ring.add_orders)))
    return ring.from_additive(digits).astype(np.uint8)


def ambient_moduli(ring: LocalRing, length: int) -> tuple[int, ...]:
    return tuple(ring.add_orders) * length


def module_additive_generators(ring: LocalRing, gens) -> np.ndarray:
    """Additive generators ``e_t g`` (``e_t`` the ring's additive basis) of the R-span."""
    gens = np.asarray(gens, dtype=np.int64)
    if gens.size == 0:
        return gens.reshape(0, gens.shape[-1] if gens.ndim == 2 else 0)
    e = np.asarray(ring.additive_generators, dtype=np.int64)
    scaled = ring.mul_table[e[:, None, None], gens[None, :, :]]
    return scaled.reshape(-1, gens.shape[1])


@dataclass(frozen=True)
class CyclicDecomposition:
    """An R-submodule of ``R^L`` presented as ``(+) Z_{m_j}``.

    ``generators[j]`` has additive order ``orders[j]``; the map from exponent
    tuples ``0 <= c_j < m_j`` to ``sum c_j generators[j]`` is a bijection.
    """

    ring: LocalRing
    length: int
    generators: np.ndarray
    orders: tuple[int, ...]
    group: Subgroup = field(repr=False)

    @property
    def order(self) -> int:
        return prod(self.orders)

    def contains(self, vecs) -> np.ndarray:
        return self.group.contains(vectors_to_additive(self.ring, vecs))

    def combine(self, exponents) -> np.ndarray:
        """``sum_j c_j generators[j]`` for a (batch of) exponent tuple(s)."""
        c = np.asarray(exponents, dtype=np.int64)
        mods = np.asarray(self.group.moduli, dtype=np.int64)
        coords = (c @ self.group.generators) % mods
        return additive_to_vectors(self.ring, coords, self.length)

    def elements(self, chunk: int = 1 << 16):
        """Yield all elements as ``uint8`` arrays, odometer order over exponent tuples."""
        total = self.order
        orders = np.asarray(self.orders, dtype=np.int64)
        radix = np.ones(len(orders), dtype=np.int64)
        for j in range(len(orders) - 2, -1, -1):
            radix[j] = radix[j + 1] * orders[j + 1]
        for start in range(0, total, chunk):
            idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
            exps = (idx[:, None] // radix) % orders if len(orders) else idx[:, None] * 0
            yield self.combine(exps)


def cyclic_decomposition(ring: LocalRing, gens, length: int | None = None,
                         allow_zero: bool = False) -> CyclicDecomposition:
    """Cyclic decomposition of the R-submodule of ``R^L`` spanned by ``gens``."""
    gens = np.asarray(gens, dtype=np.int64)
    if length is None:
        if gens.ndim != 2:
            raise ValueError("need a 2-d generator array or an explicit length")
        length = gens.shape[1]
    gens = gens.reshape(-1, length)
    if not allow_zero and not gens.any():
        raise ValueError("all-zero generating set")
    add_gens = module_additive_generators(ring, gens)
    coords = vectors_to_additive(ring, add_gens) if len(add_gens) else np.zeros((0, length * len(ring.add_orders)), dtype=np.int64)
    group = Subgroup.from_generators(coords.tolist(), ambient_moduli(ring, length))
    vecs = additive_to_vectors(ring, group.generators, length) if len(group.d) else np.zeros((0, length), dtype=np.uint8)
    return CyclicDecomposition(ring=ring, length=length, generators=vecs,
                               orders=group.d, group=group)


def subgroup_membership(decomp: CyclicDecomposition, v) -> tuple[int, ...] | None:
    v = np.asarray(v, dtype=np.int64)
    if v.shape != (decomp.length,):
        raise ValueError(f"vector of length {v.shape} does not match ambient length {decomp.length}")
    y = vectors_to_additive(decomp.ring, v)
    return decomp.group.coordinates(y)


def kernel_of_pairing(ring: LocalRing, gens, pairing: Callable, length: int) -> CyclicDecomposition:
    """``{v : pairing(v, g) = 0 for every generator g}`` as a decomposition.

    ``pairing(V, g)`` receives a batch ``V`` of vectors (shape ``(B, length)``)
    and one generator, returning ``B`` ring elements; it must be R-linear in
    its first argument.
    """
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, length)
    gens = gens[gens.any(axis=1)]
    s = len(ring.add_orders)
    D = length * s
    moduli_dom = ambient_moduli(ring, length)
    if len(gens) == 0:
        group = Subgroup.from_generators([[1 if i == j else 0 for j in range(D)] for i in range(D)], moduli_dom)
        return CyclicDecomposition(ring, length, additive_to_vectors(ring, group.generators, length),
                                   group.d, group)
    basis = np.zeros((D, length), dtype=np.int64)
    for j in range(length):
        for t, e in enumerate(ring.additive_generators):
            basis[j * s + t, j] = e
    images = np.stack([np.asarray(pairing(basis, g), dtype=np.int64) for g in gens], axis=1)
    Phi = ring.to_additive(images).reshape(D, -1)
    moduli_cod = tuple(ring.add_orders) * len(gens)
    target = [[m if i == j else 0 for j in range(len(moduli_cod))] for i, m in enumerate(moduli_cod)]
    group = lattice_preimage(Phi.tolist(), moduli_dom, target)
    vecs = additive_to_vectors(ring, group.generators, length) if len(group.d) else np.zeros((0, length), dtype=np.uint8)
    return CyclicDecomposition(ring, length, vecs, group.d, group)


def module_preimage(ring: LocalRing, scalar: int, target: CyclicDecomposition) -> CyclicDecomposition:
    """``{v : scalar * v in target}`` (the colon module when ``scalar`` is the socle generator)."""
    length = target.length
    s = len(ring.add_orders)
    D = length * s
    rows = np.zeros((D, length), dtype=np.int64)
    for j in range(length):
        for t, e in enumerate(ring.additive_generators):
            rows[j * s + t, j] = ring.mul_table[scalar, e]
    Phi = vectors_to_additive(ring, rows)
    group = lattice_preimage(Phi.tolist(), ambient_moduli(ring, length), target.group.lattice_basis())
    vecs = additive_to_vectors(ring, group.generators, length) if len(group.d) else np.zeros((0, length), dtype=np.uint8)
    return CyclicDecomposition(ring, length, vecs, group.d, group)


def brute_force_elements(ring: LocalRing, length: int, force: bool = False) -> np.ndarray:
    """All of ``R^L`` in lexicographic order (oracle use only)."""
    total = ring.q**length
    if total > BRUTE_FORCE_LIMIT and not force:
        raise GuardError(f"|R|^{length} = {total} exceeds brute-force limit {BRUTE_FORCE_LIMIT}")
    idx = np.arange(total, dtype=np.int64)
    powers = ring.q ** np.arange(length - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] // powers) % ring.q).astype(np.uint8)
