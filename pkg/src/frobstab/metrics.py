"""Symplectic weights, minimum distances and relative distances by exact enumeration.

Enumeration walks the exponent tuples of a code's cyclic decomposition in
chunks and stays in additive coordinates, so weights and membership in a
subcode are computed without converting back to element codes. The witness
reported for a minimum is the lexicographically smallest vector (by element
codes) of that weight, which makes reports independent of chunking.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from frobstab.code import Code
from frobstab.errors import ConsistencyError, GuardError
from frobstab.normalforms import CyclicDecomposition, additive_to_vectors
from frobstab.symplectic import symplectic_weight

ENUMERATION_LIMIT = 2**26
CHUNK = 1 << 16


def _check_guard(size: int, force: bool, what: str = "enumeration"):
    if size > ENUMERATION_LIMIT and not force:
        raise GuardError(f"{what} of {size} vectors exceeds the limit {ENUMERATION_LIMIT} (use force)")


def iter_coordinates(decomp: CyclicDecomposition, chunk: int = CHUNK):
    """Additive coordinates of every element, odometer order, in chunks."""
    orders = np.asarray(decomp.orders, dtype=np.int64)
    gens = decomp.group.generators
    mods = np.asarray(decomp.group.moduli, dtype=np.int64)
    total = decomp.order
    radix = np.ones(len(orders), dtype=np.int64)
    for j in range(len(orders) - 2, -1, -1):
        radix[j] = radix[j + 1] * orders[j + 1]
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        if len(orders) == 0:
            yield np.zeros((len(idx), len(mods)), dtype=np.int64)
            continue
        exps = (idx[:, None] // radix) % orders
        yield (exps @ gens) % mods


def coordinate_weights(coords: np.ndarray, n: int, digits: int) -> np.ndarray:
    """Symplectic weight of vectors given in additive coordinates."""
    nz = coords.reshape(len(coords), 2 * n, digits).any(axis=2)
    return (nz[:, :n] | nz[:, n:]).sum(axis=1)


class _MinTracker:
    """Running minimum weight with the lexicographically first witness."""

    def __init__(self, ring, n):
        self.ring, self.n = ring, n
        self.weight = None
        self.witness = None

    def update(self, coords: np.ndarray, weights: np.ndarray):
        if len(weights) == 0:
            return
        w = int(weights.min())
        if self.weight is not None and w > self.weight:
            return
        cand = additive_to_vectors(self.ring, coords[weights == w], 2 * self.n)
        first = cand[np.lexsort(cand.T[::-1])[0]]
        if self.weight is None or w < self.weight or tuple(first) < tuple(self.witness):
            self.weight, self.witness = w, first

    def result(self):
        return self.weight, (None if self.witness is None else self.witness.astype(int).tolist())


def min_distance(C: Code, force: bool = False, early_exit: bool = False):
    """``(d_s(C), witness)`` over the nonzero codewords.

    With ``early_exit`` the scan stops after the first chunk containing a
    weight-1 vector; the value is unchanged but the witness is then only the
    smallest within the scanned prefix.
    """
    if C.is_zero:
        raise ValueError("minimum distance of the zero code is undefined")
    _check_guard(C.cardinality, force)
    digits = len(C.ring.add_orders)
    best = _MinTracker(C.ring, C.n)
    for coords in iter_coordinates(C.decomposition):
        nonzero = coords.any(axis=1)
        best.update(coords[nonzero], coordinate_weights(coords[nonzero], C.n, digits))
        if early_exit and best.weight == 1:
            break
    return best.result()


def min_distance_of_set(vectors) -> int | None:
    """Minimum weight over the nonzero members of an explicit array of vectors."""
    w = symplectic_weight(np.asarray(vectors))
    w = w[w > 0]
    return int(w.min()) if len(w) else None


@dataclass
class DistanceReport:
    ds_code: int | None
    ds_dual: int
    dist: int | None
    pure: bool | None
    self_dual: bool
    witness_code: list | None
    witness_dual: list
    witness_dist: list | None
    enumerated: int
    elapsed: float = field(default=0.0)

    def as_dict(self):
        return {
            "ds_code": self.ds_code, "ds_dual": self.ds_dual, "dist": self.dist,
            "pure": self.pure, "self_dual": self.self_dual,
            "witness_code": self.witness_code, "witness_dual": self.witness_dual,
            "witness_dist": self.witness_dist, "enumerated": self.enumerated,
            "elapsed_s": round(self.elapsed, 6),
        }


def relative_distance(C: Code, force: bool = False) -> DistanceReport:
    """d_s(C), d_s(C^perp) and dist = d_s(C^perp - C) (d_s(C^perp) when self-dual)."""
    t0 = time.perf_counter()
    if not C.is_self_orthogonal():
        raise ValueError("relative distance needs a self-orthogonal code")
    D = C.dual()
    _check_guard(D.cardinality, force)
    ring, n = C.ring, C.n
    digits = len(ring.add_orders)
    self_dual = C.cardinality == D.cardinality
    in_dual = _MinTracker(ring, n)
    outside = _MinTracker(ring, n)
    for coords in iter_coordinates(D.decomposition):
        coords = coords[coords.any(axis=1)]
        w = coordinate_weights(coords, n, digits)
        in_dual.update(coords, w)
        if not self_dual:
            out = ~C.decomposition.group.contains(coords)
            outside.update(coords[out], w[out])
    ds_dual, wit_dual = in_dual.result()
    if ds_dual is None:
        raise ConsistencyError("dual code has no nonzero vector")
    ds_code, wit_code = min_distance(C, force) if not C.is_zero else (None, None)
    if self_dual:
        dist, wit_dist = ds_dual, wit_dual
    else:
        dist, wit_dist = outside.result()
    if dist is not None and dist < ds_dual:
        raise ConsistencyError("relative distance below d_s(C^perp)")
    pure = None if dist is None else dist == ds_dual
    return DistanceReport(ds_code, ds_dual, dist, pure, self_dual, wit_code, wit_dual,
                          wit_dist, D.cardinality, time.perf_counter() - t0)
