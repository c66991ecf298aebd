"""Random and exhaustive free stabilizer codes, and the relative-distance comparison harness."""

from __future__ import annotations

import itertools
import json
import time
from dataclasses import dataclass, field

import numpy as np

from frobstab.code import Code, _matmul
from frobstab.errors import ConsistencyError, GuardError
from frobstab.metrics import relative_distance
from frobstab.reduction import reduce_code
from frobstab.ring import LocalRing, build_ring

RNG_NAME = "numpy.random.default_rng/PCG64"
EXHAUSTIVE_LIMIT = 2**16


def _ring(ring) -> LocalRing:
    return build_ring(ring) if isinstance(ring, (str, tuple)) else ring


def systematic_matrix(ring: LocalRing, M, N1, N2) -> np.ndarray:
    k = N1.shape[0]
    return np.concatenate([np.eye(k, dtype=np.int64), M, N1, N2], axis=1).astype(np.uint8)


def _n1_from_symmetric(ring, S, M, N2):
    return ring.sub(S, _matmul(ring, N2, M.T)).astype(np.int64)


def random_free_stabilizer(ring, n: int, k: int, seed: int):
    """A uniformly drawn ``im(I_k | M | N1 | N2)`` with ``N1 + N2 M^T`` symmetric.

    Returns ``(code, {"M", "N1", "N2"})``; fully determined by (ring, n, k, seed).
    """
    ring = _ring(ring)
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    M = rng.integers(0, ring.q, size=(k, n - k))
    N2 = rng.integers(0, ring.q, size=(k, n - k))
    upper = rng.integers(0, ring.q, size=(k, k))
    S = np.triu(upper) + np.triu(upper, 1).T
    N1 = _n1_from_symmetric(ring, S, M, N2)
    C = Code(ring, n, systematic_matrix(ring, M, N1, N2))
    if not C.is_self_orthogonal():
        raise ConsistencyError("constructed systematic code is not self-orthogonal")
    return C, {"M": M.tolist(), "N1": N1.tolist(), "N2": N2.tolist()}


def all_free_stabilizers(ring, n: int, k: int):
    """Every ``im(I_k | M | N1 | N2)`` with ``N1 + N2 M^T`` symmetric, in lexicographic order."""
    ring = _ring(ring)
    free_entries = 2 * k * (n - k) + k * (k + 1) // 2
    if ring.q**free_entries > EXHAUSTIVE_LIMIT:
        raise GuardError(f"{ring.q}^{free_entries} systematic codes exceed {EXHAUSTIVE_LIMIT}")
    iu = np.triu_indices(k)
    for values in itertools.product(range(ring.q), repeat=free_entries):
        v = np.asarray(values, dtype=np.int64)
        m = k * (n - k)
        M = v[:m].reshape(k, n - k)
        N2 = v[m:2 * m].reshape(k, n - k)
        S = np.zeros((k, k), dtype=np.int64)
        S[iu] = v[2 * m:]
        S = S + np.triu(S, 1).T
        N1 = _n1_from_symmetric(ring, S, M, N2)
        yield Code(ring, n, systematic_matrix(ring, M, N1, N2)), {
            "M": M.tolist(), "N1": N1.tolist(), "N2": N2.tolist()}


def compare_relative_distances(C: Code) -> tuple[int, int]:
    """``(dist of C, dist of its reduction)``."""
    return relative_distance(C).dist, relative_distance(reduce_code(C)).dist


@dataclass
class SearchLog:
    records: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def strict(self):
        return [r for r in self.records if r["dist_ring"] < r["dist_field"]]

    @property
    def violations(self):
        return [r for r in self.records if r["dist_ring"] > r["dist_field"]]

    def summary(self):
        return {
            "trials": len(self.records),
            "equalities": sum(r["equal"] for r in self.records),
            "strict": self.strict,
            "violations": self.violations,
            "elapsed_s": round(self.elapsed, 3),
        }

    def jsonl(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.records)


def _record(ring, n, k, seed, matrices, dist_ring, dist_field, rng=RNG_NAME):
    return {"seed": seed, "n": n, "k": k, "ring": ring.spec, "matrices": matrices,
            "dist_ring": int(dist_ring), "dist_field": int(dist_field),
            "equal": bool(dist_ring == dist_field), "rng": rng}


def conjecture_search(ring, n: int, k: int, trials: int, seed: int, log: SearchLog | None = None) -> SearchLog:
    """Compare relative distances of random free stabilizer codes and their reductions.

    Trial ``t`` uses seed ``seed + t``; records come out in trial order.
    """
    ring = _ring(ring)
    log = SearchLog() if log is None else log
    t0 = time.perf_counter()
    for t in range(trials):
        C, mats = random_free_stabilizer(ring, n, k, seed + t)
        dr, df = compare_relative_distances(C)
        log.records.append(_record(ring, n, k, seed + t, mats, dr, df))
    log.elapsed += time.perf_counter() - t0
    return log


def exhaustive_search(ring, n: int, k: int, log: SearchLog | None = None) -> SearchLog:
    """Run the comparison on every systematic free stabilizer code (small sizes only)."""
    ring = _ring(ring)
    if n > 2:
        raise GuardError("exhaustive mode is limited to n <= 2")
    log = SearchLog() if log is None else log
    t0 = time.perf_counter()
    for index, (C, mats) in enumerate(all_free_stabilizers(ring, n, k)):
        dr, df = compare_relative_distances(C)
        log.records.append(_record(ring, n, k, index, mats, dr, df, rng="exhaustive"))
    log.elapsed += time.perf_counter() - t0
    return log


def injected_trial(C: Code, label: str = "injected") -> dict:
    """A harness record for an explicit free stabilizer code."""
    if not (C.is_free() and C.is_self_orthogonal()):
        raise ValueError("injected trials need a free self-orthogonal code")
    dr, df = compare_relative_distances(C)
    return _record(C.ring, C.n, C.mu, None, {"generators": C.generators.tolist()}, dr, df, rng=label)
