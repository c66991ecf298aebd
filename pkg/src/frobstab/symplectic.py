"""Symplectic form, weight, the pair interleaving and the two elementary isometries.

Vectors in R^{2n} are uint8 arrays laid out as ``(a_1..a_n | b_1..b_n)``.
All functions broadcast over leading axes.
"""

from __future__ import annotations

import numpy as np

from frobstab.ring import LocalRing


def split(v):
    v = np.asarray(v)
    n = v.shape[-1] // 2
    return v[..., :n], v[..., n:]


def symplectic_inner(ring: LocalRing, v, w):
    """``<(a,b),(a',b')> = b.a' - b'.a``."""
    v = np.asarray(v, dtype=np.int64)
    w = np.asarray(w, dtype=np.int64)
    if v.shape[-1] != w.shape[-1] or v.shape[-1] % 2:
        raise ValueError(f"symplectic vectors of lengths {v.shape[-1]} and {w.shape[-1]}")
    a, b = split(v)
    a2, b2 = split(w)
    return ring.sub(ring.dot(b, a2), ring.dot(b2, a))


def symplectic_weight(v) -> np.ndarray:
    """Number of positions ``i`` with ``(a_i, b_i) != (0, 0)``."""
    a, b = split(v)
    return ((a != 0) | (b != 0)).sum(axis=-1)


def gamma(v) -> np.ndarray:
    """``(a_1..a_n | b_1..b_n) -> (a_1, b_1, ..., a_n, b_n)``."""
    a, b = split(v)
    return np.stack([a, b], axis=-1).reshape(np.shape(v))


def gamma_inv(x) -> np.ndarray:
    x = np.asarray(x)
    pairs = x.reshape(x.shape[:-1] + (-1, 2))
    return np.concatenate([pairs[..., 0], pairs[..., 1]], axis=-1)


def apply_tau_sigma(perm, v) -> np.ndarray:
    """``tau_sigma``: new ``a_j`` is old ``a_{perm[j]}`` (same for ``b``); ``perm`` is 0-based."""
    perm = np.asarray(perm, dtype=np.int64)
    a, b = split(v)
    if sorted(perm.tolist()) != list(range(a.shape[-1])):
        raise ValueError(f"{perm.tolist()} is not a permutation of 0..{a.shape[-1] - 1}")
    return np.concatenate([a[..., perm], b[..., perm]], axis=-1)


def apply_tau_i(ring: LocalRing, i: int, v) -> np.ndarray:
    """``tau_i``: ``a_i <- b_i`` and ``b_i <- -a_i`` (0-based ``i``)."""
    v = np.array(v, dtype=np.uint8, copy=True)
    n = v.shape[-1] // 2
    if not 0 <= i < n:
        raise ValueError(f"position {i} outside 0..{n - 1}")
    ai = v[..., i].copy()
    v[..., i] = v[..., n + i]
    v[..., n + i] = ring.neg(ai)
    return v


def apply_trail(ring: LocalRing, trail, v) -> np.ndarray:
    """Apply a sequence of ``("tau_sigma", perm)`` / ``("tau_i", i)`` steps in order."""
    out = np.asarray(v, dtype=np.uint8)
    for kind, arg in trail:
        if kind == "tau_sigma":
            out = apply_tau_sigma(arg, out)
        elif kind == "tau_i":
            out = apply_tau_i(ring, arg, out)
        else:
            raise ValueError(f"unknown isometry step {kind!r}")
    return out
