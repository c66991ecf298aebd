"""SL2-monomial maps, isometry group enumeration for codes, and extension search.

A monomial ``(A_1..A_n; sigma)`` acts on interleaved pairs ``x_i = (a_i, b_i)``
by ``y_j = x_{sigma(j)} A_{sigma(j)}``, i.e. ``gamma(v) diag(A) (P_sigma (x) I_2)``.
Blocks are stored as element-code 4-tuples ``(A[0,0], A[0,1], A[1,0], A[1,1])``
and permutations are 0-based one-line tuples.
"""

from __future__ import annotations

import itertools
import math
import time
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from frobstab.code import Code
from frobstab.errors import ConsistencyError, GuardError
from frobstab.normalforms import cyclic_decomposition
from frobstab.ring import LocalRing, build_ring
from frobstab.symplectic import (apply_tau_i, apply_tau_sigma, gamma, gamma_inv,
                                 symplectic_inner, symplectic_weight)

SL2_RING_LIMIT = 16
MONOMIAL_LIMIT = 2**20
SYMP_CODE_LIMIT = 2**12
SYMP_NODE_LIMIT = 2**20


def _ring(ring) -> LocalRing:
    return build_ring(ring) if isinstance(ring, (str, tuple)) else ring


@lru_cache(maxsize=None)
def _sl2_cached(spec: str) -> np.ndarray:
    ring = build_ring(spec)
    q = ring.q
    a, b, c, d = np.meshgrid(*(np.arange(q),) * 4, indexing="ij")
    a, b, c, d = (x.ravel() for x in (a, b, c, d))
    det = ring.sub(ring.mul(a, d), ring.mul(b, c))
    out = np.stack([a, b, c, d], axis=1)[det == 1].astype(np.uint8)
    out.setflags(write=False)
    return out


def sl2(ring) -> np.ndarray:
    """All of SL2(R) as rows ``(a, b, c, d)``, lexicographic order."""
    ring = _ring(ring)
    if ring.q > SL2_RING_LIMIT:
        raise GuardError(f"SL2 enumeration needs |R| <= {SL2_RING_LIMIT}")
    return _sl2_cached(ring.spec)


def _pair_times(ring: LocalRing, x, blocks):
    """Row pairs ``x`` (..., 2) times 2x2 blocks (..., 4) -> (..., 2)."""
    x0, x1 = x[..., 0], x[..., 1]
    a, b, c, d = (blocks[..., t] for t in range(4))
    return np.stack([ring.add(ring.mul(x0, a), ring.mul(x1, c)),
                     ring.add(ring.mul(x0, b), ring.mul(x1, d))], axis=-1)


@dataclass(frozen=True)
class SL2Monomial:
    ring: LocalRing
    blocks: tuple
    perm: tuple

    def __post_init__(self):
        ring = self.ring
        blocks = tuple(tuple(int(x) for x in A) for A in self.blocks)
        object.__setattr__(self, "blocks", blocks)
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        if sorted(self.perm) != list(range(len(blocks))):
            raise ValueError(f"{self.perm} is not a permutation of the {len(blocks)} positions")
        for a, b, c, d in blocks:
            if int(ring.sub(ring.mul(a, d), ring.mul(b, c))) != 1:
                raise ValueError(f"block {(a, b, c, d)} does not have determinant 1")

    @classmethod
    def identity(cls, ring, n):
        return cls(ring, ((1, 0, 0, 1),) * n, tuple(range(n)))

    @classmethod
    def tau_i(cls, ring, n, i):
        J = (0, int(ring.neg(1)), 1, 0)
        return cls(ring, tuple(J if j == i else (1, 0, 0, 1) for j in range(n)), tuple(range(n)))

    @classmethod
    def tau_sigma(cls, ring, perm):
        return cls(ring, ((1, 0, 0, 1),) * len(perm), tuple(perm))

    @property
    def n(self):
        return len(self.blocks)

    def describe(self):
        return {"perm": [p + 1 for p in self.perm], "blocks": [list(A) for A in self.blocks]}


def apply_monomial(m: SL2Monomial, v) -> np.ndarray:
    v = np.asarray(v, dtype=np.int64)
    n = m.n
    x = gamma(v).reshape(v.shape[:-1] + (n, 2))
    y = _pair_times(m.ring, x, np.asarray(m.blocks, dtype=np.int64))
    y = y[..., list(m.perm), :]
    return gamma_inv(y.reshape(v.shape)).astype(np.uint8)


def monomial_count(ring, n) -> int:
    return len(sl2(ring)) ** n * math.factorial(n)


def preserves_structure(ring: LocalRing, images_of, vectors) -> bool:
    """Weight of every vector and form of every pair preserved by ``images_of``."""
    V = np.asarray(vectors)
    W = images_of(V)
    if (symplectic_weight(V) != symplectic_weight(W)).any():
        return False
    return bool((symplectic_inner(ring, V[:, None], V[None, :])
                 == symplectic_inner(ring, W[:, None], W[None, :])).all())


# --- ambient classification ---

def classify_ambient_isometries(ring, n: int = 1, force: bool = False, samples: int = 200, seed: int = 0) -> dict:
    """Brute-force the R-linear maps of R^2 (n = 1) preserving weight and form.

    For ``n > 1`` only the containment direction is checked: random monomials
    preserve weight and form on random vector pairs.
    """
    ring = _ring(ring)
    t0 = time.perf_counter()
    S = sl2(ring)
    if n == 1:
        if ring.q > 4 and not force:
            raise GuardError("exhaustive classification is limited to |R| <= 4 (use force)")
        q = ring.q
        mats = np.stack(np.meshgrid(*(np.arange(q),) * 4, indexing="ij"), axis=-1).reshape(-1, 4)
        vecs = np.stack(np.meshgrid(np.arange(q), np.arange(q), indexing="ij"), axis=-1).reshape(-1, 2)
        imgs = _pair_times(ring, vecs[None, :, :], mats[:, None, :])      # (maps, vecs, 2)
        w_ok = (symplectic_weight(imgs) == symplectic_weight(vecs)[None, :]).all(axis=1)
        form = symplectic_inner(ring, vecs[:, None], vecs[None, :])
        keep = []
        for idx in np.flatnonzero(w_ok):
            im = imgs[idx]
            if (symplectic_inner(ring, im[:, None], im[None, :]) == form).all():
                keep.append(idx)
        found = {tuple(int(x) for x in mats[i]) for i in keep}
        sl2_set = {tuple(int(x) for x in A) for A in S}
        return {"ring": ring.spec, "n": 1, "linear_maps": len(mats), "isometries": len(found),
                "sl2_order": len(sl2_set), "equal": found == sl2_set,
                "elapsed_s": round(time.perf_counter() - t0, 6)}
    rng = np.random.default_rng(seed)
    ok = True
    for _ in range(samples):
        blocks = S[rng.integers(0, len(S), size=n)]
        m = SL2Monomial(ring, blocks, tuple(rng.permutation(n)))
        V = rng.integers(0, ring.q, size=(16, 2 * n))
        ok &= preserves_structure(ring, lambda X: apply_monomial(m, X), V)
    return {"ring": ring.spec, "n": n, "sampled_monomials": samples, "all_preserve": bool(ok),
            "elapsed_s": round(time.perf_counter() - t0, 6)}


# --- maps on codes ---

class CodeMap:
    """An R-linear map on ``span(sources)`` given by the images of the source rows."""

    def __init__(self, ring, n, sources, images):
        self.ring = _ring(ring)
        self.n = n
        self.sources = np.asarray(sources, dtype=np.uint8).reshape(-1, 2 * n)
        self.images = np.asarray(images, dtype=np.uint8).reshape(-1, 2 * n)
        if self.sources.shape != self.images.shape:
            raise ValueError("sources and images must have the same shape")

    @property
    def domain(self) -> Code:
        return Code(self.ring, self.n, self.sources)

    def graph(self):
        return cyclic_decomposition(self.ring, np.concatenate([self.sources, self.images], axis=1),
                                    4 * self.n, allow_zero=True)

    def is_well_defined(self) -> bool:
        """The graph projects injectively: ``|span{(g, f g)}| = |span{g}|``."""
        return self.graph().order == self.domain.cardinality

    def table(self):
        """All pairs ``(v, f v)`` for ``v`` in the domain."""
        pairs = np.concatenate(list(self.graph().elements()))
        return pairs[:, :2 * self.n], pairs[:, 2 * self.n:]

    def is_isometry(self) -> bool:
        """Well defined, weight preserving on every element, form preserving on generators."""
        if not self.is_well_defined():
            return False
        V, W = self.table()
        if (symplectic_weight(V) != symplectic_weight(W)).any():
            return False
        G, H = self.sources, self.images
        return bool((symplectic_inner(self.ring, G[:, None], G[None, :])
                     == symplectic_inner(self.ring, H[:, None], H[None, :])).all())

    def key(self):
        return self.images.tobytes()


def _monomial_images(ring: LocalRing, rows: np.ndarray, perm, tuples: np.ndarray, S: np.ndarray):
    """Images of ``rows`` under every block tuple (indices into ``S``) for one permutation.

    Returns shape ``(len(tuples), len(rows), 2n)``.
    """
    n = rows.shape[1] // 2
    x = gamma(rows).reshape(len(rows), n, 2)
    # prod[i, s] = x_i A_s for every source block i and SL2 element s
    prod = _pair_times(ring, x[:, None, :, :].transpose(2, 1, 0, 3), S[None, :, None, :])  # (n, |S|, r, 2)
    out = np.empty((len(tuples), len(rows), n, 2), dtype=np.uint8)
    for j in range(n):
        i = perm[j]
        out[:, :, j, :] = prod[i][tuples[:, i]]
    return gamma_inv(out.reshape(len(tuples), len(rows), 2 * n))


def iter_monomials(ring, n, force=False):
    """Every monomial as ``(perm, block-index tuples)`` batches, lexicographic in (perm, A_1..A_n)."""
    S = sl2(ring)
    total = len(S) ** n * math.factorial(n)
    if total > MONOMIAL_LIMIT and not force:
        raise GuardError(f"{total} monomials exceed the limit {MONOMIAL_LIMIT}")
    grid = np.stack(np.meshgrid(*(np.arange(len(S)),) * n, indexing="ij"), axis=-1).reshape(-1, n)
    for perm in itertools.permutations(range(n)):
        yield perm, grid


@dataclass
class GroupListing:
    mode: str
    monomials: list = field(default_factory=list)   # SL2Monomial or CodeMap
    order: int = 0
    distinct_restrictions: int = 0
    searched: int = 0
    elapsed: float = 0.0

    def as_dict(self):
        items = [m.describe() if isinstance(m, SL2Monomial) else m.images.astype(int).tolist()
                 for m in self.monomials]
        return {"mode": self.mode, "order": self.order,
                "distinct_restrictions": self.distinct_restrictions,
                "searched": self.searched, "elapsed_s": round(self.elapsed, 6), "members": items}


def enumerate_monomial_group(C: Code, mode: str = "code", force: bool = False) -> GroupListing:
    """Monomials fixing ``C`` setwise (``mode="code"``), or fixing ``C^perp`` and ``C`` (``"dual"``).

    ``order`` counts distinct restrictions to the domain (``C`` resp. ``C^perp``);
    ``monomials`` lists every monomial that qualifies.
    """
    t0 = time.perf_counter()
    ring, n = C.ring, C.n
    S = sl2(ring)
    domain = C.dual() if mode == "dual" else C
    if mode not in ("code", "dual"):
        raise ValueError(f"unknown mode {mode!r}")
    rows_C = C.generators if len(C.generators) else np.zeros((0, 2 * n), dtype=np.uint8)
    rows_D = domain.generators
    listing = GroupListing(mode=mode)
    restrictions = set()
    for perm, grid in iter_monomials(ring, n, force):
        listing.searched += len(grid)
        ok = np.ones(len(grid), dtype=bool)
        if len(rows_C):
            img = _monomial_images(ring, rows_C, perm, grid, S)
            ok &= C.contains_many(img).all(axis=1)
        if mode == "dual" and len(rows_D):
            img_d = _monomial_images(ring, rows_D, perm, grid[ok], S)
            sub = domain.contains_many(img_d).all(axis=1)
            ok[np.flatnonzero(ok)[~sub]] = False
        idx = np.flatnonzero(ok)
        if len(rows_D) and len(idx):
            imgs = _monomial_images(ring, rows_D, perm, grid[idx], S)
            for t, im in zip(idx, imgs):
                restrictions.add(im.tobytes())
                listing.monomials.append(SL2Monomial(ring, S[grid[t]], perm))
        else:
            for t in idx:
                restrictions.add(b"")
                listing.monomials.append(SL2Monomial(ring, S[grid[t]], perm))
    listing.order = len(restrictions)
    listing.distinct_restrictions = len(restrictions)
    listing.elapsed = time.perf_counter() - t0
    return listing


def enumerate_symp_group(C: Code, mode: str = "code", force: bool = False) -> GroupListing:
    """All symplectic isometries of ``C`` onto itself (``"code"``), or of ``C^perp``
    fixing ``C`` setwise (``"dual"``), by backtracking over images of minimal generators.
    """
    t0 = time.perf_counter()
    if mode not in ("code", "dual"):
        raise ValueError(f"unknown mode {mode!r}")
    ring, n = C.ring, C.n
    domain = C.dual() if mode == "dual" else C
    if domain.cardinality > SYMP_CODE_LIMIT and not force:
        raise GuardError(f"|domain| = {domain.cardinality} exceeds {SYMP_CODE_LIMIT}")
    listing = GroupListing(mode=mode)
    if domain.is_zero:
        listing.monomials.append(CodeMap(ring, n, np.zeros((0, 2 * n)), np.zeros((0, 2 * n))))
        listing.order = listing.distinct_restrictions = 1
        return listing
    _, gens = domain.minimal_generators()
    elements = np.concatenate(list(domain.elements()))
    weights = symplectic_weight(elements)
    gram = symplectic_inner(ring, gens[:, None], gens[None, :])
    ann = [np.array([r for r in range(ring.q) if not ring.mul(r, g).any()], dtype=np.int64) for g in gens]
    cand_form = symplectic_inner(ring, elements[:, None], elements[None, :])  # |C| x |C|
    gens_index = [int(np.flatnonzero((elements == g).all(axis=1))[0]) for g in gens]
    mu = len(gens)
    chosen: list[int] = []

    def search():
        if listing.searched > SYMP_NODE_LIMIT:
            raise GuardError("isometry search exceeded its node budget")
        t = len(chosen)
        if t == mu:
            f = CodeMap(ring, n, gens, elements[chosen])
            if mode == "dual" and len(C.generators):
                V, W = f.table()
                lookup = {v.tobytes(): w for v, w in zip(V, W)}
                imgs = np.array([lookup[np.asarray(g, dtype=np.uint8).tobytes()] for g in C.generators])
                if not C.contains_many(imgs).all():
                    return
            listing.monomials.append(f)
            return
        g_idx = gens_index[t]
        mask = weights == weights[g_idx]
        ann_t = ann[t]
        for c in np.flatnonzero(mask):
            listing.searched += 1
            if any(cand_form[c, chosen[s]] != gram[t, s] for s in range(t)):
                continue
            if len(ann_t) and ring.mul(ann_t[:, None], elements[c][None, :]).any():
                continue
            chosen.append(int(c))
            partial = CodeMap(ring, n, gens[:t + 1], elements[chosen])
            if partial.is_well_defined():
                V, W = partial.table()
                if (symplectic_weight(V) == symplectic_weight(W)).all():
                    search()
            chosen.pop()

    search()
    listing.order = listing.distinct_restrictions = len(listing.monomials)
    listing.elapsed = time.perf_counter() - t0
    return listing


@dataclass
class ExtensionResult:
    found: SL2Monomial | None
    search_space: int
    candidates_checked: int
    compatible_blocks: dict
    elapsed: float

    def as_dict(self):
        return {"found": None if self.found is None else self.found.describe(),
                "search_space": self.search_space, "candidates_checked": self.candidates_checked,
                "elapsed_s": round(self.elapsed, 6)}


def extension_search(f: CodeMap, force: bool = False) -> ExtensionResult:
    """First monomial (lexicographic in (sigma, A_1..A_n)) agreeing with ``f`` on its sources.

    Block ``j`` of an image is ``x_{sigma(j)} A_{sigma(j)}``, so for each (target j,
    source i) pair the admissible ``A`` form a set that is computed once; the
    candidates for ``sigma`` are the product of these sets.
    """
    t0 = time.perf_counter()
    ring, n = f.ring, f.n
    S = sl2(ring)
    total = len(S) ** n * math.factorial(n)
    if total > MONOMIAL_LIMIT and not force:
        raise GuardError(f"{total} monomials exceed the limit {MONOMIAL_LIMIT}")
    X = gamma(f.sources).reshape(len(f.sources), n, 2)
    Y = gamma(f.images).reshape(len(f.images), n, 2)
    compat = {}
    for i in range(n):
        prod = _pair_times(ring, X[:, i, :][None, :, :], S[:, None, :])    # (|S|, r, 2)
        for j in range(n):
            compat[(j, i)] = np.flatnonzero((prod == Y[None, :, j, :]).all(axis=(1, 2))).tolist()
    checked = 0
    for perm in itertools.permutations(range(n)):
        # A_{perm(j)} must lie in compat[(j, perm(j))]; index by source position i
        per_source = [None] * n
        for j in range(n):
            per_source[perm[j]] = compat[(j, perm[j])]
        for choice in itertools.product(*per_source):
            checked += 1
            m = SL2Monomial(ring, S[list(choice)], perm)
            if (apply_monomial(m, f.sources) == f.images).all():
                return ExtensionResult(m, total, checked, compat, time.perf_counter() - t0)
    return ExtensionResult(None, total, checked, compat, time.perf_counter() - t0)


def brute_force_extension(f: CodeMap, force: bool = False) -> list:
    """Every monomial agreeing with ``f`` on its sources, by applying all of them (oracle)."""
    ring = f.ring
    S = sl2(ring)
    found = []
    for perm, grid in iter_monomials(ring, f.n, force):
        imgs = _monomial_images(ring, f.sources, perm, grid, S)
        for t in np.flatnonzero((imgs == f.images[None]).all(axis=(1, 2))):
            found.append(SL2Monomial(ring, S[grid[t]], perm))
    return found


def trail_as_monomials(ring, n, trail):
    """The ``tau`` steps of a standard-form trail as monomials."""
    out = []
    for kind, arg in trail:
        if kind == "tau_i":
            out.append(SL2Monomial.tau_i(ring, n, arg))
        else:
            out.append(SL2Monomial.tau_sigma(ring, arg))
    return out


__all__ = ["SL2Monomial", "CodeMap", "GroupListing", "ExtensionResult", "sl2", "gamma", "gamma_inv",
           "apply_tau_sigma", "apply_tau_i", "apply_monomial", "classify_ambient_isometries",
           "enumerate_monomial_group", "enumerate_symp_group", "extension_search",
           "brute_force_extension", "monomial_count", "trail_as_monomials", "preserves_structure"]
