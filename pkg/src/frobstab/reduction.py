"""Reduction to the residue field, colon modules and the distance comparisons.

The reduction of ``C`` is ``{residue(v) : v in C}``, the image of ``alpha C``
under ``alpha r -> r + m``. Everything here is checked by set or cardinality
identities as it is computed.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

import numpy as np

from frobstab.code import Code
from frobstab.errors import ConsistencyError
from frobstab.metrics import (CHUNK, _check_guard, _MinTracker, coordinate_weights,
                              iter_coordinates, min_distance, relative_distance)
from frobstab.normalforms import (additive_to_vectors, brute_force_elements,
                                  cyclic_decomposition, module_preimage)
from frobstab.symplectic import symplectic_weight


def reduce_code(C: Code) -> Code:
    """The field code spanned by the residues of ``C``'s generators."""
    ring = C.ring
    field_ring = ring.field
    reduced = Code(field_ring, C.n, ring.residue(C.generators))
    alpha_C = cyclic_decomposition(ring, ring.mul(ring.alpha, C.generators), 2 * C.n, allow_zero=True)
    if reduced.cardinality != alpha_C.order:
        raise ConsistencyError(f"|reduction| = {reduced.cardinality} but |alpha C| = {alpha_C.order}")
    return reduced


def colon_module(C: Code) -> Code:
    """``(C : alpha) = {v : alpha v in C}``."""
    ring = C.ring
    decomp = module_preimage(ring, ring.alpha, C.decomposition)
    colon = Code(ring, C.n, decomp.generators)
    colon.__dict__["decomposition"] = decomp
    return colon


def socle_part(C: Code) -> np.ndarray:
    """All vectors of ``C`` that lie in ``alpha R^{2n}``, by filtering ``alpha R^{2n}``."""
    ring = C.ring
    lifts = ring.lift(brute_force_elements(ring.field, 2 * C.n))
    socle_vectors = ring.mul(ring.alpha, lifts)
    return socle_vectors[C.contains_many(socle_vectors)]


def check_colon_identity(C: Code, colon: Code | None = None) -> bool:
    """``alpha (C:alpha) == C cap alpha R^{2n}`` as sets."""
    ring = C.ring
    colon = colon_module(C) if colon is None else colon
    scaled = Code(ring, C.n, ring.mul(ring.alpha, colon.generators))
    inter = socle_part(C)
    return scaled.cardinality == len(inter) and bool(scaled.contains_many(inter).all())


def _ds(C: Code, force: bool):
    return None if C.is_zero else min_distance(C, force, early_exit=True)[0]


@dataclass
class ReductionReport:
    ring: str
    n: int
    free: bool
    rank: int | None
    self_dual: bool
    ds_code: int | None
    ds_reduced: int | None
    ds_colon_reduced: int | None
    dist_ring: int | None
    dist_field: int | None
    ds_dual: int | None
    ds_reduced_dual: int | None
    reduced_pure: bool | None
    lnk_quantity: int | None
    ds_reduced_dual_minus_reduced: int | None
    dist_est: bool | None
    dist_free: bool | None
    dist_c: bool | None
    dist_c_equality_expected: bool
    notes: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    elapsed: float = 0.0

    def as_dict(self):
        d = asdict(self)
        d["elapsed_s"] = round(d.pop("elapsed"), 6)
        return d


def lnk_quantity(C: Code, force: bool = False) -> int | None:
    """Minimum nonzero weight of ``{residue(v) : v in C^perp - C}`` (None if all reduce to 0)."""
    ring, n = C.ring, C.n
    D = C.dual()
    _check_guard(D.cardinality, force)
    best = None
    for coords in iter_coordinates(D.decomposition):
        coords = coords[~C.decomposition.group.contains(coords)]
        if not len(coords):
            continue
        w = symplectic_weight(ring.residue(additive_to_vectors(ring, coords, 2 * n)))
        w = w[w > 0]
        if len(w):
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


def _difference_distance(big: Code, small: Code, force: bool) -> int | None:
    """Minimum weight over ``big - small``."""
    _check_guard(big.cardinality, force)
    digits = len(big.ring.add_orders)
    tracker = _MinTracker(big.ring, big.n)
    for coords in iter_coordinates(big.decomposition):
        coords = coords[~small.decomposition.group.contains(coords)]
        tracker.update(coords, coordinate_weights(coords, big.n, digits))
    return tracker.result()[0]


def distance_chain_report(C: Code, force: bool = False) -> ReductionReport:
    """All distance quantities of ``C`` and its reduction, with pass/fail verdicts for the known distance relations.

    The estimate ``d_s(C) = d_s(red(C:alpha)) <= d_s(red C)`` is checked for every
    code whose reduction is nonzero; for free codes the equality ``d_s(C) = d_s(red C)``
    and, for free self-orthogonal codes, ``dist_ring <= dist_field`` (with equality
    when ``C`` is self-dual, the reduction is pure, or ``d_s(C) > k``).
    """
    t0 = time.perf_counter()
    ring, n = C.ring, C.n
    notes, violations = [], []
    free = C.is_free()
    reduced = reduce_code(C)
    colon = colon_module(C)
    if not C.issubset(colon):
        violations.append("C is not contained in (C:alpha)")
    if not check_colon_identity(C, colon):
        violations.append("alpha (C:alpha) != C cap alpha R^{2n}")
    ds_code = _ds(C, force)
    ds_reduced = _ds(reduced, force)
    ds_colon_reduced = _ds(reduce_code(colon), force)

    dist_est = None
    if reduced.is_zero:
        notes.append("reduction is zero; distance estimate skipped")
    else:
        dist_est = ds_code == ds_colon_reduced and ds_code <= ds_reduced
        if not dist_est:
            violations.append(f"d_s(C)={ds_code}, d_s(red(C:alpha))={ds_colon_reduced}, d_s(red C)={ds_reduced}")
    dist_free = None
    if free and not C.is_zero:
        dist_free = ds_code == ds_reduced
        if not dist_free:
            violations.append(f"free code with d_s(C)={ds_code} != d_s(red C)={ds_reduced}")

    so = C.is_self_orthogonal()
    dist_ring = dist_field = ds_dual = ds_reduced_dual = reduced_pure = None
    lnk = red_gap = None
    dist_c = None
    equality_expected = False
    self_dual = False
    if so:
        rep = relative_distance(C, force)
        dist_ring, ds_dual, self_dual = rep.dist, rep.ds_dual, rep.self_dual
        rrep = relative_distance(reduced, force)
        dist_field, ds_reduced_dual, reduced_pure = rrep.dist, rrep.ds_dual, rrep.pure
        lnk = lnk_quantity(C, force)
        red_gap = _difference_distance(reduce_code(C.dual()), reduced, force)
        if free:
            dist_c = dist_ring <= dist_field
            if not dist_c:
                violations.append(f"free stabilizer code with dist_ring={dist_ring} > dist_field={dist_field}")
            equality_expected = bool(self_dual or reduced_pure
                                     or (ds_code is not None and ds_code > C.mu))
            if equality_expected and dist_ring != dist_field:
                dist_c = False
                violations.append(f"equality expected but dist_ring={dist_ring}, dist_field={dist_field}")
            if not C.is_zero and ds_dual > C.mu:
                violations.append(f"d_s(C^perp)={ds_dual} exceeds the rank {C.mu}")
        else:
            notes.append("non-free code: no relation between dist_ring and dist_field is asserted")
        if lnk != dist_field:
            notes.append(f"d_s(red(C^perp - C)) = {lnk} differs from dist_field = {dist_field}")
    else:
        notes.append("not self-orthogonal: relative distances skipped")

    return ReductionReport(
        ring=ring.spec, n=n, free=free, rank=C.rank, self_dual=self_dual,
        ds_code=ds_code, ds_reduced=ds_reduced, ds_colon_reduced=ds_colon_reduced,
        dist_ring=dist_ring, dist_field=dist_field, ds_dual=ds_dual,
        ds_reduced_dual=ds_reduced_dual, reduced_pure=reduced_pure,
        lnk_quantity=lnk, ds_reduced_dual_minus_reduced=red_gap,
        dist_est=dist_est, dist_free=dist_free, dist_c=dist_c,
        dist_c_equality_expected=equality_expected, notes=notes,
        violations=violations, elapsed=time.perf_counter() - t0)
