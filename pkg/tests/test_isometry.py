import itertools
import math

import numpy as np
import pytest

from frobstab.code import Code, standard_form
from frobstab.errors import GuardError
from frobstab.isometry import (CodeMap, SL2Monomial, apply_monomial, brute_force_extension,
                               classify_ambient_isometries, enumerate_monomial_group,
                               enumerate_symp_group, extension_search, monomial_count,
                               preserves_structure, sl2, trail_as_monomials)
from frobstab.normalforms import brute_force_elements
from frobstab.ring import build_ring
from frobstab.symplectic import (apply_tau_i, apply_tau_sigma, apply_trail, gamma, gamma_inv,
                                 symplectic_inner, symplectic_weight)

from conftest import G1_NONEXT, G2_NONEXT, G_SELF_ORTH


def test_gamma_roundtrip():
    v = np.array([1, 2, 3, 4, 5, 6])
    assert gamma(v).tolist() == [1, 4, 2, 5, 3, 6]
    assert gamma_inv(gamma(v)).tolist() == v.tolist()


def test_tau_moves_preserve_structure(z4):
    pairs = brute_force_elements(z4, 4)
    assert len(pairs) == 256
    for i in range(2):
        assert preserves_structure(z4, lambda X: apply_tau_i(z4, i, X), pairs)
    assert preserves_structure(z4, lambda X: apply_tau_sigma([1, 0], X), pairs)


def test_tau_moves_are_monomials(z4):
    V = brute_force_elements(z4, 4)
    for i in range(2):
        assert (apply_monomial(SL2Monomial.tau_i(z4, 2, i), V) == apply_tau_i(z4, i, V)).all()
    assert (apply_monomial(SL2Monomial.tau_sigma(z4, (1, 0)), V) == apply_tau_sigma([1, 0], V)).all()
    perm = (2, 0, 1)
    W = brute_force_elements(build_ring("Z2"), 6)
    assert (apply_monomial(SL2Monomial.tau_sigma(build_ring("Z2"), perm), W) == apply_tau_sigma(perm, W)).all()


def test_monomial_rejects_bad_blocks(z4):
    with pytest.raises(ValueError):
        SL2Monomial(z4, ((1, 1, 1, 1),), (0,))
    with pytest.raises(ValueError):
        SL2Monomial(z4, ((1, 0, 0, 1),), (1,))


@pytest.mark.parametrize("spec,count", [("Z2", 6), ("Z3", 24), ("Z4", 48)])
def test_classify_n1(spec, count):
    out = classify_ambient_isometries(spec)
    assert out["isometries"] == out["sl2_order"] == count
    assert out["equal"]


def test_classify_n2_sampled():
    assert classify_ambient_isometries("Z4", n=2, samples=50)["all_preserve"]


def test_classify_guard():
    with pytest.raises(GuardError):
        classify_ambient_isometries("Z8")


def test_sl2_orders():
    assert len(sl2("Z2")) == 6
    assert len(sl2("Z4")) == 48
    assert len(sl2("GF4:x^2+x+1")) == 60
    assert monomial_count("Z2", 4) == 6**4 * 24 == 31104


@pytest.mark.parametrize("spec", ["Z4", "F2u2", "F2XY"])
def test_random_monomials_preserve_structure(spec):
    ring = build_ring(spec)
    S = sl2(ring)
    rng = np.random.default_rng(2)
    for _ in range(20):
        m = SL2Monomial(ring, S[rng.integers(0, len(S), 3)], tuple(rng.permutation(3)))
        V = rng.integers(0, ring.q, size=(30, 6))
        assert preserves_structure(ring, lambda X: apply_monomial(m, X), V)


def test_trail_matches_monomials(z8):
    G = np.array(G_SELF_ORTH)[:, [2, 1, 0, 5, 4, 3]]
    sf = standard_form(Code(z8, 3, G))
    V = np.random.default_rng(0).integers(0, 8, size=(500, 6))
    out = V.astype(np.uint8)
    for m in trail_as_monomials(z8, 3, sf.trail):
        out = apply_monomial(m, out)
    assert (out == apply_trail(z8, sf.trail, V)).all()


def test_monomial_group_of_full_and_zero_code():
    z2 = build_ring("Z2")
    full = enumerate_monomial_group(Code.full(z2, 2))
    assert len(full.monomials) == 6**2 * 2
    zero = enumerate_monomial_group(Code.zero(z2, 2))
    assert len(zero.monomials) == monomial_count(z2, 2)


def test_monomial_group_inside_symp_group():
    z2 = build_ring("Z2")
    C = Code(z2, 4, G1_NONEXT)
    mon = enumerate_monomial_group(C)
    assert mon.order == 32
    symp = enumerate_symp_group(C)
    assert symp.order == 64
    keys = {f.table()[1][np.lexsort(f.table()[0].T[::-1])].tobytes() for f in symp.monomials}
    elems = np.concatenate(list(C.elements()))
    order = np.lexsort(elems.T[::-1])
    for m in mon.monomials:
        assert apply_monomial(m, elems[order]).tobytes() in keys


def test_symp_group_small():
    z2 = build_ring("Z2")
    listing = enumerate_symp_group(Code(z2, 1, [[1, 1]]))
    assert listing.order == 1


def test_non_extension_example():
    z2 = build_ring("Z2")
    f = CodeMap(z2, 4, G1_NONEXT, G2_NONEXT)
    assert f.is_well_defined() and f.is_isometry()
    res = extension_search(f)
    assert res.found is None and res.search_space == 31104
    assert brute_force_extension(f) == []


def test_extension_found_matches_brute_force():
    z2 = build_ring("Z2")
    f = CodeMap(z2, 1, [[1, 1]], [[1, 1]])
    res = extension_search(f)
    assert res.found is not None
    assert (apply_monomial(res.found, f.sources) == f.images).all()
    brute = brute_force_extension(f)
    assert res.found == brute[0]
    rng = np.random.default_rng(4)
    z4 = build_ring("Z4")
    S = sl2(z4)
    for _ in range(5):
        m = SL2Monomial(z4, S[rng.integers(0, len(S), 2)], tuple(rng.permutation(2)))
        src = rng.integers(0, 4, size=(2, 4))
        g = CodeMap(z4, 2, src, apply_monomial(m, src))
        res = extension_search(g)
        assert res.found is not None
        assert res.found == brute_force_extension(g)[0]
