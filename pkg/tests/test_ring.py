import cmath

import numpy as np
import pytest

from frobstab.errors import CodeFormatError, FrobeniusError, GuardError
from frobstab.ring import build_ring, corrupted_copy, parse_ring_spec, verify_frobenius

SPECS = ["Z2", "Z3", "Z4", "Z8", "Z9", "GF4:x^2+x+1", "GF8", "GF9", "F2u2", "F3u2", "F2u3", "F2XY"]


def principal_ideals(ring):
    return [frozenset(int(x) for x in ring.mul_table[g]) for g in range(1, ring.q)]


@pytest.mark.parametrize("spec", SPECS)
def test_every_instance_verifies(spec):
    report = verify_frobenius(build_ring(spec))
    assert report["q"] == build_ring(spec).q


@pytest.mark.parametrize("spec", SPECS)
def test_socle_is_the_unique_minimal_ideal(spec):
    ring = build_ring(spec)
    common = frozenset.intersection(*principal_ideals(ring))
    # every nonzero ideal contains a nonzero principal one, so the minimal ideal is this intersection
    assert common == frozenset(int(x) for x in ring.mul_table[ring.alpha])
    assert ring.alpha != 0


@pytest.mark.parametrize("spec", SPECS)
def test_locality_and_annihilators(spec):
    ring = build_ring(spec)
    nonunits = [r for r in range(ring.q) if not any(ring.mul(r, s) == 1 for s in range(ring.q))]
    assert sorted(ring.maximal_ideal) == nonunits
    # non-units are closed under addition
    for a in nonunits:
        for b in nonunits:
            assert int(ring.add(a, b)) in nonunits
    ann_alpha = [r for r in range(ring.q) if ring.mul(r, ring.alpha) == 0]
    assert ann_alpha == nonunits
    assert all(ring.mul(ring.alpha, z) == 0 for z in nonunits)


@pytest.mark.parametrize("spec", SPECS)
def test_character_properties(spec):
    ring = build_ring(spec)
    e = ring.char_exp_table
    for r in range(ring.q):
        for s in range(ring.q):
            assert e[ring.add(r, s)] == (e[r] + e[s]) % ring.N
    assert (e % (ring.N // ring.char) == 0).all()
    assert e[ring.alpha] != 0
    # sum over s of omega^{e(rs)} vanishes for r != 0
    omega = cmath.exp(2j * cmath.pi / ring.N)
    for r in range(1, ring.q):
        total = sum(omega ** int(e[ring.mul(r, s)]) for s in range(ring.q))
        assert abs(total) < 1e-9


@pytest.mark.parametrize("spec", SPECS)
def test_residue_map(spec):
    ring = build_ring(spec)
    F = ring.field
    res = ring.residue_table
    for r in range(ring.q):
        for s in range(ring.q):
            assert res[ring.add(r, s)] == F.add(res[r], res[s])
            assert res[ring.mul(r, s)] == F.mul(res[r], res[s])
    assert sorted(r for r in range(ring.q) if res[r] == 0) == sorted(ring.maximal_ideal)
    assert all(res[ring.lift(f)] == f for f in range(F.q))
    assert F.q == ring.q // len(ring.maximal_ideal)


def test_group_orders():
    z4 = build_ring("Z4")
    assert (z4.q, z4.char, z4.N) == (4, 4, 8)
    f4 = build_ring("GF4:x^2+x+1")
    assert (f4.char, f4.N) == (2, 4)
    assert f4.char_exp(1) == 0 and f4.char_exp(f4.alpha) == 2
    assert build_ring("Z9").N == 9
    assert build_ring("Z3").alpha == 1
    assert build_ring("Z8").alpha == 4


def test_f2xy_socle():
    ring = build_ring("F2XY")
    assert ring.name(ring.alpha) == "xy"
    assert len(ring.maximal_ideal) == 8
    assert ring.N == 4


def test_char_exp_values():
    z4 = build_ring("Z4")
    # chi(1) = i = exp(2 pi i / 4) = omega_8^2
    assert cmath.isclose(cmath.exp(2j * cmath.pi / 4), cmath.exp(2j * cmath.pi * z4.char_exp(1) / 8))
    assert z4.char_exp(0) == 0


def test_residue_examples():
    z8 = build_ring("Z8")
    assert z8.residue(6) == 0 and z8.residue(5) == 1
    assert build_ring("Z4").residue(2) == 0
    f2xy = build_ring("F2XY")
    one_plus_xy = int(f2xy.add(1, f2xy.alpha))
    assert f2xy.residue(one_plus_xy) == 1


def test_corrupted_character_is_rejected():
    ring = build_ring("Z4")
    bad = np.zeros(ring.q, dtype=np.int64)
    with pytest.raises(FrobeniusError, match="character not generating"):
        verify_frobenius(corrupted_copy(ring, bad))


def test_bad_specs():
    with pytest.raises(CodeFormatError):
        parse_ring_spec("Z6")
    with pytest.raises(CodeFormatError):
        parse_ring_spec("Q7")
    with pytest.raises((ValueError, CodeFormatError)):
        build_ring("GF4:x^2+1")  # reducible over F2
    with pytest.raises(GuardError):
        build_ring("Z512")
