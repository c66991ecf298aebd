"""Finite local commutative Frobenius rings with table-driven arithmetic.

Elements are integer codes ``0..q-1``. For ``Z_{p^k}`` the code is the
residue itself; for the characteristic-``p`` families the code is the
base-``p`` digit string of the coefficient vector (lowest monomial first).
All operations are precomputed as ``q x q`` tables, so vectorised numpy
fancy indexing gives the arithmetic on whole arrays of vectors.

The additive character is stored only as an exponent table ``e`` into
``Z_N``: ``chi(r) = omega**e[r]`` for a fixed primitive ``N``-th root of
unity ``omega``.
"""

from __future__ import annotations

import itertools
import re
from functools import lru_cache

import numpy as np

from frobstab.errors import CodeFormatError, FrobeniusError, GuardError

MAX_RING_SIZE = 256


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    return all(p % f for f in range(2, int(p**0.5) + 1))


def _prime_power(q: int) -> tuple[int, int] | None:
    for p in range(2, q + 1):
        if q % p == 0:
            k = 0
            while q % p == 0:
                q //= p
                k += 1
            return (p, k) if q == 1 else None
    return None


# --- polynomial helpers over F_p (coefficient lists, lowest degree first) ---

def _poly_trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _poly_trim(x % p for x in a)
    m = _poly_trim(m)
    inv_lead = pow(m[-1], -1, p)
    while len(a) >= len(m):
        f = a[-1] * inv_lead % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - f * c) % p
        a = _poly_trim(a)
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1 if a and b else 0)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return out


def is_irreducible(modulus, p: int) -> bool:
    """Brute-force irreducibility of a polynomial over ``F_p``."""
    m = _poly_trim(x % p for x in modulus)
    d = len(m) - 1
    if d < 1:
        return False
    for e in range(1, d // 2 + 1):
        for tail in itertools.product(range(p), repeat=e):
            if not _poly_mod(m, list(tail) + [1], p):
                return False
    return True


def first_irreducible(p: int, d: int) -> list[int]:
    for tail in itertools.product(range(p), repeat=d):
        cand = list(reversed(tail)) + [1]
        if is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible polynomial of degree {d} over F_{p}")


def parse_polynomial(text: str, p: int, var: str = "x") -> list[int]:
    """Parse ``x^2+x+1`` style polynomials into a coefficient list."""
    coeffs: dict[int, int] = {}
    text = text.replace(" ", "")
    if not text:
        raise CodeFormatError("empty polynomial")
    for term in text.split("+"):
        m = re.fullmatch(rf"(\d*)\*?({var}(?:\^(\d+))?)?", term)
        if not m or not term:
            raise CodeFormatError(f"bad polynomial term {term!r}")
        coef = int(m.group(1)) if m.group(1) else 1
        if m.group(2) is None:
            if not m.group(1):
                raise CodeFormatError(f"bad polynomial term {term!r}")
            deg = 0
        else:
            deg = int(m.group(3)) if m.group(3) else 1
        if coef >= p:
            raise CodeFormatError(f"coefficient {coef} not in 0..{p - 1}")
        coeffs[deg] = (coeffs.get(deg, 0) + coef) % p
    d = max(coeffs)
    return [coeffs.get(i, 0) for i in range(d + 1)]


def format_polynomial(coeffs, var: str = "x") -> str:
    terms = []
    for i, c in enumerate(coeffs):
        if not c:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if i == 0:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) if terms else "0"


class LocalRing:
    """A fully tabulated finite local commutative Frobenius ring.

    Construct instances with :func:`build_ring` (or the family helpers
    :func:`Zpk`, :func:`GF`, :func:`ChainFpUk`, :func:`F2XY`); the
    constructor only derives the structural data from the tables.
    Instances are immutable after construction.
    """

    def __init__(self, *, spec, family, p, add_orders, mul_table, char_exp,
                 residue_table, field_spec, names):
        self.spec = spec
        self.family = family
        self.p = p
        self.add_orders = tuple(int(m) for m in add_orders)
        self.q = int(np.prod(self.add_orders))
        if self.q > MAX_RING_SIZE:
            raise GuardError(f"ring of size {self.q} exceeds guard {MAX_RING_SIZE}")
        q = self.q
        self.add_bases = tuple(int(np.prod(self.add_orders[:i])) for i in range(len(self.add_orders)))
        # additive generators: the elements whose additive coordinates are unit vectors
        self.additive_generators = self.add_bases

        codes = np.arange(q)
        digits = self.to_additive(codes)
        self.add_table = self.from_additive(digits[:, None, :] + digits[None, :, :]).astype(np.uint8)
        self.neg_table = self.from_additive(-digits).astype(np.uint8)
        self.mul_table = np.asarray(mul_table, dtype=np.uint8)
        self.char = int(np.lcm.reduce(self.add_orders))
        self.N = self.char if self.char % 2 else 2 * self.char
        self.char_exp_table = np.asarray(char_exp, dtype=np.int64) % self.N
        self.names = tuple(names)

        one_rows = self.mul_table == 1
        self.is_unit = one_rows.any(axis=1)
        self.inv_table = np.where(self.is_unit, one_rows.argmax(axis=1), -1)
        self.units = tuple(int(u) for u in codes[self.is_unit])
        self.maximal_ideal = tuple(int(z) for z in codes[~self.is_unit])
        self.maximal_ideal_gens = self._ideal_generators(self.maximal_ideal)
        self.socle_gen = self._find_socle_generator()

        self.residue_table = np.asarray(residue_table, dtype=np.uint8)
        self.field = self if field_spec == spec else build_ring(field_spec)
        lift = np.zeros(self.field.q, dtype=np.uint8)
        for r in range(q - 1, -1, -1):
            lift[self.residue_table[r]] = r
        self.lift_table = lift

        for arr in (self.add_table, self.neg_table, self.mul_table, self.char_exp_table,
                    self.is_unit, self.inv_table, self.residue_table, self.lift_table):
            arr.setflags(write=False)

    def __repr__(self):
        return f"LocalRing({self.spec!r}, q={self.q}, char={self.char}, N={self.N})"

    def __reduce__(self):
        return (build_ring, (self.spec,))

    @property
    def is_field(self) -> bool:
        return len(self.maximal_ideal) == 1

    @property
    def alpha(self) -> int:
        return self.socle_gen

    # --- additive coordinates ---

    def to_additive(self, codes) -> np.ndarray:
        """Digits of ``codes`` in the mixed radix ``add_orders`` (new last axis)."""
        codes = np.asarray(codes, dtype=np.int64)
        bases = np.asarray(self.add_bases, dtype=np.int64)
        mods = np.asarray(self.add_orders, dtype=np.int64)
        return (codes[..., None] // bases) % mods

    def from_additive(self, digits) -> np.ndarray:
        digits = np.asarray(digits, dtype=np.int64)
        bases = np.asarray(self.add_bases, dtype=np.int64)
        mods = np.asarray(self.add_orders, dtype=np.int64)
        return ((digits % mods) * bases).sum(axis=-1)

    # --- elementwise arithmetic (works on scalars and arrays) ---

    def add(self, a, b):
        return self.add_table[a, b]

    def neg(self, a):
        return self.neg_table[a]

    def sub(self, a, b):
        return self.add_table[a, self.neg_table[b]]

    def mul(self, a, b):
        return self.mul_table[a, b]

    def inv(self, u) -> int:
        v = int(self.inv_table[u])
        if v < 0:
            raise ZeroDivisionError(f"{self.name(u)} is not a unit of {self.spec}")
        return v

    def int_mul(self, k: int, a):
        """The additive multiple ``k * a`` for an integer ``k``."""
        return self.from_additive(k * self.to_additive(a)).astype(np.uint8)

    def sum(self, a, axis=-1):
        """Ring sum along ``axis`` (additive coordinates, so one pass)."""
        digits = self.to_additive(a)
        return self.from_additive(digits.sum(axis=axis if axis >= 0 else axis - 1)).astype(np.uint8)

    def dot(self, u, v):
        """Standard dot product along the last axis."""
        return self.sum(self.mul_table[u, v], axis=-1)

    def char_exp(self, r):
        """Exponent ``e(r)`` with ``chi(r) = omega**e(r)``."""
        return self.char_exp_table[r]

    def residue(self, r):
        return self.residue_table[r]

    def lift(self, f):
        return self.lift_table[f]

    def name(self, r) -> str:
        return self.names[int(r)]

    # --- ideal helpers ---

    def ideal(self, gens) -> frozenset[int]:
        """The ideal generated by ``gens`` (additive closure of multiples)."""
        seeds = {int(self.mul_table[g, r]) for g in gens for r in range(self.q)}
        members = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s in seeds:
                y = int(self.add_table[x, s])
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return frozenset(members)

    def annihilator(self, elems) -> frozenset[int]:
        elems = list(elems)
        if not elems:
            return frozenset(range(self.q))
        ok = (self.mul_table[:, elems] == 0).all(axis=1)
        return frozenset(int(r) for r in np.flatnonzero(ok))

    def _ideal_generators(self, ideal_elems) -> tuple[int, ...]:
        target = frozenset(ideal_elems)
        gens: list[int] = []
        current = frozenset({0})
        for z in sorted(target):
            if z not in current:
                gens.append(z)
                current = self.ideal(gens)
            if current == target:
                break
        return tuple(gens)

    def _find_socle_generator(self) -> int:
        ann = self.annihilator(self.maximal_ideal)
        gens = [a for a in sorted(ann - {0}) if self.ideal([a]) == ann]
        # prefer a generator the character sees (in F4, Tr(1) = 0)
        for a in gens:
            if self.char_exp_table[a]:
                return a
        if gens:
            return gens[0]
        raise FrobeniusError(f"{self.spec}: ann(m) is not principal, socle not cyclic")


# --- family constructors ---

def _char_p_ring(spec, family, p, dim, mul_coeffs, char_exp_coeffs, residue, field_spec, namer):
    q = p**dim
    if q > MAX_RING_SIZE:
        raise GuardError(f"ring of size {q} exceeds guard {MAX_RING_SIZE}")
    vecs = [tuple((c // p**i) % p for i in range(dim)) for c in range(q)]
    enc = {v: c for c, v in enumerate(vecs)}
    mul = np.zeros((q, q), dtype=np.uint8)
    for a in range(q):
        for b in range(a, q):
            mul[a, b] = mul[b, a] = enc[tuple(mul_coeffs(vecs[a], vecs[b]))]
    exps = [char_exp_coeffs(v) for v in vecs]
    res = [residue(c, v) for c, v in enumerate(vecs)]
    return LocalRing(spec=spec, family=family, p=p, add_orders=(p,) * dim, mul_table=mul,
                     char_exp=exps, residue_table=res, field_spec=field_spec,
                     names=[namer(v) for v in vecs])


def _build_zpk(p: int, k: int) -> LocalRing:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k < 1:
        raise ValueError("exponent must be >= 1")
    q = p**k
    if q > MAX_RING_SIZE:
        raise GuardError(f"ring of size {q} exceeds guard {MAX_RING_SIZE}")
    codes = np.arange(q)
    n_over_c = 1 if q % 2 else 2
    return LocalRing(spec=f"Z{q}", family="Zpk", p=p, add_orders=(q,),
                     mul_table=np.outer(codes, codes) % q, char_exp=codes * n_over_c,
                     residue_table=codes % p, field_spec=f"Z{p}",
                     names=[str(c) for c in codes])


def _build_gf(p: int, d: int, modulus=None) -> LocalRing:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if d == 1:
        return _build_zpk(p, 1)
    modulus = first_irreducible(p, d) if modulus is None else _poly_trim(list(modulus))
    if len(modulus) != d + 1 or modulus[-1] != 1:
        raise ValueError(f"modulus must be monic of degree {d}")
    if not is_irreducible(modulus, p):
        raise ValueError(f"modulus {format_polynomial(modulus)} is not irreducible over F_{p}")
    spec = f"GF{p**d}:{_format_modulus(modulus)}"

    def mul_coeffs(a, b):
        r = _poly_mod(_poly_mul(a, b, p), modulus, p)
        return r + [0] * (d - len(r))

    def trace(v):
        # Tr(a) = a + a^p + ... + a^(p^(d-1)); lands in the prime field
        a = list(v)
        total = [0] * d
        power = a
        for _ in range(d):
            total = [(x + y) % p for x, y in zip(total, power + [0] * (d - len(power)))]
            acc = [1] + [0] * (d - 1)
            for _ in range(p):
                acc = mul_coeffs(acc, power)
            power = acc
        assert all(c == 0 for c in total[1:]), "trace left the prime field"
        return total[0]

    n_over_c = 1 if p % 2 else 2
    return _char_p_ring(spec, "GF", p, d, mul_coeffs, lambda v: trace(v) * n_over_c,
                        lambda c, v: c, spec, lambda v: format_polynomial(v, "x"))


def _format_modulus(coeffs) -> str:
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        terms.append(str(c) if i == 0 else (mono if c == 1 else f"{c}{mono}"))
    return "+".join(terms)


def _build_chain(p: int, k: int) -> LocalRing:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if k == 1:
        return _build_zpk(p, 1)

    def mul_coeffs(a, b):
        out = [0] * k
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                if i + j < k:
                    out[i + j] = (out[i + j] + x * y) % p
        return out

    n_over_c = 1 if p % 2 else 2
    return _char_p_ring(f"F{p}u{k}", "ChainFpUk", p, k, mul_coeffs,
                        lambda v: v[k - 1] * n_over_c, lambda c, v: v[0], f"Z{p}",
                        lambda v: format_polynomial(v, "u"))


def _build_f2xy() -> LocalRing:
    # basis 1, x, y, xy with x^2 = y^2 = 0
    def mul_coeffs(a, b):
        a0, a1, a2, a3 = a
        b0, b1, b2, b3 = b
        return [a0 * b0 % 2, (a0 * b1 + a1 * b0) % 2, (a0 * b2 + a2 * b0) % 2,
                (a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1) % 2]

    def namer(v):
        terms = [m for m, c in zip(("1", "x", "y", "xy"), v) if c]
        return "+".join(terms) if terms else "0"

    return _char_p_ring("F2XY", "F2XY", 2, 4, mul_coeffs, lambda v: 2 * v[3],
                        lambda c, v: v[0], "Z2", namer)


def Zpk(p: int, k: int = 1) -> LocalRing:
    return build_ring(("Zpk", p, k))


def GF(p: int, d: int, modulus=None) -> LocalRing:
    return build_ring(("GF", p, d, None if modulus is None else tuple(modulus)))


def ChainFpUk(p: int, k: int) -> LocalRing:
    return build_ring(("ChainFpUk", p, k))


def F2XY() -> LocalRing:
    return build_ring(("F2XY",))


def parse_ring_spec(text: str) -> tuple:
    """Translate a spec string (``Z4``, ``GF4:x^2+x+1``, ``F2u2``, ``F2XY``...)."""
    s = text.strip()
    if s == "F2XY":
        return ("F2XY",)
    m = re.fullmatch(r"Z(\d+)", s)
    if m:
        pk = _prime_power(int(m.group(1)))
        if pk is None:
            raise CodeFormatError(f"Z{m.group(1)}: modulus is not a prime power (ring not local)")
        return ("Zpk", *pk)
    m = re.fullmatch(r"F(\d+)u(\d+)", s)
    if m:
        return ("ChainFpUk", int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"F(\d+)", s)
    if m:
        return ("Zpk", int(m.group(1)), 1)
    m = re.fullmatch(r"GF(\d+)(?::(.+))?", s)
    if m:
        pk = _prime_power(int(m.group(1)))
        if pk is None:
            raise CodeFormatError(f"GF{m.group(1)}: order is not a prime power")
        p, d = pk
        modulus = None if m.group(2) is None else tuple(parse_polynomial(m.group(2), p))
        if modulus is not None and len(modulus) - 1 != d:
            raise CodeFormatError(f"modulus degree {len(modulus) - 1} does not match GF{p**d}")
        return ("GF", p, d, modulus)
    raise CodeFormatError(f"unknown ring spec {text!r}")


@lru_cache(maxsize=None)
def _build_cached(desc: tuple) -> LocalRing:
    kind, *args = desc
    if kind == "Zpk":
        return _build_zpk(*args)
    if kind == "GF":
        return _build_gf(*args)
    if kind == "ChainFpUk":
        return _build_chain(*args)
    if kind == "F2XY":
        return _build_f2xy()
    raise ValueError(f"unknown ring family {kind!r}")


def build_ring(spec) -> LocalRing:
    """Build (and cache) a ring from a spec string or family tuple."""
    desc = parse_ring_spec(spec) if isinstance(spec, str) else tuple(spec)
    return _build_cached(desc)


# --- verification ---

def _fail(axiom: str, detail: str):
    raise FrobeniusError(f"{axiom}: {detail}")


def verify_frobenius(ring: LocalRing) -> dict:
    """Exhaustively check the ring, locality, socle, character and residue axioms.

    Returns a report dict; raises :class:`FrobeniusError` naming the first
    violated axiom.
    """
    q, A, M = ring.q, ring.add_table.astype(np.int64), ring.mul_table.astype(np.int64)
    r = np.arange(q)

    # commutative ring with identity
    if not (A == A.T).all() or not (M == M.T).all():
        _fail("commutativity", "operation table not symmetric")
    if not (A[0] == r).all() or not (M[1] == r).all():
        _fail("identity", "0 or 1 is not neutral")
    assoc_add = A[A[:, :, None], r[None, None, :]] == A[r[:, None, None], A[None, :, :]]
    if not assoc_add.all():
        _fail("associativity", "addition not associative")
    assoc_mul = M[M[:, :, None], r[None, None, :]] == M[r[:, None, None], M[None, :, :]]
    if not assoc_mul.all():
        _fail("associativity", "multiplication not associative")
    distrib = M[r[:, None, None], A[None, :, :]] == A[M[:, :, None], M[:, None, :]]
    if not distrib.all():
        _fail("distributivity", "a(b+c) != ab+ac")

    # locality: the non-units form an ideal
    m = np.asarray(ring.maximal_ideal)
    in_m = ~ring.is_unit
    if not in_m[A[np.ix_(m, m)]].all() or not in_m[M[np.ix_(m, r)]].all():
        _fail("locality", "non-units do not form an ideal")
    if set(ring.ideal(ring.maximal_ideal_gens)) != set(ring.maximal_ideal):
        _fail("locality", "listed generators do not generate the maximal ideal")

    # socle
    alpha = ring.socle_gen
    if alpha == 0:
        _fail("socle", "alpha = 0")
    if (M[alpha, m] != 0).any():
        _fail("socle", "alpha does not annihilate the maximal ideal")
    if ring.annihilator([alpha]) != frozenset(ring.maximal_ideal):
        _fail("socle", "ann(alpha) != m")
    soc = ring.ideal([alpha])
    if ring.annihilator(ring.maximal_ideal) != soc:
        _fail("socle", "ann(m) != alpha R")
    for x in range(1, q):
        if alpha not in ring.ideal([x]):
            _fail("socle", f"ideal ({ring.name(x)}) misses alpha; socle not the unique minimal ideal")

    # character
    e = ring.char_exp_table
    N = ring.N
    if not ((e[A] - e[:, None] - e[None, :]) % N == 0).all():
        _fail("character", "e(r+s) != e(r)+e(s)")
    if (e % (N // ring.char)).any():
        _fail("character", "chi takes values outside the char-th roots of unity")
    if e[alpha] == 0:
        _fail("character not generating", "e(alpha) = 0, ker chi contains the socle")
    for x in range(1, q):
        vals = e[M[x]]
        counts = np.bincount(vals, minlength=N)
        image = counts[counts > 0]
        if len(image) < 2 or (image != image[0]).any():
            _fail("character orthogonality", f"sum of chi({ring.name(x)} s) over s is not 0")

    # residue map
    F = ring.field
    res = ring.residue_table.astype(np.int64)
    if not (res[A] == F.add_table[res[:, None], res[None, :]]).all() or \
            not (res[M] == F.mul_table[res[:, None], res[None, :]]).all() or res[1] != 1:
        _fail("residue", "residue map is not a ring homomorphism")
    if set(np.flatnonzero(res == 0).tolist()) != set(ring.maximal_ideal):
        _fail("residue", "kernel of the residue map is not m")
    if not (res[ring.lift_table] == np.arange(F.q)).all():
        _fail("residue", "residue o lift != id")
    if F.q * len(ring.maximal_ideal) != q:
        _fail("residue", "|F| != q/|m|")

    return {
        "ring": ring.spec,
        "q": q,
        "char": ring.char,
        "N": ring.N,
        "alpha": alpha,
        "maximal_ideal_size": len(ring.maximal_ideal),
        "maximal_ideal_gens": list(ring.maximal_ideal_gens),
        "residue_field": F.spec,
        "checks": ["commutative ring", "locality", "socle", "generating character",
                   "character orthogonality", "residue homomorphism"],
        "ok": True,
    }


def corrupted_copy(ring: LocalRing, char_exp) -> LocalRing:
    """A copy of ``ring`` with a different character table (for negative tests)."""
    clone = object.__new__(LocalRing)
    clone.__dict__.update(ring.__dict__)
    table = np.asarray(char_exp, dtype=np.int64) % ring.N
    table.setflags(write=False)
    clone.char_exp_table = table
    return clone
