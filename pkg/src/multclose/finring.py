"""Finite commutative rings as F_p-algebras with structure constants.

A FiniteRing stores the multiplication table of a fixed basis; the
constructor checks commutativity, associativity and the unit law on all
basis tuples, so invalid tables are rejected eagerly.  chain_ring builds
the local principal ideal rings GF(p^f)[x]/(x^e) and product_ring glues
them block-diagonally; together they realize every finite commutative
principal ideal ring that occurs as a conductor quotient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .bounds import Bounds, default_bounds
from .errors import InputError, InternalError
from .linalg import (
    FpVec,
    Subspace,
    Vec,
    coords_of,
    full_subspace,
    nullspace,
    rref,
    subspace_contains,
    vec_add,
    vec_scale,
    zero_subspace,
)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise InputError(f"{p} is not prime")


# -- polynomial helpers over F_p (coefficient lists, low degree first) --


def _poly_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mul(p: int, a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return _poly_trim(out)


def _poly_mod(p: int, a: list[int], m: list[int]) -> list[int]:
    # m monic
    a = a[:]
    while len(a) >= len(m):
        c = a[-1]
        if c:
            shift = len(a) - len(m)
            for i, mi in enumerate(m):
                a[shift + i] = (a[shift + i] - c * mi) % p
        a.pop()
    return _poly_trim(a)


def _monic_polys(p: int, deg: int):
    for tail in product(range(p), repeat=deg):
        yield list(tail) + [1]


def _is_irreducible(p: int, poly: list[int]) -> bool:
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for div in _monic_polys(p, d):
            if not _poly_mod(p, poly, div):
                return False
    return True


@lru_cache(maxsize=None)
def min_irreducible(p: int, f: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree f over F_p,
    coefficients compared low-degree-first.  Used to pin GF(p^f)."""
    _require_prime(p)
    if f == 1:
        return (0, 1)
    for poly in _monic_polys(p, f):
        if _is_irreducible(p, poly):
            return tuple(poly)
    raise InternalError(f"no irreducible of degree {f} over F_{p}")


@dataclass(frozen=True)
class FiniteRing:
    """A finite commutative F_p-algebra given by structure constants.

    mul_table[i][j] is the coordinate vector of e_i * e_j.
    """

    p: int
    dim: int
    mul_table: tuple[tuple[Vec, ...], ...]
    one: Vec
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        _require_prime(self.p)
        if self.dim < 1:
            raise InputError("the zero ring is not supported (need 1 != 0)")
        if len(self.mul_table) != self.dim or any(
            len(row) != self.dim for row in self.mul_table
        ):
            raise InputError("multiplication table has wrong shape")
        if len(self.one) != self.dim:
            raise InputError("unit vector has wrong length")
        if not any(self.one):
            raise InputError("unit vector is zero")
        if self.labels is not None and len(self.labels) != self.dim:
            raise InputError("label count does not match dimension")
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.mul_table[i][j] != self.mul_table[j][i]:
                    raise InputError(
                        f"table is not commutative at basis pair ({i},{j})"
                    )
        for i in range(self.dim):
            if self.mul(self.one, self.basis_vec(i)) != self.basis_vec(i):
                raise InputError(f"unit law fails on basis element {i}")
        for i in range(self.dim):
            for j in range(self.dim):
                ij = self.mul_table[i][j]
                for k in range(self.dim):
                    left = self.mul(ij, self.basis_vec(k))
                    right = self.mul(self.basis_vec(i), self.mul_table[j][k])
                    if left != right:
                        raise InputError(
                            f"associativity fails on basis triple ({i},{j},{k})"
                        )

    def basis_vec(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def zero(self) -> Vec:
        return (0,) * self.dim

    def mul(self, u, v) -> Vec:
        u = coords_of(u, self.p)
        v = coords_of(v, self.p)
        out = [0] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                c = (ui * vj) % self.p
                for k, t in enumerate(self.mul_table[i][j]):
                    if t:
                        out[k] = (out[k] + c * t) % self.p
        return tuple(out)

    def mul_matrix(self, g) -> tuple[Vec, ...]:
        """Rows are e_i * g; multiplication by g acts as v |-> v @ M."""
        g = coords_of(g, self.p)
        return tuple(self.mul(self.basis_vec(i), g) for i in range(self.dim))

    def elements(self):
        return product(range(self.p), repeat=self.dim)

    def size(self) -> int:
        return self.p ** self.dim

    def element(self, v) -> FpVec:
        return FpVec(self.p, coords_of(v, self.p))

    def format_element(self, v) -> str:
        v = coords_of(v, self.p)
        if not any(v):
            return "0"
        labels = self.labels or tuple(f"e{i}" for i in range(self.dim))
        terms = []
        for c, lbl in zip(v, labels):
            if not c:
                continue
            if c == 1 and lbl != "1":
                terms.append(lbl)
            elif lbl == "1":
                terms.append(str(c))
            else:
                terms.append(f"{c}*{lbl}")
        return "+".join(terms)

    def format_subspace(self, s: Subspace) -> str:
        if s.is_zero():
            return "0"
        return "span{" + ",".join(self.format_element(r) for r in s.rows) + "}"


def is_unit(ring: FiniteRing, v) -> bool:
    """True iff multiplication by v is a bijection of the ring."""
    mat = ring.mul_matrix(v)
    return rref(mat, p=ring.p, dim=ring.dim).rank == ring.dim


def chain_ring(
    p: int, f: int, e: int, bounds: Bounds | None = None
) -> FiniteRing:
    """GF(p^f)[x]/(x^e) as an F_p-algebra of dimension f*e.

    Basis is w^a x^b (0 <= a < f, 0 <= b < e) ordered x-degree major, so
    an element is a unit iff its first f coordinates are not all zero.
    w is a root of the deterministically chosen irreducible polynomial
    of min_irreducible(p, f); x is nilpotent of order e.
    """
    _require_prime(p)
    if f < 1 or e < 1:
        raise InputError(f"chain ring needs f >= 1 and e >= 1, got ({f},{e})")
    dim = f * e
    (bounds or default_bounds()).check_ring(p, dim)
    irr = list(min_irreducible(p, f))

    def idx(a: int, b: int) -> int:
        return b * f + a

    table = [[None] * dim for _ in range(dim)]
    for a, b in product(range(f), range(e)):
        for c, d in product(range(f), range(e)):
            out = [0] * dim
            if b + d < e:
                w_pow = [0] * (a + c) + [1]
                red = _poly_mod(p, w_pow, irr)
                for t, coef in enumerate(red):
                    out[idx(t, b + d)] = coef
            table[idx(a, b)][idx(c, d)] = tuple(out)
    one = tuple(1 if k == 0 else 0 for k in range(dim))

    def label(a: int, b: int) -> str:
        wpart = "" if a == 0 else ("w" if a == 1 else f"w^{a}")
        xpart = "" if b == 0 else ("x" if b == 1 else f"x^{b}")
        if wpart and xpart:
            return f"{wpart}*{xpart}"
        return wpart or xpart or "1"

    labels = tuple(label(a, b) for b in range(e) for a in range(f))
    return FiniteRing(p, dim, tuple(tuple(r) for r in table), one, labels)


def product_ring(
    factors: list[FiniteRing], bounds: Bounds | None = None
) -> FiniteRing:
    """Direct product with block-diagonal multiplication."""
    if not factors:
        raise InputError("product of zero factors is the zero ring")
    p = factors[0].p
    if any(r.p != p for r in factors):
        raise InputError("product factors have mixed characteristic")
    if len(factors) == 1:
        return factors[0]
    dim = sum(r.dim for r in factors)
    (bounds or default_bounds()).check_ring(p, dim)
    offsets = []
    off = 0
    for r in factors:
        offsets.append(off)
        off += r.dim

    def embed(t: int, v: Vec) -> Vec:
        out = [0] * dim
        for k, c in enumerate(v):
            out[offsets[t] + k] = c
        return tuple(out)

    table = [[(0,) * dim] * dim for _ in range(dim)]
    for t, r in enumerate(factors):
        for i in range(r.dim):
            for j in range(r.dim):
                table[offsets[t] + i][offsets[t] + j] = embed(
                    t, r.mul_table[i][j]
                )
    one = tuple(
        sum(embed(t, r.one)[k] for t, r in enumerate(factors)) % p
        for k in range(dim)
    )
    labels = tuple(
        f"{lbl}[{t}]"
        for t, r in enumerate(factors)
        for lbl in (r.labels or tuple(f"e{i}" for i in range(r.dim)))
    )
    return FiniteRing(p, dim, tuple(tuple(row) for row in table), one, labels)


@dataclass(frozen=True)
class RingExtension:
    """A pair A <= B, with A given by a canonical basis inside B."""

    ring: FiniteRing
    subring: Subspace

    def __post_init__(self):
        B = self.ring
        S = self.subring
        if S.p != B.p or S.dim != B.dim:
            raise InputError("subring basis does not match the ambient ring")
        if not S.contains_vec(B.one):
            raise InputError("subring does not contain the unit")
        for u in S.rows:
            for v in S.rows:
                if not S.contains_vec(B.mul(u, v)):
                    raise InputError("subring basis is not closed under products")

    @property
    def subring_basis(self) -> tuple[FpVec, ...]:
        return tuple(FpVec(self.ring.p, r) for r in self.subring.rows)

    def is_trivial(self) -> bool:
        """True when A = B."""
        return self.subring.rank == self.ring.dim


def prime_diagonal_extension(ring: FiniteRing) -> RingExtension:
    """The extension with A = F_p . 1."""
    return RingExtension(ring, rref([ring.one], p=ring.p, dim=ring.dim))


def full_extension(ring: FiniteRing) -> RingExtension:
    """The extension A = B (submodules become ideals)."""
    return RingExtension(ring, full_subspace(ring.p, ring.dim))


def generated_subring(ring: FiniteRing, gens) -> RingExtension:
    """Smallest unital subring containing the generators."""
    vecs = [ring.one] + [coords_of(g, ring.p) for g in gens]
    span = rref(vecs, p=ring.p, dim=ring.dim)
    while True:
        prods = [
            ring.mul(u, v) for u in span.rows for v in span.rows
        ]
        bigger = rref(list(span.rows) + prods, p=ring.p, dim=ring.dim)
        if bigger.rank == span.rank:
            return RingExtension(ring, span)
        span = bigger


@dataclass(frozen=True)
class RingSurjection:
    """A surjective ring homomorphism, stored as the matrix of basis
    images; row i is the image of source basis vector e_i."""

    source: FiniteRing
    target: FiniteRing
    matrix: tuple[Vec, ...]

    def __post_init__(self):
        src, tgt = self.source, self.target
        if src.p != tgt.p:
            raise InputError("homomorphism across different characteristics")
        if len(self.matrix) != src.dim or any(
            len(r) != tgt.dim for r in self.matrix
        ):
            raise InputError("homomorphism matrix has wrong shape")
        if self.apply(src.one) != tgt.one:
            raise InputError("map does not send one to one")
        for i in range(src.dim):
            for j in range(src.dim):
                lhs = self.apply(src.mul_table[i][j])
                rhs = tgt.mul(self.matrix[i], self.matrix[j])
                if lhs != rhs:
                    raise InputError(
                        f"map is not multiplicative on basis pair ({i},{j})"
                    )
        if rref(self.matrix, p=tgt.p, dim=tgt.dim).rank != tgt.dim:
            raise InputError("map is not surjective")

    def apply(self, v) -> Vec:
        v = coords_of(v, self.source.p)
        out = (0,) * self.target.dim
        for c, row in zip(v, self.matrix):
            if c:
                out = vec_add(self.target.p, out, vec_scale(self.target.p, c, row))
        return out

    @property
    def kernel(self) -> Subspace:
        cols = [
            tuple(self.matrix[i][k] for i in range(self.source.dim))
            for k in range(self.target.dim)
        ]
        return nullspace(self.source.p, cols, self.source.dim)

    def image(self, s: Subspace) -> Subspace:
        return rref(
            [self.apply(r) for r in s.rows], p=self.target.p, dim=self.target.dim
        )

    def preimage(self, s: Subspace) -> Subspace:
        """{v : phi(v) in s}, as a canonical subspace of the source."""
        p, n = self.source.p, self.source.dim
        constraints = []
        for k in range(self.target.dim):
            col = tuple(
                s.reduce(self.matrix[i])[k] for i in range(n)
            )
            constraints.append(col)
        return nullspace(p, constraints, n)


def identity_surjection(ring: FiniteRing) -> RingSurjection:
    mat = tuple(ring.basis_vec(i) for i in range(ring.dim))
    return RingSurjection(ring, ring, mat)


def is_ideal(ring: FiniteRing, s: Subspace) -> bool:
    return all(
        s.contains_vec(ring.mul(ring.basis_vec(i), r))
        for i in range(ring.dim)
        for r in s.rows
    )


def quotient_surjection(ring: FiniteRing, ideal: Subspace) -> RingSurjection:
    """B -> B/ideal with induced structure constants.

    The quotient basis consists of the non-pivot coordinates of the
    ideal, so the canonical map reads off residues after elimination.
    Quotienting by B itself is rejected (the target must keep 1 != 0).
    """
    if ideal.p != ring.p or ideal.dim != ring.dim:
        raise InputError("ideal does not live in the ring")
    if not is_ideal(ring, ideal):
        raise InputError("subspace is not an ideal of the ring")
    if ideal.rank == ring.dim:
        raise InputError("cannot quotient by the whole ring (zero ring)")
    if ideal.is_zero():
        return identity_surjection(ring)
    p, n = ring.p, ring.dim
    piv = {next(k for k, c in enumerate(r) if c) for r in ideal.rows}
    keep = [j for j in range(n) if j not in piv]
    qdim = len(keep)

    def project(v: Vec) -> Vec:
        red = ideal.reduce(v)
        return tuple(red[j] for j in keep)

    def lift(w: Vec) -> Vec:
        out = [0] * n
        for j, c in zip(keep, w):
            out[j] = c
        return tuple(out)

    reps = [lift(tuple(1 if t == i else 0 for t in range(qdim))) for i in range(qdim)]
    table = tuple(
        tuple(project(ring.mul(reps[i], reps[j])) for j in range(qdim))
        for i in range(qdim)
    )
    labels = (
        tuple(ring.labels[j] for j in keep) if ring.labels is not None else None
    )
    target = FiniteRing(p, qdim, table, project(ring.one), labels)
    matrix = tuple(project(ring.basis_vec(i)) for i in range(n))
    surj = RingSurjection(ring, target, matrix)
    if surj.kernel != ideal:
        raise InternalError("quotient kernel does not match the ideal")
    return surj


def subring_ring(ring: FiniteRing, s: Subspace) -> tuple[FiniteRing, tuple[Vec, ...]]:
    """View a multiplicatively closed unital subspace as a ring in its
    own right.  Returns the ring and the embedding (basis rows in B)."""
    RingExtension(ring, s)  # validates closure and the unit
    rows = s.rows

    def coords(v: Vec) -> Vec:
        # rows are RREF, so coefficients are read off at pivot columns
        red = list(v)
        out = []
        for row in rows:
            lead = next(k for k, c in enumerate(row) if c)
            c = red[lead]
            out.append(c)
            if c:
                for k in range(len(red)):
                    red[k] = (red[k] - c * row[k]) % ring.p
        if any(red):
            raise InputError("vector is not in the subring")
        return tuple(out)

    k = len(rows)
    table = tuple(
        tuple(coords(ring.mul(rows[i], rows[j])) for j in range(k))
        for i in range(k)
    )
    sub = FiniteRing(ring.p, k, table, coords(ring.one))
    return sub, rows
