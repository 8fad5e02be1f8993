"""Exact linear algebra over prime fields F_p.

Vectors are tuples of residues in [0, p).  A Subspace is stored as its
reduced row-echelon basis, which is a canonical representative: two
subspaces are equal iff their row matrices are identical, so Subspace
supports hashing and dictionary lookup.  Enumeration of all subspaces of
F_p^n is rank-major and row-lexicographic, and its total count equals
the sum of Gaussian binomial coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .bounds import Bounds, default_bounds
from .errors import InputError, InternalError

Vec = tuple[int, ...]


@dataclass(frozen=True)
class FpVec:
    """A vector over F_p with every coordinate reduced mod p."""

    p: int
    coords: Vec

    def __post_init__(self):
        if self.p < 2:
            raise InputError(f"modulus must be at least 2, got {self.p}")
        object.__setattr__(self, "coords", tuple(c % self.p for c in self.coords))

    def __len__(self) -> int:
        return len(self.coords)

    def __add__(self, other: "FpVec") -> "FpVec":
        self._compatible(other)
        return FpVec(self.p, vec_add(self.p, self.coords, other.coords))

    def __sub__(self, other: "FpVec") -> "FpVec":
        self._compatible(other)
        return FpVec(self.p, vec_sub(self.p, self.coords, other.coords))

    def __neg__(self) -> "FpVec":
        return FpVec(self.p, tuple((-c) % self.p for c in self.coords))

    def scale(self, c: int) -> "FpVec":
        return FpVec(self.p, vec_scale(self.p, c, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _compatible(self, other: "FpVec") -> None:
        if self.p != other.p or len(self.coords) != len(other.coords):
            raise InputError("vectors live in different ambient spaces")


def vec_add(p: int, u: Vec, v: Vec) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_sub(p: int, u: Vec, v: Vec) -> Vec:
    return tuple((a - b) % p for a, b in zip(u, v))


def vec_scale(p: int, c: int, u: Vec) -> Vec:
    c %= p
    return tuple((c * a) % p for a in u)


def coords_of(v, p: int | None = None) -> Vec:
    """Coerce an FpVec or a plain integer sequence into a residue tuple."""
    if isinstance(v, FpVec):
        if p is not None and v.p != p:
            raise InputError(f"vector has modulus {v.p}, expected {p}")
        return v.coords
    if p is None:
        raise InputError("modulus required for raw coordinate sequences")
    return tuple(int(c) % p for c in v)


def _rref_rows(p: int, rows: Iterable[Vec]) -> tuple[Vec, ...]:
    mat = [list(r) for r in rows if any(r)]
    pivots: list[int] = []
    out: list[list[int]] = []
    for row in mat:
        for pr, pc in zip(out, pivots):
            c = row[pc]
            if c:
                for k in range(len(row)):
                    row[k] = (row[k] - c * pr[k]) % p
        lead = next((k for k, c in enumerate(row) if c), None)
        if lead is None:
            continue
        inv = pow(row[lead], -1, p)
        row = [(inv * c) % p for c in row]
        # clear the new pivot column in earlier rows
        for pr in out:
            c = pr[lead]
            if c:
                for k in range(len(row)):
                    pr[k] = (pr[k] - c * row[k]) % p
        out.append(row)
        pivots.append(lead)
    order = sorted(range(len(out)), key=lambda i: pivots[i])
    return tuple(tuple(out[i]) for i in order)


def _pivots(rows: Sequence[Vec]) -> tuple[int, ...]:
    return tuple(next(k for k, c in enumerate(r) if c) for r in rows)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^dim in canonical reduced row-echelon form."""

    p: int
    dim: int
    rows: tuple[Vec, ...]

    def __post_init__(self):
        piv = -1
        for r in self.rows:
            if len(r) != self.dim:
                raise InputError("row length does not match ambient dimension")
            lead = next((k for k, c in enumerate(r) if c), None)
            if lead is None or lead <= piv or r[lead] != 1:
                raise InputError("rows are not in reduced echelon form")
            for other in self.rows:
                if other is not r and other[lead]:
                    raise InputError("pivot column is not clean")
            piv = lead

    @property
    def rank(self) -> int:
        return len(self.rows)

    def is_zero(self) -> bool:
        return not self.rows

    def is_full(self) -> bool:
        return len(self.rows) == self.dim

    def reduce(self, v: Vec) -> Vec:
        """Residue of v after elimination against the basis rows."""
        out = list(v)
        for row, pc in zip(self.rows, _pivots(self.rows)):
            c = out[pc]
            if c:
                for k in range(self.dim):
                    out[k] = (out[k] - c * row[k]) % self.p
        return tuple(out)

    def contains_vec(self, v: Vec) -> bool:
        return not any(self.reduce(v))

    def elements(self) -> Iterator[Vec]:
        """All p^rank vectors of the subspace, in a deterministic order."""
        zero = (0,) * self.dim
        for coeffs in product(range(self.p), repeat=len(self.rows)):
            v = zero
            for c, row in zip(coeffs, self.rows):
                if c:
                    v = vec_add(self.p, v, vec_scale(self.p, c, row))
            yield v

    def __str__(self) -> str:
        return format_subspace(self)


def rref(rows, p: int | None = None, dim: int | None = None) -> Subspace:
    """Canonical reduced-echelon basis of the row span.

    Rows may be FpVec values (moduli and lengths are checked for
    consistency) or raw tuples, in which case p and dim are required.
    """
    raw: list[Vec] = []
    for r in rows:
        if isinstance(r, FpVec):
            if p is None:
                p = r.p
            if dim is None:
                dim = len(r.coords)
            if r.p != p:
                raise InputError("mixed moduli in rref input")
            if len(r.coords) != dim:
                raise InputError("mixed row lengths in rref input")
            raw.append(r.coords)
        else:
            t = tuple(int(c) for c in r)
            if dim is None:
                dim = len(t)
            if len(t) != dim:
                raise InputError("mixed row lengths in rref input")
            raw.append(t)
    if p is None or dim is None:
        raise InputError("empty input needs explicit p and dim")
    raw = [tuple(c % p for c in r) for r in raw]
    return Subspace(p, dim, _rref_rows(p, raw))


def zero_subspace(p: int, dim: int) -> Subspace:
    return Subspace(p, dim, ())


def full_subspace(p: int, dim: int) -> Subspace:
    rows = tuple(
        tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)
    )
    return Subspace(p, dim, rows)


def _check_ambient(u: Subspace, v: Subspace) -> None:
    if u.p != v.p or u.dim != v.dim:
        raise InputError("subspaces live in different ambient spaces")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    return Subspace(u.p, u.dim, _rref_rows(u.p, u.rows + v.rows))


def subspace_meet(u: Subspace, v: Subspace) -> Subspace:
    """Canonical form of the intersection, by the Zassenhaus algorithm."""
    _check_ambient(u, v)
    p, n = u.p, u.dim
    if u.is_full():
        return v
    if v.is_full():
        return u
    block = [r + r for r in u.rows] + [r + (0,) * n for r in v.rows]
    reduced = _rref_rows(p, block)
    inter = [r[n:] for r in reduced if not any(r[:n])]
    return Subspace(p, n, _rref_rows(p, inter))


def subspace_contains(u: Subspace, v: Subspace) -> bool:
    """True iff v is a subspace of u."""
    _check_ambient(u, v)
    return all(u.contains_vec(r) for r in v.rows)


def nullspace(p: int, constraint_rows: Sequence[Vec], dim: int) -> Subspace:
    """{x in F_p^dim : r . x = 0 for every constraint row r}."""
    reduced = _rref_rows(p, [tuple(c % p for c in r) for r in constraint_rows])
    piv = set(_pivots(reduced))
    free = [j for j in range(dim) if j not in piv]
    basis: list[Vec] = []
    for j in free:
        x = [0] * dim
        x[j] = 1
        for row, pc in zip(reduced, _pivots(reduced)):
            x[pc] = (-row[j]) % p
        basis.append(tuple(x))
    return Subspace(p, dim, _rref_rows(p, basis))


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n, by exact division."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (k - i) - 1
    if num % den:
        raise InternalError("Gaussian binomial division is not exact")
    return num // den


def count_subspaces(p: int, dim: int) -> int:
    return sum(gaussian_binomial(dim, k, p) for k in range(dim + 1))


def enumerate_subspaces(
    p: int, dim: int, bounds: Bounds | None = None
) -> Iterator[Subspace]:
    """Every subspace of F_p^dim exactly once, rank-major then
    row-lexicographic on the canonical basis matrices."""
    bounds = bounds or default_bounds()
    bounds.check_ring(p, dim)
    yield zero_subspace(p, dim)
    for r in range(1, dim + 1):
        batch: list[tuple[Vec, ...]] = []
        for pivots in combinations(range(dim), r):
            pivset = set(pivots)
            free = [
                (i, j)
                for i, pc in enumerate(pivots)
                for j in range(pc + 1, dim)
                if j not in pivset
            ]
            for values in product(range(p), repeat=len(free)):
                mat = [[0] * dim for _ in range(r)]
                for i, pc in enumerate(pivots):
                    mat[i][pc] = 1
                for (i, j), val in zip(free, values):
                    mat[i][j] = val
                batch.append(tuple(tuple(row) for row in mat))
        batch.sort()
        for rows in batch:
            yield Subspace(p, dim, rows)


def format_subspace(s: Subspace) -> str:
    """Rows joined by ';', residues space-separated; zero space is "0"."""
    if s.is_zero():
        return "0"
    return ";".join(" ".join(str(c) for c in row) for row in s.rows)


def parse_subspace(text: str, p: int, dim: int) -> Subspace:
    text = text.strip()
    if text == "0":
        return zero_subspace(p, dim)
    rows = []
    for part in text.split(";"):
        try:
            row = tuple(int(tok) for tok in part.split())
        except ValueError as exc:
            raise InputError(f"bad subspace row {part!r}") from exc
        if len(row) != dim:
            raise InputError(
                f"subspace row has {len(row)} entries, expected {dim}"
            )
        rows.append(row)
    return rref(rows, p=p, dim=dim)
