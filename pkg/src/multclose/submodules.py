"""A-submodules of B: enumeration, colon (residual) arithmetic, products,
and the module families the closure machinery runs on.

A ModuleFamily caches the containment relation, pairwise meets and colon
results so that closure enumeration never recomputes linear algebra.
Member order is rank-major then row-lexicographic, matching the subspace
enumeration order, so indices are reproducible across runs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .bounds import Bounds, default_bounds
from .errors import InputError, ResourceBoundError
from .linalg import (
    Subspace,
    Vec,
    coords_of,
    format_subspace,
    full_subspace,
    nullspace,
    rref,
    subspace_contains,
    subspace_meet,
    subspace_sum,
    zero_subspace,
)
from .finring import RingExtension

F0 = "f0"
ALL = "all"
ALL_NONZERO = "all-nonzero"
IDEALS = "ideals"
CUSTOM = "custom"

FAMILY_KINDS = (F0, ALL, ALL_NONZERO, IDEALS, CUSTOM)


@dataclass(frozen=True)
class Submodule:
    """An A-submodule of B in canonical reduced-echelon form."""

    ext: RingExtension
    space: Subspace

    def __post_init__(self):
        ring = self.ext.ring
        if self.space.p != ring.p or self.space.dim != ring.dim:
            raise InputError("submodule does not live in the ambient ring")
        for a in self.ext.subring.rows:
            for w in self.space.rows:
                if not self.space.contains_vec(ring.mul(a, w)):
                    raise InputError("subspace is not stable under the subring")

    @property
    def rank(self) -> int:
        return self.space.rank

    def __str__(self) -> str:
        return self.ext.ring.format_subspace(self.space)


def generated_submodule(ext: RingExtension, vecs) -> Submodule:
    """The A-module generated by the given vectors of B."""
    ring = ext.ring
    gens = [coords_of(v, ring.p) for v in vecs]
    prods = [ring.mul(a, g) for a in ext.subring.rows for g in gens]
    return Submodule(ext, rref(gens + prods, p=ring.p, dim=ring.dim))


def full_submodule(ext: RingExtension) -> Submodule:
    return Submodule(ext, full_subspace(ext.ring.p, ext.ring.dim))


def zero_submodule(ext: RingExtension) -> Submodule:
    return Submodule(ext, zero_subspace(ext.ring.p, ext.ring.dim))


def subring_submodule(ext: RingExtension) -> Submodule:
    """A itself, viewed as a member of Submod_A(B)."""
    return Submodule(ext, ext.subring)


def colon_module(i: Submodule, j: Submodule) -> Submodule:
    """(I :_B J) = {b in B : bJ <= I}, by solving the linear system.

    Conventions: (I : 0) = B, and (0 : J) is the annihilator of J.
    """
    if i.ext != j.ext:
        raise InputError("colon of submodules over different extensions")
    ring = i.ext.ring
    p, n = ring.p, ring.dim
    if j.space.is_zero():
        return full_submodule(i.ext)
    constraints: list[Vec] = []
    for g in j.space.rows:
        rows = [i.space.reduce(ring.mul(ring.basis_vec(t), g)) for t in range(n)]
        for k in range(n):
            constraints.append(tuple(rows[t][k] for t in range(n)))
    return Submodule(i.ext, nullspace(p, constraints, n))


def colon_element(i: Submodule, b) -> Submodule:
    """{c in B : c*b in I}."""
    ring = i.ext.ring
    b = coords_of(b, ring.p)
    p, n = ring.p, ring.dim
    rows = [i.space.reduce(ring.mul(ring.basis_vec(t), b)) for t in range(n)]
    constraints = [tuple(rows[t][k] for t in range(n)) for k in range(n)]
    return Submodule(i.ext, nullspace(p, constraints, n))


def module_product(i: Submodule, j: Submodule) -> Submodule:
    """Span of the pairwise products of the two modules."""
    if i.ext != j.ext:
        raise InputError("product of submodules over different extensions")
    ring = i.ext.ring
    prods = [ring.mul(u, v) for u in i.space.rows for v in j.space.rows]
    return Submodule(i.ext, rref(prods, p=ring.p, dim=ring.dim))


def generates_unit_ideal(i: Submodule) -> bool:
    """True iff I*B = B, the membership test of the family F0."""
    return module_product(i, full_submodule(i.ext)).space.is_full()


@lru_cache(maxsize=32)
def _all_stable_spaces(ext: RingExtension, max_dim: int, max_prime: int):
    from .linalg import enumerate_subspaces

    bounds = Bounds(max_dim=max_dim, max_prime=max_prime)
    ring = ext.ring
    # every subspace is stable when A is the prime field F_p . 1
    skip_check = ext.subring.rank == 1
    out = []
    for s in enumerate_subspaces(ring.p, ring.dim, bounds):
        if skip_check:
            out.append(s)
            continue
        ok = all(
            s.contains_vec(ring.mul(a, w))
            for a in ext.subring.rows
            for w in s.rows
        )
        if ok:
            out.append(s)
    return tuple(out)


def all_submodule_spaces(
    ext: RingExtension, bounds: Bounds | None = None
) -> tuple[Subspace, ...]:
    bounds = bounds or default_bounds()
    bounds.check_ring(ext.ring.p, ext.ring.dim)
    return _all_stable_spaces(ext, bounds.max_dim, bounds.max_prime)


@dataclass(eq=False)
class ModuleFamily:
    """An indexed family of submodules with cached order data.

    Instances compare by identity.  Treat them as immutable after
    construction; the mutable fields are lazily filled caches shared by
    all queries.
    """

    ext: RingExtension
    kind: str
    members: tuple[Submodule, ...]
    _index: dict = field(default_factory=dict, repr=False)
    _leq: list | None = field(default=None, repr=False)
    _meet_idx: list | None = field(default=None, repr=False)
    _colon_pair: dict = field(default_factory=dict, repr=False)
    _colon_elem: dict = field(default_factory=dict, repr=False)
    _flags: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in FAMILY_KINDS:
            raise InputError(f"unknown family kind {self.kind!r}")
        spaces = [m.space for m in self.members]
        if len(set(spaces)) != len(spaces):
            raise InputError("family members are not pairwise distinct")
        self._index = {m.space: k for k, m in enumerate(self.members)}

    def __len__(self) -> int:
        return len(self.members)

    def index_of(self, space: Subspace) -> int | None:
        return self._index.get(space)

    def member(self, k: int) -> Submodule:
        return self.members[k]

    # -- cached order structure ------------------------------------------

    @property
    def leq(self) -> list[list[bool]]:
        """leq[i][j] is True iff member i <= member j as subspaces."""
        if self._leq is None:
            self._leq = [
                [subspace_contains(b.space, a.space) for b in self.members]
                for a in self.members
            ]
        return self._leq

    @property
    def meet_idx(self) -> list[list[int]]:
        """Index of member_i /\\ member_j, or -1 if the meet escapes."""
        if self._meet_idx is None:
            n = len(self.members)
            table = [[-1] * n for _ in range(n)]
            for a in range(n):
                table[a][a] = a
                for b in range(a + 1, n):
                    m = subspace_meet(self.members[a].space, self.members[b].space)
                    k = self._index.get(m)
                    table[a][b] = table[b][a] = -1 if k is None else k
            self._meet_idx = table
        return self._meet_idx

    def colon_pair(self, i: int, j: int) -> Subspace:
        """(member_i :_B member_j), cached."""
        key = (i, j)
        if key not in self._colon_pair:
            self._colon_pair[key] = colon_module(
                self.members[i], self.members[j]
            ).space
        return self._colon_pair[key]

    def colon_space(self, i: int, x: Subspace) -> Subspace:
        """(member_i :_B X) for an arbitrary subspace X, cached."""
        j = self._index.get(x)
        if j is not None:
            return self.colon_pair(i, j)
        key = (i, x)
        if key not in self._colon_elem:
            self._colon_elem[key] = colon_module(
                self.members[i], Submodule(self.ext, x)
            ).space
        return self._colon_elem[key]

    def colon_by_element(self, i: int, b: Vec) -> Subspace:
        key = (i, b)
        if key not in self._colon_elem:
            self._colon_elem[key] = colon_element(self.members[i], b).space
        return self._colon_elem[key]

    # -- structural flags -------------------------------------------------

    def _ambient(self) -> tuple[Subspace, ...]:
        return all_submodule_spaces(self.ext)

    @property
    def upward_closed(self) -> bool:
        """Upward closed inside the full lattice Submod_A(B)."""
        if "up" not in self._flags:
            members = set(self._index)
            self._flags["up"] = all(
                s in members
                for s in self._ambient()
                for m in members
                if subspace_contains(s, m)
            ) if members else True
        return self._flags["up"]

    @property
    def downward_closed(self) -> bool:
        if "down" not in self._flags:
            members = set(self._index)
            self._flags["down"] = all(
                s in members
                for s in self._ambient()
                for m in members
                if subspace_contains(m, s)
            ) if members else True
        return self._flags["down"]

    @property
    def interval(self) -> bool:
        """Interval inside Submod_A(B): closed under betweenness."""
        if "interval" not in self._flags:
            members = set(self._index)
            ok = True
            for s in self._ambient():
                if s in members:
                    continue
                below = any(subspace_contains(s, m) for m in members)
                above = any(subspace_contains(m, s) for m in members)
                if below and above:
                    ok = False
                    break
            self._flags["interval"] = ok
        return self._flags["interval"]

    @property
    def maximum(self) -> int | None:
        """Index of the member containing every member, if any."""
        if "max" not in self._flags:
            found = None
            for k, m in enumerate(self.members):
                if all(
                    subspace_contains(m.space, other.space)
                    for other in self.members
                ):
                    found = k
                    break
            self._flags["max"] = found
        return self._flags["max"]

    @property
    def has_maximum(self) -> bool:
        return self.maximum is not None

    # -- reporting ---------------------------------------------------------

    def report_lines(self) -> list[str]:
        return [
            f"{k}\t{m.rank}\t{format_subspace(m.space)}"
            for k, m in enumerate(self.members)
        ]


def _sorted_members(ext: RingExtension, spaces) -> tuple[Submodule, ...]:
    ordered = sorted(spaces, key=lambda s: (s.rank, s.rows))
    return tuple(Submodule(ext, s) for s in ordered)


def make_family(ext: RingExtension, kind: str, spaces) -> ModuleFamily:
    return ModuleFamily(ext, kind, _sorted_members(ext, spaces))


def enumerate_submodules(
    ext: RingExtension, bounds: Bounds | None = None
) -> ModuleFamily:
    """All A-submodules of B, deterministic order."""
    return make_family(ext, ALL, all_submodule_spaces(ext, bounds))


def family_all_nonzero(
    ext: RingExtension, bounds: Bounds | None = None
) -> ModuleFamily:
    spaces = [s for s in all_submodule_spaces(ext, bounds) if not s.is_zero()]
    return make_family(ext, ALL_NONZERO, spaces)


def family_ideals(
    ext: RingExtension, bounds: Bounds | None = None
) -> ModuleFamily:
    if not ext.is_trivial():
        raise InputError("the ideals family requires A = B")
    return make_family(ext, IDEALS, all_submodule_spaces(ext, bounds))


def family_f0(ext: RingExtension, bounds: Bounds | None = None) -> ModuleFamily:
    """{I : I*B = B}; always contains B and is upward closed."""
    spaces = [
        s
        for s in all_submodule_spaces(ext, bounds)
        if generates_unit_ideal(Submodule(ext, s))
    ]
    return make_family(ext, F0, spaces)


def custom_family(ext: RingExtension, spaces) -> ModuleFamily:
    """A family from an explicit member list of Subspace or Submodule
    values; flags are computed, not trusted."""
    canon = [s.space if isinstance(s, Submodule) else s for s in spaces]
    return make_family(ext, CUSTOM, canon)


def build_family(
    ext: RingExtension, kind: str, bounds: Bounds | None = None
) -> ModuleFamily:
    if kind == ALL:
        return enumerate_submodules(ext, bounds)
    if kind == ALL_NONZERO:
        return family_all_nonzero(ext, bounds)
    if kind == IDEALS:
        return family_ideals(ext, bounds)
    if kind == F0:
        return family_f0(ext, bounds)
    raise InputError(f"cannot build family of kind {kind!r} without members")
