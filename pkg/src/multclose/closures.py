"""Multiplicative operations on (A, B, G).

An operation is represented by its closed set: a closure is determined
by which members it fixes, and evaluation recovers I* as the unique
minimal closed member containing I.  On upward-closed families the
principal operation generated by J is the double dual I |-> (J:(J:I)),
the multiplicative order i <= j holds iff member i is fixed by the
principal operation of member j, and the full operation set is exactly
the set of order downsets that contain the maximum and are closed under
member-wise intersection whenever the intersection stays in the family.

The oracle at the bottom of the file enumerates operations by brute
force over monotone extensive idempotent self-maps instead; it shares no
code path with the downset enumeration and exists to cross-check it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .bounds import Bounds, default_bounds
from .errors import InputError, InternalError, UnsupportedFamilyError
from .linalg import Subspace, Vec, subspace_contains, subspace_meet, rref
from .submodules import ModuleFamily, Submodule, custom_family


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    axiom: str | None = None
    member: int | None = None
    other: int | None = None
    element: Vec | None = None

    def describe(self, family: ModuleFamily | None = None) -> str:
        if self.ok:
            return "multiplicative"
        parts = [f"violates {self.axiom}"]
        if self.member is not None:
            parts.append(f"I = member {self.member}")
        if self.other is not None:
            parts.append(f"J = member {self.other}")
        if self.element is not None:
            if family is not None:
                parts.append(
                    f"b = {family.ext.ring.format_element(self.element)}"
                )
            else:
                parts.append(f"b = {self.element}")
        return ", ".join(parts)


def check_multiplicative(family: ModuleFamily, table) -> CheckResult:
    """Full axiom sweep for an explicit self-map given as an index table.

    Checks extensivity, order preservation, idempotence and the colon
    compatibility condition (I:b)* <= (I*:b) for every member I and
    every ring element b with (I:b) in the family.  Reports the first
    violated axiom together with a witness.
    """
    n = len(family)
    table = tuple(table)
    if len(table) != n or any(not 0 <= t < n for t in table):
        raise InputError("closure table is not a total self-map of the family")
    leq = family.leq
    for i in range(n):
        if not leq[i][table[i]]:
            return CheckResult(False, "extensivity", member=i)
    for i in range(n):
        for j in range(n):
            if leq[i][j] and not leq[table[i]][table[j]]:
                return CheckResult(False, "order preservation", member=i, other=j)
    for i in range(n):
        if table[table[i]] != table[i]:
            return CheckResult(False, "idempotence", member=i)
    for i in range(n):
        for b in family.ext.ring.elements():
            cb = family.colon_by_element(i, b)
            j = family.index_of(cb)
            if j is None:
                continue
            target = family.colon_by_element(table[i], b)
            if not subspace_contains(target, family.member(table[j]).space):
                return CheckResult(
                    False, "colon compatibility", member=i, element=b
                )
    return CheckResult(True)


@dataclass(eq=False)
class ClosureOp:
    """A multiplicative operation, stored as its set of closed members."""

    family: ModuleFamily
    closed: frozenset[int]
    _table: tuple[int, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.closed = frozenset(self.closed)
        n = len(self.family)
        if any(not 0 <= k < n for k in self.closed):
            raise InputError("closed set contains indices outside the family")
        mx = self.family.maximum
        if mx is not None and mx not in self.closed:
            raise InputError("the family maximum is not closed")
        if self._table is None:
            self._table = self._build_table()

    def _build_table(self) -> tuple[int, ...]:
        fam = self.family
        leq = fam.leq
        table = []
        for i in range(len(fam)):
            sup = sorted(j for j in self.closed if leq[i][j])
            if not sup:
                raise InputError(
                    f"member {i} has no closed member above it; "
                    "not a valid closed set"
                )
            best = None
            for j in sup:
                if all(leq[j][k] for k in sup):
                    best = j
                    break
            if best is None:
                raise InputError(
                    f"member {i} has no least closed member above it; "
                    "not a valid closed set"
                )
            table.append(best)
        return tuple(table)

    @property
    def table(self) -> tuple[int, ...]:
        return self._table

    def evaluate(self, i: int) -> int:
        """Index of I*, the minimal closed member containing member i."""
        return self._table[i]

    def evaluate_module(self, m: Submodule) -> Submodule:
        k = self.family.index_of(m.space)
        if k is None:
            raise InputError("module is not a member of the family")
        return self.family.member(self._table[k])

    def is_closed(self, i: int) -> bool:
        return i in self.closed

    def leq(self, other: "ClosureOp") -> bool:
        """Pointwise order on operations: self <= other iff self closes
        every member other closes."""
        if self.family is not other.family:
            raise InputError("cannot compare operations on different families")
        return self.closed >= other.closed

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, ClosureOp)
            and self.family is other.family
            and self.closed == other.closed
        )

    def __hash__(self):
        return hash((id(self.family), self.closed))

    def sort_key(self):
        return (len(self.closed), tuple(sorted(self.closed)))

    def describe(self) -> str:
        idx = ",".join(str(k) for k in sorted(self.closed))
        return "closed = {" + idx + "}"

    def check(self) -> CheckResult:
        return check_multiplicative(self.family, self._table)


def op_from_table(family: ModuleFamily, table) -> ClosureOp:
    """Wrap an explicit map as a ClosureOp, verifying that the map is
    the evaluation of its own fixed-point set."""
    table = tuple(table)
    closed = frozenset(i for i, t in enumerate(table) if t == i)
    op = ClosureOp(family, closed)
    if op.table != table:
        raise InputError(
            "map is not determined by its fixed points; not a closure"
        )
    return op


def identity_op(family: ModuleFamily) -> ClosureOp:
    return ClosureOp(family, frozenset(range(len(family))))


def _double_dual_idx(family: ModuleFamily, j: int, i: int) -> int:
    inner = family.colon_pair(j, i)
    outer = family.colon_space(j, inner)
    k = family.index_of(outer)
    if k is None:
        raise InternalError(
            "double dual left the family although it is upward closed"
        )
    return k


def _require_upward(family: ModuleFamily, what: str) -> None:
    if not family.upward_closed:
        raise UnsupportedFamilyError(
            f"{what} requires an upward closed family"
        )


def principal_op(family: ModuleFamily, j: int) -> ClosureOp:
    """The largest operation closing member j; on upward-closed families
    this is the double dual I |-> (J:(J:I))."""
    _require_upward(family, "principal_op")
    table = tuple(
        _double_dual_idx(family, j, i) for i in range(len(family))
    )
    op = op_from_table(family, table)
    if not op.is_closed(j):
        raise InternalError("principal operation does not close its generator")
    return op


def generated_op(family: ModuleFamily, gens) -> ClosureOp:
    """The operation generated by a set of members: the largest one
    closing all of them, i.e. the infimum of their principal operations.

    On an upward-closed family it is evaluated by intersecting double
    duals.  Otherwise the generator set must already be the closed set
    of a valid operation (then that operation is returned).
    """
    gens = sorted(set(gens))
    if family.upward_closed:
        mx = family.maximum
        n = len(family)
        meet_idx = family.meet_idx
        table = []
        for i in range(n):
            acc = mx
            for j in gens:
                k = _double_dual_idx(family, j, i)
                acc = meet_idx[acc][k] if acc is not None else k
                if acc == -1:
                    raise InternalError(
                        "intersection of double duals left the family"
                    )
            table.append(acc)
        return op_from_table(family, table)
    try:
        candidate = ClosureOp(family, frozenset(gens) | (
            {family.maximum} if family.maximum is not None else frozenset()
        ))
    except InputError as exc:
        raise UnsupportedFamilyError(
            "generated_op on a non-upward-closed family needs a generator "
            f"set that is already a closed set ({exc})"
        ) from exc
    result = check_multiplicative(family, candidate.table)
    if not result.ok:
        raise UnsupportedFamilyError(
            "generated_op on a non-upward-closed family needs a generator "
            f"set that is already a closed set ({result.describe(family)})"
        )
    return candidate


@dataclass(eq=False)
class MultOrder:
    """The multiplicative preorder on a family.

    rel[i][j] is True iff member i is closed by the principal operation
    of member j, i.e. (J:(J:I)) = I.  classes are the equivalence
    classes of mutual comparability; class_order is the induced partial
    order, as a boolean matrix on class indices.
    """

    family: ModuleFamily
    rel: tuple[tuple[bool, ...], ...]
    classes: tuple[tuple[int, ...], ...]
    class_order: tuple[tuple[bool, ...], ...]

    def class_of(self, i: int) -> int:
        for c, members in enumerate(self.classes):
            if i in members:
                return c
        raise InputError(f"no class for member {i}")

    def maximum_class(self) -> int | None:
        k = len(self.classes)
        for c in range(k):
            if all(self.class_order[d][c] for d in range(k)):
                return c
        return None

    def report_lines(self) -> list[str]:
        lines = []
        for c, members in enumerate(self.classes):
            idx = ",".join(str(i) for i in members)
            lines.append(f"class {c}: {{{idx}}}")
        k = len(self.classes)
        for a in range(k):
            for b in range(k):
                if a != b and self.class_order[a][b]:
                    lines.append(f"class {a} <= class {b}")
        return lines


def mult_order(family: ModuleFamily) -> MultOrder:
    _require_upward(family, "mult_order")
    n = len(family)
    rel = [[False] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            rel[i][j] = _double_dual_idx(family, j, i) == i
    for i in range(n):
        if not rel[i][i]:
            raise InternalError("multiplicative order is not reflexive")
    for i in range(n):
        for j in range(n):
            if rel[i][j]:
                for t in range(n):
                    if rel[j][t] and not rel[i][t]:
                        raise InternalError(
                            "multiplicative order is not transitive"
                        )
    seen: list[int] = [-1] * n
    classes: list[tuple[int, ...]] = []
    for i in range(n):
        if seen[i] >= 0:
            continue
        members = tuple(
            j for j in range(n) if rel[i][j] and rel[j][i]
        )
        c = len(classes)
        for j in members:
            seen[j] = c
        classes.append(members)
    k = len(classes)
    corder = [
        [rel[classes[a][0]][classes[b][0]] for b in range(k)] for a in range(k)
    ]
    return MultOrder(
        family,
        tuple(tuple(r) for r in rel),
        tuple(classes),
        tuple(tuple(r) for r in corder),
    )


def canonical_ideal(family: ModuleFamily) -> int | None:
    """A member whose class is the maximum of the multiplicative order,
    if one exists; its principal operation is then the identity."""
    order = mult_order(family)
    c = order.maximum_class()
    if c is None:
        return None
    omega = order.classes[c][0]
    if principal_op(family, omega) != identity_op(family):
        raise InternalError(
            "principal operation of the canonical ideal is not the identity"
        )
    return omega


def enumerate_ops(family: ModuleFamily) -> list[ClosureOp]:
    """All multiplicative operations, via the order-downset criterion.

    Walks the classes of the multiplicative order in topological order,
    branching on inclusion; a branch dies when the intersection of two
    included members lands in an excluded class.  Output is sorted by
    closed-set size, then lexicographically on the index sets.
    """
    _require_upward(family, "enumerate_ops")
    order = mult_order(family)
    classes = order.classes
    corder = order.class_order
    k = len(classes)
    mx = family.maximum
    if mx is None:
        raise UnsupportedFamilyError("enumerate_ops needs a family maximum")
    max_class = order.class_of(mx)

    # Kahn linear extension, deterministic tie-break on smallest member
    remaining = set(range(k))
    topo: list[int] = []
    while remaining:
        ready = [
            c
            for c in remaining
            if all(not corder[d][c] for d in remaining if d != c)
        ]
        ready.sort(key=lambda c: classes[c][0])
        topo.append(ready[0])
        remaining.remove(ready[0])

    below = [
        frozenset(d for d in range(k) if d != c and corder[d][c])
        for c in range(k)
    ]
    meet_idx = family.meet_idx
    member_class = {i: order.class_of(i) for i in range(len(family))}
    pair_targets: list[list[frozenset[int]]] = [
        [frozenset()] * k for _ in range(k)
    ]
    for a in range(k):
        for b in range(a, k):
            hit = set()
            for x in classes[a]:
                for y in classes[b]:
                    m = meet_idx[x][y]
                    if m >= 0:
                        hit.add(member_class[m])
            pair_targets[a][b] = pair_targets[b][a] = frozenset(hit)

    results: list[frozenset[int]] = []

    def dfs(pos: int, included: set, excluded: set, required: set):
        if pos == k:
            results.append(frozenset(included))
            return
        c = topo[pos]
        # exclude c (not allowed for the maximum's class or forced meets)
        if c != max_class and c not in required:
            excluded.add(c)
            dfs(pos + 1, included, excluded, required)
            excluded.remove(c)
        # include c, if its whole down-set is already in
        if below[c] <= included:
            new_req = set()
            for b in included | {c}:
                new_req |= pair_targets[c][b] - required
            if not any(t in excluded for t in new_req):
                included.add(c)
                required |= new_req
                dfs(pos + 1, included, excluded, required)
                required -= new_req
                included.remove(c)

    dfs(0, set(), set(), set())
    ops = [
        ClosureOp(
            family,
            frozenset(i for c in sel for i in classes[c]),
        )
        for sel in results
    ]
    ops.sort(key=ClosureOp.sort_key)
    return ops


# -- lattice structure ---------------------------------------------------


def inf_op(ops: list[ClosureOp]) -> ClosureOp:
    """Infimum: pointwise intersection of the evaluations."""
    if not ops:
        raise InputError("infimum of an empty operation set")
    family = ops[0].family
    if any(op.family is not family for op in ops):
        raise InputError("operations live on different families")
    if not family.interval:
        raise UnsupportedFamilyError("inf_op requires an interval family")
    n = len(family)
    table = []
    for i in range(n):
        space = None
        for op in ops:
            s = family.member(op.evaluate(i)).space
            space = s if space is None else subspace_meet(space, s)
        j = family.index_of(space)
        if j is None:
            raise InternalError("infimum evaluation left the family")
        table.append(j)
    op = op_from_table(family, table)
    result = op.check()
    if not result.ok:
        raise InternalError(
            f"infimum is not multiplicative: {result.describe(family)}"
        )
    return op


def sup_op(ops: list[ClosureOp]) -> ClosureOp:
    """Supremum: the operation whose closed set is the intersection of
    the closed sets; needs every member dominated by a commonly closed
    one."""
    if not ops:
        raise InputError("supremum of an empty operation set")
    family = ops[0].family
    if any(op.family is not family for op in ops):
        raise InputError("operations live on different families")
    if not family.interval:
        raise UnsupportedFamilyError("sup_op requires an interval family")
    common = frozenset.intersection(*(op.closed for op in ops))
    leq = family.leq
    for i in range(len(family)):
        if not any(leq[i][j] for j in common):
            raise UnsupportedFamilyError(
                f"member {i} is below no commonly closed member; "
                "supremum does not exist"
            )
    op = ClosureOp(family, common)
    result = op.check()
    if not result.ok:
        raise InternalError(
            f"supremum is not multiplicative: {result.describe(family)}"
        )
    return op


# -- stable and finite-type transforms ------------------------------------


def _space_elements(space: Subspace) -> set[Vec]:
    return set(space.elements())


def is_stable(op: ClosureOp) -> bool:
    """(I /\\ J)* = I* /\\ J* for all member pairs whose meet is a member."""
    family = op.family
    n = len(family)
    meet_idx = family.meet_idx
    for i in range(n):
        for j in range(n):
            m = meet_idx[i][j]
            if m < 0:
                continue
            lhs = family.member(op.evaluate(m)).space
            rhs = subspace_meet(
                family.member(op.evaluate(i)).space,
                family.member(op.evaluate(j)).space,
            )
            if lhs != rhs:
                return False
    return True


def _require_stable_preconditions(family: ModuleFamily) -> int:
    if not family.downward_closed:
        raise UnsupportedFamilyError(
            "stable closure requires a downward closed family"
        )
    a_idx = family.index_of(family.ext.subring)
    if a_idx is None:
        raise UnsupportedFamilyError("stable closure requires A in the family")
    return a_idx


def stable_closure(op: ClosureOp) -> ClosureOp:
    """I |-> union of (I:E) over members E with E* = A*.

    The union is computed on element sets and must itself be a module;
    the result is the largest stable operation below the input.
    """
    family = op.family
    a_idx = _require_stable_preconditions(family)
    a_closure = op.evaluate(a_idx)
    qualifying = [e for e in range(len(family)) if op.evaluate(e) == a_closure]
    ring = family.ext.ring
    table = []
    for i in range(len(family)):
        pool: set[Vec] = set()
        rows: list[Vec] = []
        for e in qualifying:
            s = family.colon_pair(i, e)
            rows.extend(s.rows)
            pool |= _space_elements(s)
        span = rref(rows, p=ring.p, dim=ring.dim)
        if _space_elements(span) != pool:
            raise InternalError(
                "union of residuals is not a module; stable closure undefined"
            )
        j = family.index_of(span)
        if j is None:
            raise InternalError("stable closure left the family")
        table.append(j)
    out = op_from_table(family, table)
    result = out.check()
    if not result.ok:
        raise InternalError(
            f"stable closure is not multiplicative: {result.describe(family)}"
        )
    if not is_stable(out):
        raise InternalError("stable closure is not stable")
    if not out.leq(op):
        raise InternalError("stable closure is not below the input")
    return out


def w_closure(op: ClosureOp) -> ClosureOp:
    """The finite-type stable transform.  Every submodule of a finite
    ring is finitely generated, so this coincides with stable_closure;
    the identity of the two maps is asserted."""
    out = stable_closure(op)
    again = stable_closure(out)
    if again != out:
        raise InternalError("stable transform is not idempotent")
    return out


def finite_type(op: ClosureOp) -> ClosureOp:
    """I |-> union of J* over finitely generated J <= I.

    On a finite family every member is finitely generated (J = I is
    allowed), so the transform is the identity; this degeneracy is
    asserted rather than assumed.
    """
    family = op.family
    if not family.downward_closed:
        raise UnsupportedFamilyError(
            "finite_type requires a downward closed family"
        )
    leq = family.leq
    for i in range(len(family)):
        # union over J <= I of J*; J = I dominates every term
        top = op.evaluate(i)
        for j in range(len(family)):
            if leq[j][i] and not leq[op.evaluate(j)][top]:
                raise InternalError("finite-type union exceeded I*")
    return ClosureOp(family, op.closed)


# -- restriction and extension ---------------------------------------------


def restrict_op(op: ClosureOp, subfamily: ModuleFamily) -> ClosureOp:
    """Restrict to an interval subfamily sharing the maximum."""
    family = op.family
    if not subfamily.interval:
        raise UnsupportedFamilyError("restriction target must be an interval")
    if subfamily.maximum is None or family.maximum is None:
        raise UnsupportedFamilyError("restriction needs a shared maximum")
    if (
        subfamily.member(subfamily.maximum).space
        != family.member(family.maximum).space
    ):
        raise UnsupportedFamilyError(
            "restriction needs the same maximum in both families"
        )
    closed = set()
    for k, m in enumerate(subfamily.members):
        big = family.index_of(m.space)
        if big is None:
            raise InputError("subfamily member missing from the family")
        if big in op.closed:
            closed.add(k)
    return ClosureOp(subfamily, frozenset(closed))


def extend_op(op: ClosureOp, superfamily: ModuleFamily) -> ClosureOp:
    """Extend along upward closed families by generating from the closed
    set; restricting the result recovers the original operation."""
    _require_upward(op.family, "extend_op")
    _require_upward(superfamily, "extend_op")
    gens = []
    for k in op.closed:
        big = superfamily.index_of(op.family.member(k).space)
        if big is None:
            raise InputError("family member missing from the superfamily")
        gens.append(big)
    return generated_op(superfamily, gens)


# -- brute-force oracle ------------------------------------------------------


def enumerate_closure_maps(
    family: ModuleFamily, bounds: Bounds | None = None
) -> list[tuple[int, ...]]:
    """Every extensive, order-preserving, idempotent self-map, by
    backtracking over image choices.  Exponential; guarded by the oracle
    bound."""
    bounds = bounds or default_bounds()
    bounds.check_oracle(len(family))
    n = len(family)
    leq = family.leq
    supersets = [
        [j for j in range(n) if leq[i][j]] for i in range(n)
    ]
    table = [-1] * n
    out: list[tuple[int, ...]] = []

    def consistent(i: int, v: int) -> bool:
        for j in range(n):
            if j == i:
                continue
            w = table[j]
            if w < 0:
                continue
            if leq[i][j] and not leq[v][w]:
                return False
            if leq[j][i] and not leq[w][v]:
                return False
        return True

    def dfs(i: int):
        if i == n:
            t = tuple(table)
            for x in range(n):
                if t[t[x]] != t[x]:
                    return
            out.append(t)
            return
        for v in supersets[i]:
            if consistent(i, v):
                table[i] = v
                dfs(i + 1)
        table[i] = -1

    dfs(0)
    return out


def oracle_enumerate(
    family: ModuleFamily, bounds: Bounds | None = None
) -> list[tuple[int, ...]]:
    """All multiplicative operations as explicit tables, by filtering the
    closure maps through the full axiom check.  Independent of the
    downset enumeration; used to cross-check it."""
    return [
        t
        for t in enumerate_closure_maps(family, bounds)
        if check_multiplicative(family, t).ok
    ]
