"""Symbolic semiprime-operation calculus on a one-dimensional valuation
domain with value group G inside the rationals.

Nonzero ideals come in two kinds: P(d) = {v >= d} and J(d) = {v > d}.
As sets, J(d) = P(d) whenever d is not in G, and for a discrete group
J(d) = P(next element); ideals are normalized accordingly so equality
is structural.  The colon table

    (P(a) : P(b)) = (P(a) : J(b)) = V if a < b else P(a - b)
    (J(a) : P(b)) =                 V if a < b else J(a - b)
    (J(a) : J(b)) =                 V if a < b else P(a - b)

drives the multiplicative order via the double dual, and every
operation is classified by a closed-set pair: the P-part is an interval
[0, rho] (or everything), the J-part an interval of G bounded by gamma,
open or closed at gamma.  Ideal parameters and operation parameters are
exact rationals; suprema that would be irrational are outside the
representable range and are documented as a limitation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import InputError, InternalError

INF = math.inf
NEG_INF = -math.inf

Rat = Fraction  # parameters are Fraction or +-inf floats

Z = "z"
DENSE_Q = "dense-q"
Z_LOC_P = "z-loc"

GROUP_KINDS = (Z, DENSE_Q, Z_LOC_P)


@dataclass(frozen=True)
class ValueGroup:
    """A subgroup of the rationals: discrete Zg, all of Q, or Z[1/l]."""

    kind: str
    gen: Fraction = Fraction(1)
    loc_prime: int = 2

    def __post_init__(self):
        if self.kind not in GROUP_KINDS:
            raise InputError(f"unknown value group kind {self.kind!r}")
        if self.kind == Z and self.gen <= 0:
            raise InputError("discrete group needs a positive generator")
        if self.kind == Z_LOC_P and self.loc_prime < 2:
            raise InputError("localized group needs a prime denominator base")

    @property
    def dense(self) -> bool:
        return self.kind != Z

    def contains(self, x) -> bool:
        x = Fraction(x)
        if self.kind == DENSE_Q:
            return True
        if self.kind == Z:
            return (x / self.gen).denominator == 1
        den = x.denominator
        l = self.loc_prime
        while den % l == 0:
            den //= l
        return den == 1

    def ceil_member(self, x: Fraction) -> Fraction:
        """Smallest group element >= x (discrete groups only)."""
        if self.kind != Z:
            raise InputError("ceil_member only makes sense for discrete groups")
        return self.gen * math.ceil(Fraction(x) / self.gen)

    def next_member(self, x: Fraction) -> Fraction:
        """Smallest group element > x (discrete groups only)."""
        if self.kind != Z:
            raise InputError("next_member only makes sense for discrete groups")
        c = self.ceil_member(x)
        return c + self.gen if c == x else c

    def describe(self) -> str:
        if self.kind == Z:
            return f"Z*{self.gen}" if self.gen != 1 else "Z"
        if self.kind == DENSE_Q:
            return "Q"
        return f"Z[1/{self.loc_prime}]"


P_KIND = "P"
J_KIND = "J"
ZERO_KIND = "0"


@dataclass(frozen=True)
class ValIdeal:
    """P(delta), J(delta) or the zero ideal, in normalized form."""

    kind: str
    delta: Fraction | None = None

    def __post_init__(self):
        if self.kind == ZERO_KIND:
            if self.delta is not None:
                raise InputError("the zero ideal carries no threshold")
            return
        if self.kind not in (P_KIND, J_KIND):
            raise InputError(f"unknown ideal kind {self.kind!r}")
        if self.delta is None or self.delta < 0:
            raise InputError("ideal threshold must be a nonnegative rational")

    def is_zero(self) -> bool:
        return self.kind == ZERO_KIND

    def __str__(self) -> str:
        if self.kind == ZERO_KIND:
            return "(0)"
        if self.kind == P_KIND and self.delta == 0:
            return "V"
        return f"{self.kind}({self.delta})"


ZERO_IDEAL = ValIdeal(ZERO_KIND)


def val_ideal(kind: str, delta, group: ValueGroup) -> ValIdeal:
    """Normalized ideal: J(d) = P(d) for d outside the group, and on a
    discrete group every threshold snaps to a group element."""
    if kind == ZERO_KIND:
        return ZERO_IDEAL
    delta = Fraction(delta)
    if delta < 0:
        raise InputError("ideal threshold must be nonnegative")
    if group.kind == Z:
        if kind == P_KIND:
            return ValIdeal(P_KIND, group.ceil_member(delta))
        return ValIdeal(P_KIND, group.next_member(delta))
    if kind == J_KIND and not group.contains(delta):
        return ValIdeal(P_KIND, delta)
    return ValIdeal(kind, delta)


def _normalize(i: ValIdeal, group: ValueGroup) -> ValIdeal:
    if i.is_zero():
        return i
    return val_ideal(i.kind, i.delta, group)


def ideal_contains(big: ValIdeal, small: ValIdeal, group: ValueGroup) -> bool:
    """Set containment of normalized ideals."""
    big = _normalize(big, group)
    small = _normalize(small, group)
    if small.is_zero():
        return True
    if big.is_zero():
        return False
    a, b = big.delta, small.delta
    if big.kind == P_KIND and small.kind == P_KIND:
        return a <= b
    if big.kind == P_KIND and small.kind == J_KIND:
        return a <= b
    if big.kind == J_KIND and small.kind == J_KIND:
        return a <= b
    # J(a) >= P(b) iff every v >= b is > a, i.e. a < b (b notin G would
    # have been normalized away)
    return a < b


def val_colon(i: ValIdeal, j: ValIdeal, group: ValueGroup) -> ValIdeal:
    """(I :_V J), by the exact case table; (I : 0) = V and (0 : J) = 0
    for J != 0 since V is a domain."""
    i = _normalize(i, group)
    j = _normalize(j, group)
    if j.is_zero():
        return val_ideal(P_KIND, 0, group)
    if i.is_zero():
        return ZERO_IDEAL
    a, b = i.delta, j.delta
    if a < b:
        return val_ideal(P_KIND, 0, group)
    if i.kind == P_KIND:
        return val_ideal(P_KIND, a - b, group)
    if j.kind == P_KIND:
        return val_ideal(J_KIND, a - b, group)
    return val_ideal(P_KIND, a - b, group)


def val_order(i: ValIdeal, j: ValIdeal, group: ValueGroup) -> bool:
    """i <= j in the multiplicative order iff (J:(J:I)) = I."""
    i = _normalize(i, group)
    j = _normalize(j, group)
    return val_colon(j, val_colon(j, i, group), group) == i


@dataclass(frozen=True)
class ValOp:
    """A semiprime operation described by its closed-set parameters.

    rho: the P-ideals P(a) with a <= rho are closed (rho = inf keeps all
    of them closed, the divisorial closure v_P).
    gamma: bound of the closed J-part; -inf for none, +inf for all.
    closes_J_gamma: whether J(gamma) itself is closed; requires gamma to
    be a group element, since otherwise J(gamma) = P(gamma) and the
    J-part collapses into the P-part.
    closes_zero: whether the zero ideal is closed when the operation is
    read on all ideals; forced when rho = inf, because the zero ideal is
    the intersection of all P(a).
    """

    rho: object  # Fraction or INF
    gamma: object  # Fraction, NEG_INF or INF
    closes_J_gamma: bool = False
    closes_zero: bool = False

    def describe(self) -> str:
        if self.gamma == NEG_INF:
            base = "v_P" if self.rho == INF else f"princ_P({self.rho})"
        elif self.gamma == INF:
            base = "identity"
        elif self.closes_J_gamma:
            head = "v_P" if self.rho == INF else f"princ_P({self.rho})"
            base = f"{head} ^ princ_J({self.gamma})"
        else:
            head = "v_P" if self.rho == INF else f"princ_P({self.rho})"
            base = f"{head} ^ d({self.gamma})"
        if self.closes_zero:
            base += " ^ princ_(0)"
        return base


def validate_val_op(op: ValOp, group: ValueGroup, include_zero: bool = False) -> None:
    """Reject parameter combinations that do not describe an operation."""
    rho, gamma = op.rho, op.gamma
    if rho != INF:
        rho = Fraction(rho)
        if rho < 0:
            raise InputError("rho must be a nonnegative rational or inf")
        if group.kind == Z and not group.contains(rho):
            raise InputError("for a discrete group rho must be a group element")
    if gamma == INF:
        if rho != INF:
            raise InputError("gamma = inf forces rho = inf")
        if op.closes_J_gamma:
            raise InputError("gamma = inf leaves no J(gamma) to close")
    elif gamma != NEG_INF:
        gamma = Fraction(gamma)
        if not group.dense:
            raise InputError(
                "a discrete group has no separate J-ideals; use gamma = -inf"
            )
        if gamma < 0:
            raise InputError("gamma must be nonnegative, -inf or inf")
        if rho != INF and gamma > rho:
            raise InputError("gamma cannot exceed rho")
        if op.closes_J_gamma:
            if not group.contains(gamma):
                raise InputError(
                    "closing J(gamma) needs gamma in the value group; "
                    "otherwise J(gamma) = P(gamma)"
                )
        else:
            if gamma == 0:
                raise InputError(
                    "an open J-part at 0 is empty; use gamma = -inf"
                )
    else:
        if op.closes_J_gamma:
            raise InputError("gamma = -inf leaves no J(gamma) to close")
    if include_zero and rho == INF and not op.closes_zero:
        raise InputError(
            "rho = inf forces the zero ideal closed (it is the "
            "intersection of all P(a))"
        )


def op_closes(op: ValOp, i: ValIdeal, group: ValueGroup) -> bool:
    if i.is_zero():
        return op.closes_zero
    if i.kind == P_KIND:
        return op.rho == INF or i.delta <= op.rho
    if op.gamma == NEG_INF:
        return False
    if op.gamma == INF:
        return True
    if i.delta < op.gamma:
        return True
    return i.delta == op.gamma and op.closes_J_gamma


def val_evaluate(op: ValOp, i: ValIdeal, group: ValueGroup) -> ValIdeal:
    """The minimal closed ideal containing i."""
    validate_val_op(op, group, include_zero=i.is_zero() or op.closes_zero)
    i = _normalize(i, group)
    if op_closes(op, i, group):
        return i
    # smallest closed ideal overall: J(rho) when the J-part is closed at
    # gamma = rho, else P(rho); both need rho finite.
    def bottom() -> ValIdeal:
        if op.rho == INF:
            raise InternalError(
                "unreachable: rho = inf closes every P-ideal and the zero"
            )
        if op.closes_J_gamma and op.gamma == op.rho:
            return val_ideal(J_KIND, op.rho, group)
        return val_ideal(P_KIND, op.rho, group)

    if i.is_zero():
        return bottom()
    if i.kind == P_KIND:
        # not closed means rho finite and delta > rho
        return bottom()
    # an unclosed J(d): P(d) if d <= rho, else the global bottom
    if op.rho == INF or i.delta <= op.rho:
        return val_ideal(P_KIND, i.delta, group)
    return bottom()


@dataclass(frozen=True)
class OpFamilyDesc:
    name: str
    rho: str
    gamma: str
    zero_extensions: str

    def line(self) -> str:
        return (
            f"{self.name}: rho {self.rho}; gamma {self.gamma}; "
            f"zero extensions {self.zero_extensions}"
        )


def classify(group: ValueGroup, include_zero: bool = False) -> list[OpFamilyDesc]:
    """The parametrized families of semiprime operations on the group.

    Discrete groups carry only the principal operations P(n) and the
    identity; dense groups add the families with a J-part, closed or
    open at gamma.  With the zero ideal included, every finite-rho
    operation has exactly two extensions (zero closed or not) while
    rho = inf extends uniquely.
    """
    ze_finite = "2" if include_zero else "1"
    ze_inf = "1"
    if not group.dense:
        return [
            OpFamilyDesc(
                "princ_P(rho)", "in Gamma, 0 <= rho < inf", "-inf", ze_finite
            ),
            OpFamilyDesc(
                "v_P (identity on nonzero ideals)", "inf", "-inf", ze_inf
            ),
        ]
    return [
        OpFamilyDesc("princ_P(rho)", "0 <= rho < inf", "-inf", ze_finite),
        OpFamilyDesc("v_P", "inf", "-inf", ze_inf),
        OpFamilyDesc(
            "princ_P(rho) ^ princ_J(gamma)",
            "gamma <= rho <= inf",
            "in Gamma, 0 <= gamma < inf, J(gamma) closed",
            ze_finite + " if rho < inf else " + ze_inf,
        ),
        OpFamilyDesc(
            "princ_P(rho) ^ d(gamma)",
            "gamma <= rho <= inf",
            "0 < gamma <= inf, J(gamma) not closed",
            ze_finite + " if rho < inf else " + ze_inf,
        ),
    ]


def classify_lines(group: ValueGroup, include_zero: bool) -> list[str]:
    head = [
        f"value group: {group.describe()}"
        + (" (with zero ideal)" if include_zero else ""),
    ]
    return head + [f.line() for f in classify(group, include_zero)]


# -- cross-check against the finite chain ring -------------------------------


@dataclass(frozen=True)
class DvrCrosscheckReport:
    e: int
    p: int
    finite_op_count: int
    finite_nonzero_op_count: int
    symbolic_prefix_count: int
    prefix_pairs: tuple[tuple[int, str], ...]
    finite_zero_above_all: bool
    symbolic_zero_only_above_v: bool
    ok: bool

    def lines(self) -> list[str]:
        out = [
            f"chain ring F_{self.p}[x]/(x^{self.e}): "
            f"{self.finite_op_count} operations on the ideals "
            f"({self.finite_nonzero_op_count} without the zero ideal)",
            f"symbolic prefixes below level {self.e}: "
            f"{self.symbolic_prefix_count} principal operations",
        ]
        for k, name in self.prefix_pairs:
            out.append(f"prefix through (x^{k}) <-> {name}")
        out.append(
            "truncated ring: (x^k) below (0) for every k: "
            + ("yes" if self.finite_zero_above_all else "NO")
        )
        out.append(
            "symbolic model: (0) comparable only with V: "
            + ("yes" if self.symbolic_zero_only_above_v else "NO")
        )
        out.append("cross-check " + ("OK" if self.ok else "FAILED"))
        return out


def dvr_crosscheck(e: int, p: int = 2, bounds=None) -> DvrCrosscheckReport:
    """Compare the discrete symbolic model truncated at level e with the
    enumerated operations on the ideals of F_p[x]/(x^e).

    The nonzero prefix structure matches exactly; the structural
    difference is that in the truncated ring every (x^k) sits below the
    zero ideal in the multiplicative order, while for the valuation
    domain the zero ideal is comparable only with V.
    """
    from .finring import chain_ring, full_extension
    from .submodules import custom_family, family_ideals
    from .closures import enumerate_ops, mult_order

    if e < 1:
        raise InputError(f"nilpotency order must be at least 1, got {e}")
    ring = chain_ring(p, 1, e, bounds)
    ext = full_extension(ring)
    ideals = family_ideals(ext, bounds)
    finite_ops = enumerate_ops(ideals)
    nz = custom_family(
        ext, [m.space for m in ideals.members if not m.space.is_zero()]
    )
    finite_nz_ops = enumerate_ops(nz)

    group = ValueGroup(Z)
    # finite ideal (x^k) corresponds to P(k); the symbolic principal
    # operation at level k has closed prefix {V, P(1), ..., P(k)}
    pairs = []
    prefix_ok = True
    for k in range(e):
        closed_levels = {
            m
            for m in range(e)
            if op_closes(ValOp(Fraction(k), NEG_INF), val_ideal(P_KIND, m, group), group)
        }
        finite_closed = None
        for op in finite_nz_ops:
            levels = {e - nz.member(i).rank for i in op.closed}
            if levels == closed_levels:
                finite_closed = op
                break
        prefix_ok = prefix_ok and finite_closed is not None
        pairs.append((k, f"princ_P({k})"))

    order = mult_order(ideals)
    zero_idx = next(
        i for i, m in enumerate(ideals.members) if m.space.is_zero()
    )
    finite_zero_above_all = all(
        order.rel[i][zero_idx] for i in range(len(ideals))
    )
    v = val_ideal(P_KIND, 0, group)
    symbolic_zero_only_above_v = val_order(v, ZERO_IDEAL, group) and not any(
        val_order(val_ideal(P_KIND, k, group), ZERO_IDEAL, group)
        for k in range(1, e + 2)
    )
    ok = (
        prefix_ok
        and len(finite_ops) == e + 1
        and len(finite_nz_ops) == e
        and finite_zero_above_all
        and symbolic_zero_only_above_v
    )
    return DvrCrosscheckReport(
        e,
        p,
        len(finite_ops),
        len(finite_nz_ops),
        e,
        tuple(pairs),
        finite_zero_above_all,
        symbolic_zero_only_above_v,
        ok,
    )
