"""Transport of multiplicative operations along quotients of extensions.

A quotient of extensions is a surjection phi: B -> B' with
phi^-1(A') = A.  Operations pull back along phi by
I |-> phi^-1(phi(I)*), push forward by I' |-> phi(phi^-1(I')*), and
when every member of the source family contains ker phi the two maps
are inverse bijections, giving the quotient isomorphism of operation
sets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputError, InternalError, UnsupportedFamilyError
from .finring import RingExtension, RingSurjection
from .linalg import Subspace, subspace_contains
from .submodules import ModuleFamily, custom_family
from .closures import ClosureOp, enumerate_ops, op_from_table, oracle_enumerate


@dataclass(frozen=True)
class ExtensionQuotient:
    """phi: B -> B' restricting to a quotient of A <= B onto A' <= B'."""

    source: RingExtension
    target: RingExtension
    phi: RingSurjection

    def __post_init__(self):
        if self.phi.source != self.source.ring:
            raise InputError("surjection source does not match the extension")
        if self.phi.target != self.target.ring:
            raise InputError("surjection target does not match the extension")
        if self.phi.preimage(self.target.subring) != self.source.subring:
            raise InputError(
                "not a quotient of extensions: phi^-1(A') differs from A"
            )


def quotient_of_extensions(
    source: RingExtension, phi: RingSurjection
) -> ExtensionQuotient:
    """Build the target extension A' = phi(A) and validate the quotient."""
    target = RingExtension(phi.target, phi.image(source.subring))
    return ExtensionQuotient(source, target, phi)


def pullback_family(q: ExtensionQuotient, family: ModuleFamily) -> ModuleFamily:
    """phi^-1 of a family on the target, as a family on the source."""
    if family.ext != q.target:
        raise InputError("family does not live on the quotient target")
    spaces = [q.phi.preimage(m.space) for m in family.members]
    return custom_family(q.source, spaces)


def pushforward_family(q: ExtensionQuotient, family: ModuleFamily) -> ModuleFamily:
    """phi of a family on the source; distinct members may collide."""
    if family.ext != q.source:
        raise InputError("family does not live on the quotient source")
    spaces = {q.phi.image(m.space) for m in family.members}
    return custom_family(q.target, sorted(spaces, key=lambda s: (s.rank, s.rows)))


def pullback_op(
    q: ExtensionQuotient, op: ClosureOp, family: ModuleFamily | None = None
) -> ClosureOp:
    """The operation I |-> phi^-1(phi(I)*) on phi^-1 of the target family."""
    if not op.family.upward_closed:
        raise UnsupportedFamilyError("pullback needs an upward closed family")
    if family is None:
        family = pullback_family(q, op.family)
    table = []
    for m in family.members:
        image = q.phi.image(m.space)
        j = op.family.index_of(image)
        if j is None:
            raise InternalError("image of a pulled-back member escaped")
        closed_image = op.family.member(op.evaluate(j)).space
        back = q.phi.preimage(closed_image)
        k = family.index_of(back)
        if k is None:
            raise InternalError("pullback evaluation left the family")
        table.append(k)
    return op_from_table(family, table)


def pushforward_op(
    q: ExtensionQuotient, op: ClosureOp, family: ModuleFamily | None = None
) -> ClosureOp:
    """The operation I' |-> phi(phi^-1(I')*) on phi of the source family."""
    if not op.family.upward_closed:
        raise UnsupportedFamilyError("pushforward needs an upward closed family")
    if family is None:
        family = pushforward_family(q, op.family)
    table = []
    for m in family.members:
        pre = q.phi.preimage(m.space)
        j = op.family.index_of(pre)
        if j is None:
            raise InternalError(
                "full preimage of a pushed member is not in the source family"
            )
        closed_pre = op.family.member(op.evaluate(j)).space
        fwd = q.phi.image(closed_pre)
        k = family.index_of(fwd)
        if k is None:
            raise InternalError("pushforward evaluation left the family")
        table.append(k)
    return op_from_table(family, table)


def _ops_on(family: ModuleFamily) -> list[ClosureOp]:
    if family.upward_closed:
        return enumerate_ops(family)
    return [op_from_table(family, t) for t in oracle_enumerate(family)]


@dataclass(frozen=True)
class QuotientIsoReport:
    ok: bool
    pairs: tuple[tuple[int, int], ...]
    source_count: int
    target_count: int

    def lines(self) -> list[str]:
        out = [
            f"source ops: {self.source_count}",
            f"target ops: {self.target_count}",
        ]
        for a, b in self.pairs:
            out.append(f"op {a} (source) <-> op {b} (target)")
        out.append(
            "bijection preserving order: " + ("OK" if self.ok else "FAILED")
        )
        return out


def quotient_iso_check(
    q: ExtensionQuotient, family: ModuleFamily
) -> QuotientIsoReport:
    """Verify that transport along phi is an order bijection between the
    operation sets of a family whose members all contain ker phi and of
    its image family."""
    ker = q.phi.kernel
    for m in family.members:
        if not subspace_contains(m.space, ker):
            raise InputError(
                "quotient isomorphism needs every member to contain the kernel"
            )
    image_family = pushforward_family(q, family)
    if len(image_family) != len(family):
        raise InternalError(
            "members above the kernel collided in the image family"
        )
    src_ops = _ops_on(family)
    tgt_ops = _ops_on(image_family)

    # transport closed sets through the member bijection
    fwd_member = [
        image_family.index_of(q.phi.image(m.space)) for m in family.members
    ]
    pairs = []
    ok = len(src_ops) == len(tgt_ops)
    seen = set()
    for a, op in enumerate(src_ops):
        closed_image = frozenset(fwd_member[i] for i in op.closed)
        match = None
        for b, other in enumerate(tgt_ops):
            if other.closed == closed_image:
                match = b
                break
        if match is None or match in seen:
            ok = False
            continue
        seen.add(match)
        pairs.append((a, match))
    if ok:
        for (a1, b1) in pairs:
            for (a2, b2) in pairs:
                le_src = src_ops[a1].leq(src_ops[a2])
                le_tgt = tgt_ops[b1].leq(tgt_ops[b2])
                if le_src != le_tgt:
                    ok = False
    return QuotientIsoReport(ok, tuple(pairs), len(src_ops), len(tgt_ops))
