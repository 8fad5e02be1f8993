"""Counting star-type operations through finite Artinian data.

For a one-dimensional analytically unramified local Noetherian domain,
the fractional-star operations correspond bijectively to the
multiplicative operations on the family F0 of the conductor quotient
extension A <= B, and the star operations to those closing A.  When A
is the residue field, B is a finite product of chain rings
GF(p^f_i)[x]/(x^e_i) with sum e_i*f_i equal to the conductor length n,
so for fixed n only finitely many shapes occur; survey() enumerates
them all and counts operations per shape.  The domain-side objects are
never constructed: the counts are computed entirely on the finite side.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .bounds import Bounds, default_bounds
from .errors import InputError, InternalError, ResourceBoundError
from .finring import RingExtension, chain_ring, prime_diagonal_extension, product_ring
from .submodules import (
    enumerate_submodules,
    family_f0,
    generated_submodule,
)
from .closures import check_multiplicative, enumerate_ops, generated_op


@dataclass(frozen=True, order=True)
class ArtinianShape:
    """A multiset of local-factor invariants (e_i, f_i) with its length.

    parts are sorted descending by (e*f, e, f); n = sum of e_i * f_i.
    """

    parts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.parts:
            raise InputError("a shape needs at least one local factor")
        if any(e < 1 or f < 1 for e, f in self.parts):
            raise InputError("shape parts must have e >= 1 and f >= 1")
        key = [(-e * f, -e, -f) for e, f in self.parts]
        if key != sorted(key):
            raise InputError("shape parts are not in canonical order")

    @property
    def t(self) -> int:
        return len(self.parts)

    @property
    def n(self) -> int:
        return sum(e * f for e, f in self.parts)

    def describe(self) -> str:
        return "+".join(f"(e={e},f={f})" for e, f in self.parts)


def _part_key(part: tuple[int, int]) -> tuple[int, int, int]:
    e, f = part
    return (e * f, e, f)


def structure_cases(n: int) -> list[ArtinianShape]:
    """All multisets {(e_i, f_i)} with sum e_i*f_i = n, in canonical
    order (parts descending, shapes lexicographically descending)."""
    if n < 1:
        raise InputError(f"length must be at least 1, got {n}")

    def parts_upto(total: int, cap: tuple[int, int, int]):
        if total == 0:
            yield ()
            return
        candidates = [
            (e, f)
            for e in range(1, total + 1)
            for f in range(1, total // e + 1)
            if e * f <= total and _part_key((e, f)) <= cap
        ]
        candidates.sort(key=_part_key, reverse=True)
        for part in candidates:
            e, f = part
            for rest in parts_upto(total - e * f, _part_key(part)):
                yield (part,) + rest

    shapes = [
        ArtinianShape(parts) for parts in parts_upto(n, (n + 1, n + 1, n + 1))
    ]
    shapes.sort(key=lambda s: [_part_key(p) for p in s.parts], reverse=True)
    return shapes


def count_structure_cases_bruteforce(n: int) -> int:
    """Independent recount by exhausting all ordered tuples; test oracle."""
    seen = set()

    def rec(total: int, acc: tuple):
        if total == 0:
            seen.add(tuple(sorted(acc)))
            return
        for e in range(1, total + 1):
            for f in range(1, total + 1):
                if e * f <= total:
                    rec(total - e * f, acc + ((e, f),))

    rec(n, ())
    return len(seen)


def realize_shape(
    shape: ArtinianShape, p: int, bounds: Bounds | None = None
) -> RingExtension:
    """A = F_p <= B = product of GF(p^f_i)[x]/(x^e_i)."""
    bounds = bounds or default_bounds()
    bounds.check_ring(p, shape.n)
    factors = [chain_ring(p, f, e, bounds) for e, f in shape.parts]
    return prime_diagonal_extension(product_ring(factors, bounds))


def fstar_count(ext: RingExtension, bounds: Bounds | None = None) -> int:
    """Number of multiplicative operations on (A, B, F0); this equals the
    number of fractional-star operations of any domain whose conductor
    quotient realizes the extension."""
    return len(enumerate_ops(family_f0(ext, bounds)))


def star_count(ext: RingExtension, bounds: Bounds | None = None) -> int:
    """Number of F0-operations that close the member A."""
    fam = family_f0(ext, bounds)
    a_idx = fam.index_of(ext.subring)
    if a_idx is None:
        raise InternalError("A is missing from its own F0 family")
    return sum(1 for op in enumerate_ops(fam) if op.is_closed(a_idx))


@dataclass(frozen=True)
class SurveyRow:
    shape: ArtinianShape
    dim: int
    fstar: int | None
    star: int | None

    @property
    def skipped(self) -> bool:
        return self.fstar is None


def _survey_row(args) -> SurveyRow:
    shape, p, bounds = args
    try:
        ext = realize_shape(shape, p, bounds)
    except ResourceBoundError:
        return SurveyRow(shape, shape.n, None, None)
    fam = family_f0(ext, bounds)
    ops = enumerate_ops(fam)
    a_idx = fam.index_of(ext.subring)
    return SurveyRow(
        shape,
        shape.n,
        len(ops),
        sum(1 for op in ops if op.is_closed(a_idx)),
    )


def survey(
    n: int,
    p: int = 2,
    bounds: Bounds | None = None,
    workers: int = 1,
) -> list[SurveyRow]:
    """fstar_count and star_count for every shape of length n.

    Rows over the safety bound are reported as skipped instead of
    failing.  Rows are independent; with workers > 1 they are computed
    in a process pool and reassembled in shape order, so the result is
    identical for any worker count.
    """
    bounds = bounds or default_bounds()
    shapes = structure_cases(n)
    jobs = [(shape, p, bounds) for shape in shapes]
    if workers <= 1 or len(jobs) <= 1:
        return [_survey_row(job) for job in jobs]
    try:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_survey_row, jobs))
    except (OSError, PermissionError):
        # no process support in this environment; fall back to serial
        return [_survey_row(job) for job in jobs]


def survey_lines(rows: list[SurveyRow], tsv: bool = False) -> list[str]:
    header = ("idx", "shape", "dim", "fstar", "star")
    body = [
        (
            str(k),
            row.shape.describe(),
            str(row.dim),
            "skipped" if row.fstar is None else str(row.fstar),
            "skipped" if row.star is None else str(row.star),
        )
        for k, row in enumerate(rows)
    ]
    fsum = sum(row.fstar or 0 for row in rows)
    ssum = sum(row.star or 0 for row in rows)
    total = f"total: {len(rows)} shapes, fstar sum = {fsum}, star sum = {ssum}"
    if tsv:
        return ["\t".join(header)] + ["\t".join(r) for r in body] + [total]
    widths = [
        max(len(header[c]), *(len(r[c]) for r in body)) if body else len(header[c])
        for c in range(len(header))
    ]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header).rstrip()] + [
        fmt.format(*r).rstrip() for r in body
    ] + [total]


def cases_lines(n: int, tsv: bool = False) -> list[str]:
    shapes = structure_cases(n)
    header = ("idx", "t", "shape")
    body = [
        (str(k), str(s.t), s.describe()) for k, s in enumerate(shapes)
    ]
    total = f"total: {len(shapes)}"
    if tsv:
        return ["\t".join(header)] + ["\t".join(r) for r in body] + [total]
    widths = [
        max(len(header[c]), *(len(r[c]) for r in body)) for c in range(len(header))
    ]
    fmt = "  ".join(f"{{:<{w}}}" for w in widths)
    return [fmt.format(*header).rstrip()] + [
        fmt.format(*r).rstrip() for r in body
    ] + [total]


@dataclass(frozen=True)
class TwoextReport:
    colon_lines: tuple[str, ...]
    sharp_line: str
    injectivity_line: str
    ok: bool

    def lines(self) -> list[str]:
        return list(self.colon_lines) + [self.sharp_line, self.injectivity_line]


def verify_twoext(bounds: Bounds | None = None) -> TwoextReport:
    """Reproduce the colon chain and the generated-operation computation
    in A = F_2 <= B = F_2[x]/(x^3), and exhibit that restricting
    operations from the nonzero submodules down to F0 is not injective.
    """
    B = chain_ring(2, 1, 3, bounds)
    ext = prime_diagonal_extension(B)
    fam = enumerate_submodules(ext, bounds)

    span1 = generated_submodule(ext, [(1, 0, 0)])
    spanx = generated_submodule(ext, [(0, 1, 0)])
    spanx2 = generated_submodule(ext, [(0, 0, 1)])
    ibar = generated_submodule(ext, [(1, 0, 0), (0, 0, 1)])
    spanxx2 = generated_submodule(ext, [(0, 1, 0), (0, 0, 1)])

    from .submodules import colon_module

    checks = [
        (span1, spanx, spanx2),
        (span1, spanx2, spanxx2),
        (ibar, spanx, spanxx2),
    ]
    colon_lines = []
    ok = True
    for lhs, rhs, expected in checks:
        got = colon_module(lhs, rhs)
        ok = ok and got.space == expected.space
        colon_lines.append(f"({lhs} : {rhs}) = {got}")

    sharp = generated_op(
        fam, [fam.index_of(span1.space), fam.index_of(ibar.space)]
    )
    image = fam.member(sharp.evaluate(fam.index_of(spanx.space)))
    sharp_ok = image.space == spanxx2.space and image.space != spanx.space
    ok = ok and sharp_ok
    sharp_line = (
        f"J^# = {image} != J: " + ("OK" if sharp_ok else "FAILED")
    )

    # restriction from the nonzero submodules down to F0 is not an
    # isomorphism: the constant-to-B map is multiplicative on the larger
    # family, and some operation differs from the extension of its own
    # restriction, so two distinct operations restrict equally.
    from .submodules import family_all_nonzero
    from .closures import extend_op, restrict_op

    nz = family_all_nonzero(ext, bounds)
    f0 = family_f0(ext, bounds)
    const_table = tuple(nz.maximum for _ in range(len(nz)))
    const_ok = check_multiplicative(nz, const_table).ok
    witness = None
    for op in enumerate_ops(nz):
        if extend_op(restrict_op(op, f0), nz) != op:
            witness = op
            break
    inj_ok = const_ok and witness is not None
    ok = ok and inj_ok
    injectivity_line = (
        "restriction to F0 is not injective: "
        + ("OK" if inj_ok else "FAILED")
    )
    return TwoextReport(tuple(colon_lines), sharp_line, injectivity_line, ok)
