"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 resource-bound refusal,
3 internal invariant failure.  Every failure prints a single line
starting with "error:".  Output is byte-identical for identical inputs
regardless of the worker count.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .bounds import Bounds, default_bounds
from .errors import (
    InputError,
    InternalError,
    MultcloseError,
    ResourceBoundError,
)
from .closures import (
    ClosureOp,
    canonical_ideal,
    enumerate_ops,
    mult_order,
    oracle_enumerate,
)
from .config import load_config
from .finring import quotient_surjection
from .functorial import quotient_iso_check, quotient_of_extensions
from .linalg import format_subspace, parse_subspace, subspace_contains
from .starbridge import (
    cases_lines,
    fstar_count,
    star_count,
    survey,
    survey_lines,
    verify_twoext,
)
from .submodules import custom_family
from .valuation import (
    DENSE_Q,
    INF,
    NEG_INF,
    Z,
    Z_LOC_P,
    ValOp,
    ValueGroup,
    ZERO_IDEAL,
    classify_lines,
    dvr_crosscheck,
    val_colon,
    val_evaluate,
    val_ideal,
    val_order,
    validate_val_op,
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit(2); we want exit 1
        raise InputError(message)


_COMMON_FLAGS = (
    ("--max-dim", dict(type=int, help="override the ambient dimension bound")),
    ("--oracle-max", dict(type=int, help="override the oracle family-size bound")),
    ("--workers", dict(type=int, help="parallel workers for survey rows")),
    ("--format", dict(choices=("text", "tsv"))),
)

_COMMON_DEFAULTS = {"max_dim": None, "oracle_max": None, "workers": 1,
                    "format": "text"}


def _build_parser() -> _Parser:
    parser = _Parser(prog="multclose", add_help=True)
    for flag, kw in _COMMON_FLAGS:
        parser.add_argument(flag, default=argparse.SUPPRESS, **kw)
    common = argparse.ArgumentParser(add_help=False)
    for flag, kw in _COMMON_FLAGS:
        common.add_argument(flag, default=argparse.SUPPRESS, **kw)
    sub = parser.add_subparsers(dest="command", required=True,
                                parser_class=_Parser)

    p_sub = sub.add_parser("submodules", help="list the configured family",
                           parents=[common])
    p_sub.add_argument("--config", required=True)
    p_sub.add_argument("--family", default=None)

    p_ord = sub.add_parser("order", help="multiplicative order of the family",
                           parents=[common])
    p_ord.add_argument("--config", required=True)
    p_ord.add_argument("--family", default=None)

    p_enum = sub.add_parser("enumerate", help="all multiplicative operations",
                            parents=[common])
    p_enum.add_argument("--config", required=True)
    p_enum.add_argument("--family", default=None)
    p_enum.add_argument("--count-only", action="store_true")

    p_orc = sub.add_parser("oracle", help="brute-force operation search",
                           parents=[common])
    p_orc.add_argument("--config", required=True)
    p_orc.add_argument("--family", default=None)
    p_orc.add_argument("--count-only", action="store_true")

    for name in ("star-count", "fstar-count"):
        p_cnt = sub.add_parser(name, parents=[common],
                               help=f"{name} of the configured extension")
        p_cnt.add_argument("--config", required=True)

    p_cases = sub.add_parser("cases", parents=[common],
                             help="Artinian shapes of a given length")
    p_cases.add_argument("--n", type=int, required=True)

    p_survey = sub.add_parser("survey", parents=[common],
                              help="operation counts per shape")
    p_survey.add_argument("--n", type=int, required=True)
    p_survey.add_argument("--p", type=int, default=2)

    p_verify = sub.add_parser("verify", parents=[common],
                              help="built-in verification runs")
    p_verify.add_argument("what", choices=("twoext",))

    p_quot = sub.add_parser(
        "quotient", parents=[common],
        help="operation pairing along a quotient of extensions",
    )
    p_quot.add_argument("--config", required=True)
    p_quot.add_argument("--family", default=None)
    p_quot.add_argument("--kernel", required=True,
                        help="ideal to quotient by, as a serialized subspace")

    p_val = sub.add_parser("valuation", parents=[common],
                           help="symbolic valuation-domain model")
    vsub = p_val.add_subparsers(dest="valcommand", required=True,
                                parser_class=_Parser)

    def add_group_args(q):
        q.add_argument("--gamma-kind", choices=("z", "dense", "zloc"),
                       default="dense")
        q.add_argument("--gen", default="1",
                       help="generator of a discrete value group")
        q.add_argument("--loc-prime", type=int, default=2,
                       help="denominator prime for the zloc group")

    v_colon = vsub.add_parser("colon", parents=[common],
                              help="residual of two ideals")
    add_group_args(v_colon)
    v_colon.add_argument("--lhs", required=True)
    v_colon.add_argument("--rhs", required=True)

    v_order = vsub.add_parser("order", parents=[common],
                              help="multiplicative order test")
    add_group_args(v_order)
    v_order.add_argument("--lhs", required=True)
    v_order.add_argument("--rhs", required=True)

    v_cls = vsub.add_parser("classify", parents=[common],
                            help="families of semiprime operations")
    add_group_args(v_cls)
    v_cls.add_argument("--include-zero", action="store_true")

    v_eval = vsub.add_parser("eval", parents=[common],
                             help="evaluate an operation on an ideal")
    add_group_args(v_eval)
    v_eval.add_argument("--rho", required=True)
    v_eval.add_argument("--gamma", default="-inf")
    v_eval.add_argument("--closes-j", action="store_true")
    v_eval.add_argument("--closes-zero", action="store_true")
    v_eval.add_argument("--ideal", required=True)

    v_dvr = vsub.add_parser("dvr-check", parents=[common],
                            help="discrete model vs finite chain ring")
    v_dvr.add_argument("--e", type=int, required=True)
    v_dvr.add_argument("--p", type=int, default=2)

    return parser


def _bounds_from_args(args) -> Bounds:
    base = default_bounds()
    max_dim = args.max_dim if args.max_dim is not None else base.max_dim
    oracle_max = (
        args.oracle_max if args.oracle_max is not None else base.oracle_max
    )
    return Bounds(max_dim=max_dim, max_prime=base.max_prime,
                  oracle_max=oracle_max)


def _family_from_args(args, bounds: Bounds):
    cfg = load_config(args.config)
    if getattr(args, "family", None):
        cfg.family = args.family
        if cfg.family != "custom":
            cfg.members = ()
    return cfg.build_family(bounds)


def _print(lines) -> None:
    for line in lines:
        sys.stdout.write(line + "\n")


def _op_lines(fam, ops: list[ClosureOp], tsv: bool) -> list[str]:
    lines = []
    for k, op in enumerate(ops):
        if tsv:
            closed = ",".join(str(i) for i in sorted(op.closed))
            table = ",".join(str(t) for t in op.table)
            lines.append(f"{k}\t{closed}\t{table}")
        else:
            lines.append(f"op {k}: {op.describe()}")
            for i in range(len(fam)):
                lines.append(f"  {i} -> {op.evaluate(i)}")
    return lines


def _parse_val_group(args) -> ValueGroup:
    kind = {"z": Z, "dense": DENSE_Q, "zloc": Z_LOC_P}[args.gamma_kind]
    try:
        gen = Fraction(args.gen)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad generator {args.gen!r}") from exc
    return ValueGroup(kind, gen=gen, loc_prime=args.loc_prime)


def _parse_val_ideal(text: str, group: ValueGroup):
    text = text.strip()
    if text in ("0", "zero", "(0)"):
        return ZERO_IDEAL
    if text in ("V", "v"):
        return val_ideal("P", 0, group)
    if ":" not in text:
        raise InputError(
            f"bad ideal {text!r}; expected P:<rational>, J:<rational>, V or 0"
        )
    kind, _, raw = text.partition(":")
    kind = kind.strip().upper()
    if kind not in ("P", "J"):
        raise InputError(f"bad ideal kind {kind!r}; expected P or J")
    try:
        delta = Fraction(raw.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad ideal threshold {raw!r}") from exc
    return val_ideal(kind, delta, group)


def _parse_extended(text: str):
    text = text.strip().lower()
    if text in ("inf", "+inf", "infinity"):
        return INF
    if text == "-inf":
        return NEG_INF
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational {text!r}") from exc


def _run(args) -> None:
    bounds = _bounds_from_args(args)
    tsv = args.format == "tsv"

    if args.command == "submodules":
        fam = _family_from_args(args, bounds)
        _print(fam.report_lines())

    elif args.command == "order":
        fam = _family_from_args(args, bounds)
        order = mult_order(fam)
        _print(order.report_lines())
        omega = canonical_ideal(fam)
        if omega is not None:
            _print([f"canonical ideal: member {omega}"])

    elif args.command == "enumerate":
        fam = _family_from_args(args, bounds)
        ops = enumerate_ops(fam)
        if args.count_only:
            _print([str(len(ops))])
        else:
            _print(_op_lines(fam, ops, tsv))
            _print([f"total: {len(ops)}"])

    elif args.command == "oracle":
        fam = _family_from_args(args, bounds)
        maps = oracle_enumerate(fam, bounds)
        if args.count_only:
            _print([str(len(maps))])
        else:
            for k, t in enumerate(maps):
                _print([f"map {k}: " + ",".join(str(v) for v in t)])
            _print([f"total: {len(maps)}"])

    elif args.command in ("star-count", "fstar-count"):
        cfg = load_config(args.config)
        ext = cfg.build_extension(bounds)
        fn = star_count if args.command == "star-count" else fstar_count
        _print([str(fn(ext, bounds))])

    elif args.command == "cases":
        _print(cases_lines(args.n, tsv))

    elif args.command == "survey":
        rows = survey(args.n, args.p, bounds, workers=args.workers)
        _print(survey_lines(rows, tsv))

    elif args.command == "verify":
        report = verify_twoext(bounds)
        _print(report.lines())
        if not report.ok:
            raise InternalError("twoext verification failed")

    elif args.command == "quotient":
        fam = _family_from_args(args, bounds)
        ext = fam.ext
        ring = ext.ring
        ideal = parse_subspace(args.kernel, ring.p, ring.dim)
        phi = quotient_surjection(ring, ideal)
        q = quotient_of_extensions(ext, phi)
        kept = [
            m.space
            for m in fam.members
            if subspace_contains(m.space, phi.kernel)
        ]
        if not kept:
            raise InputError("no family member contains the kernel")
        above = custom_family(ext, kept)
        report = quotient_iso_check(q, above)
        _print(report.lines())
        if not report.ok:
            raise InternalError("quotient pairing is not an isomorphism")

    elif args.command == "valuation":
        if args.valcommand == "dvr-check":
            report = dvr_crosscheck(args.e, args.p, bounds)
            _print(report.lines())
            if not report.ok:
                raise InternalError("dvr cross-check failed")
            return
        group = _parse_val_group(args)
        if args.valcommand == "colon":
            lhs = _parse_val_ideal(args.lhs, group)
            rhs = _parse_val_ideal(args.rhs, group)
            _print([str(val_colon(lhs, rhs, group))])
        elif args.valcommand == "order":
            lhs = _parse_val_ideal(args.lhs, group)
            rhs = _parse_val_ideal(args.rhs, group)
            below = val_order(lhs, rhs, group)
            _print([f"{lhs} <= {rhs}: " + ("yes" if below else "no")])
        elif args.valcommand == "classify":
            _print(classify_lines(group, args.include_zero))
        elif args.valcommand == "eval":
            op = ValOp(
                _parse_extended(args.rho),
                _parse_extended(args.gamma),
                closes_J_gamma=args.closes_j,
                closes_zero=args.closes_zero,
            )
            ideal = _parse_val_ideal(args.ideal, group)
            validate_val_op(op, group,
                            include_zero=ideal.is_zero() or op.closes_zero)
            _print([str(val_evaluate(op, ideal, group))])


_NEGATIVE_VALUE_FLAGS = ("--gamma", "--rho", "--gen")


def _merge_negative_values(argv: list[str]) -> list[str]:
    """Join value flags with arguments like "-inf" that argparse would
    otherwise read as options."""
    out = []
    skip = False
    for k, tok in enumerate(argv):
        if skip:
            skip = False
            continue
        if (
            tok in _NEGATIVE_VALUE_FLAGS
            and k + 1 < len(argv)
            and argv[k + 1].startswith("-")
        ):
            out.append(f"{tok}={argv[k + 1]}")
            skip = True
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_merge_negative_values(list(argv)))
        for attr, value in _COMMON_DEFAULTS.items():
            if not hasattr(args, attr):
                setattr(args, attr, value)
        _run(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except ResourceBoundError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except (InternalError, AssertionError) as exc:
        sys.stderr.write(f"error: internal invariant failure: {exc}\n")
        return 3
    except MultcloseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
