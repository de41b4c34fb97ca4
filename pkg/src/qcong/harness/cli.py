"""``qcong`` command line.

Exit status: 0 when everything verified, 1 on a theorem or identity failure,
2 on a conjecture counterexample, 64 on a usage error.
"""

from __future__ import annotations

import argparse
import sys

from qcong import __version__
from qcong._backend import NAME as BACKEND
from qcong.congruence import STRATEGIES, factor_cyclotomic
from qcong.cyclotomic import (
    EMPTY,
    qbinomial_signature,
    qint_signature,
    super_catalan_signature,
)
from qcong.errors import ConstraintViolation, QCongError, UnknownFamily
from qcong.families.registry import CONJECTURE, FAMILIES, IDENTITY, get_family
from qcong.harness.config import ConfigError, load_config
from qcong.harness.log import format_table, read_log, summarise
from qcong.harness.sweep import exit_status, run_sweep
from qcong.laurent import parse

EXIT_OK, EXIT_FAILURE, EXIT_COUNTEREXAMPLE, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def split_params(text: str) -> dict:
    """Parse ``k=v,k=v`` where values may be bracketed lists like ``[1,2]``."""
    out: dict = {}
    if not text:
        return out
    depth, cur, parts = 0, [], []
    for ch in text:
        if ch in "[(":
            depth += 1
        elif ch in "])":
            depth -= 1
            if depth < 0:
                raise UsageError(f"unbalanced brackets in {text!r}")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise UsageError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    for part in parts:
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise UsageError(f"expected key=value, got {part!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        if key in out:
            raise UsageError(f"parameter {key!r} given twice")
        out[key] = value
    return out


def _format_params(params: dict, order) -> str:
    def fmt(v):
        return "[" + ",".join(map(str, v)) + "]" if isinstance(v, tuple) else str(v)

    return ",".join(f"{k}={fmt(params[k])}" for k in order if k in params)


def _cmd_verify(args) -> int:
    fam = get_family(args.family)
    params = split_params(args.params)
    try:
        norm = fam.normalise(params)
        verdict = fam(params, args.variant, args.strategy, args.conjectural)
    except ConstraintViolation as exc:
        print(f"{fam.id}: parameters outside the proven range: {exc}", file=sys.stderr)
        print("(pass --conjectural to check anyway)", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(str(exc)) from exc
    variant = args.variant or fam.variants[0]
    if verdict.holds:
        outcome = "holds"
    else:
        outcome = "COUNTEREXAMPLE" if fam.kind == CONJECTURE else "FAILS"
    print(f"{fam.id} {_format_params(norm, fam.param_names)} variant={variant}: {outcome} "
          f"[{verdict.strategy}, modulus {verdict.modulus}, {verdict.elapsed * 1000:.1f} ms]")
    if not verdict.holds and verdict.failed_factor:
        print(f"  first failing factor: {verdict.failed_factor}")
    if verdict.holds and args.show_quotient and verdict.quotient is not None:
        print(verdict.quotient)
    if args.fingerprint and verdict.holds:
        fp = verdict.fingerprint()
        print(f"  span {fp['span']} head {fp['head']} tail {fp['tail']} hash {fp['hash']}")
    if verdict.holds:
        return EXIT_OK
    return EXIT_COUNTEREXAMPLE if fam.kind == CONJECTURE else EXIT_FAILURE


def _cmd_identity(args) -> int:
    fam = get_family(args.kind)
    if fam.kind != IDENTITY:
        raise UsageError(f"{args.kind} is not an identity; use 'verify'")
    args.family, args.strategy, args.conjectural = args.kind, "both", False
    args.fingerprint = False
    return _cmd_verify(args)


def _cmd_sweep(args) -> int:
    try:
        cfg = load_config(args.config)
    except (OSError, ConfigError, UnknownFamily) as exc:
        raise UsageError(str(exc)) from exc
    if args.workers is not None:
        cfg.workers = args.workers
    if args.resume:
        cfg.resume = True
    if args.output:
        cfg.output = args.output
    try:
        report = run_sweep(cfg)
    except ConfigError as exc:
        raise UsageError(str(exc)) from exc
    print(report.render())
    return exit_status(report)


def _cmd_report(args) -> int:
    try:
        records = read_log(args.log)
    except (OSError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    summary = summarise(records)
    print(format_table(summary))
    if summary.counts["failed"]:
        return EXIT_FAILURE
    if summary.counts["counterexample"]:
        return EXIT_COUNTEREXAMPLE
    return EXIT_OK


def _cmd_factor(args) -> int:
    if args.qbinomial:
        m, k = args.qbinomial
        sig = qbinomial_signature(m, k)
    elif args.qfactorial is not None:
        sig = EMPTY
        for i in range(1, args.qfactorial + 1):
            sig = sig * qint_signature(i)
    elif args.qint is not None:
        sig = qint_signature(args.qint)
    elif args.super_catalan:
        sig = super_catalan_signature(*args.super_catalan)
    else:
        sig, cofactor = factor_cyclotomic(parse(args.poly))
        text = sig.render() or "1"
        if cofactor != parse("1"):
            text += f" · ({cofactor})"
        print(text)
        return EXIT_OK
    print(sig.render() or "1")
    return EXIT_OK


def _cmd_list(args) -> int:
    for fam in FAMILIES.values():
        if args.kind and fam.kind != args.kind:
            continue
        print(f"{fam.id:<12} {fam.kind:<10} variants={','.join(fam.variants):<9} "
              f"params={','.join(fam.param_names)}  {fam.description}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qcong", description="Exact q-congruence verification.")
    parser.add_argument("--version", action="version", version=f"qcong {__version__} ({BACKEND} kernels)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="decide one parameter tuple")
    v.add_argument("family", help="family id (see 'qcong list')")
    v.add_argument("--params", default="", help="k=v pairs, e.g. m=2,n=[1,3],j=0,r=1")
    v.add_argument("--variant", default=None, help="plus/minus, or the family's own variants")
    v.add_argument("--strategy", default="both", choices=STRATEGIES)
    v.add_argument("--conjectural", action="store_true", help="lift proven parameter bounds")
    v.add_argument("--show-quotient", action="store_true", help="print the exact quotient")
    v.add_argument("--fingerprint", action="store_true", help="print the quotient fingerprint")
    v.set_defaults(func=_cmd_verify)

    s = sub.add_parser("sweep", help="run a configured parameter sweep")
    s.add_argument("--config", required=True)
    s.add_argument("--workers", type=int, default=None)
    s.add_argument("--resume", action="store_true")
    s.add_argument("--output", default=None)
    s.set_defaults(func=_cmd_sweep)

    f = sub.add_parser("factor", help="print a cyclotomic signature")
    g = f.add_mutually_exclusive_group(required=True)
    g.add_argument("--qbinomial", nargs=2, type=int, metavar=("M", "K"))
    g.add_argument("--qfactorial", type=int, metavar="N")
    g.add_argument("--qint", type=int, metavar="N")
    g.add_argument("--super-catalan", nargs=2, type=int, metavar=("M", "N"))
    g.add_argument("--poly", metavar="TEXT", help="factor a polynomial such as '1 - q^6'")
    f.set_defaults(func=_cmd_factor)

    i = sub.add_parser("identity", help="check one identity instance")
    i.add_argument("kind", help="identity id, e.g. qbt, chu, dixon_full, lemma21")
    i.add_argument("--params", default="")
    i.add_argument("--variant", default=None)
    i.add_argument("--show-quotient", action="store_true", help="print the common value")
    i.set_defaults(func=_cmd_identity)

    r = sub.add_parser("report", help="summarise a sweep log")
    r.add_argument("--log", required=True)
    r.set_defaults(func=_cmd_report)

    lst = sub.add_parser("list", help="list family ids")
    lst.add_argument("--kind", choices=("theorem", "identity", "conjecture"))
    lst.set_defaults(func=_cmd_list)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UnknownFamily as exc:
        print(f"qcong: {exc.args[0]}", file=sys.stderr)
        return EXIT_USAGE
    except UsageError as exc:
        print(f"qcong: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except QCongError as exc:
        print(f"qcong: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
