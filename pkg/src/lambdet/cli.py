"""Command-line front end.

Every verb writes exactly its artifact to stdout.  Diagnostics go to stderr.
Exit status is 0 on success, 1 on a domain error (a JSON object on stderr)
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from importlib import resources
from typing import Optional, Sequence

from . import __version__
from .asm import (
    DEFAULT_MAX_N,
    AsmError,
    ResourceLimit,
    Side,
    enumerate_asms,
    format_matrix,
    left_cumulant,
    parse_matrix,
    right_cumulant,
    validate_asm,
)
from .engine import (
    DEFAULT_VARIANT,
    InitMode,
    closed_form,
    condense,
    count_terms,
    determinant_rules,
    get_variant,
    init_pyramid,
    lambda_determinant_rules,
    load_registry,
    resolve_variants,
    specialize,
    verify_equivalence,
)
from .engine.conventions import REGISTRY, UnknownVariant
from .engine.verify import conventions_ledger
from .interlacing import OPERATORS, FanKind, InterlacingError
from .laurent import Family, LaurentError, deserialize, serialize, to_json_obj

SCHEMA_VERSION = 1
THREADS_ENV = "LAMBDET_THREADS"

SPECIALIZATIONS = {
    "determinant": determinant_rules,
    "lambda": lambda_determinant_rules,
    "mu-one": lambda: {Family.MU: 1},
    "x0-one": lambda: {Family.X0: 1},
}


def load_schema(name: str) -> dict:
    """Shipped JSON schema for a verb's ``--format json`` output (or ``error``)."""
    text = resources.files("lambdet").joinpath("schemas", f"{name.replace('-', '_')}.json").read_text()
    return json.loads(text)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N,
                   help="refuse sizes above this without --force")
    p.add_argument("--force", action="store_true")
    p.add_argument("--registry", metavar="PATH",
                   help="JSON list of extra convention variants")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="lambdet", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    p = sub.add_parser("enumerate", parents=[common], help="list ASM(n) in lex order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--count-only", action="store_true")

    p = sub.add_parser("cumulant", parents=[common], help="cumulant matrix of an ASM")
    p.add_argument("--side", choices=("left", "right"), default="left")
    p.add_argument("--file", help="matrix file (default: stdin)")

    p = sub.add_parser("fan", parents=[common], help="interlacing fan of an ASM")
    p.add_argument("--kind", choices=[k.value for k in FanKind], default=FanKind.DOWN_LEFT.value)
    p.add_argument("--file", help="matrix file (default: stdin)")

    p = sub.add_parser("condense", parents=[common], help="run the recurrence, print the apex")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--variant", default=DEFAULT_VARIANT)
    p.add_argument("--init", choices=("generic", "ones", "file"), default="generic")
    p.add_argument("--file", help='JSON {"x0": [[...]], "x1": [[...]]} for --init file')

    p = sub.add_parser("closed-form", parents=[common], help="sum over ASM pairs")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, help="defaults to n")
    p.add_argument("--variant", default=DEFAULT_VARIANT)

    for verb, helptext in (("verify", "compare condensation with the closed form"),
                           ("bench", "verify with wall-times")):
        p = sub.add_parser(verb, parents=[common], help=helptext)
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--variants", default="all")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--trials", type=int, default=3)
        p.add_argument("--numeric-only", action="store_true",
                       help="skip the symbolic comparison")
        p.add_argument("--no-exchange", action="store_true",
                       help="skip the per-B exchange identity check")

    p = sub.add_parser("count", parents=[common], help="closed-form term count")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("specialize", parents=[common], help="substitute into a polynomial")
    p.add_argument("--rule", choices=sorted(SPECIALIZATIONS), required=True)
    p.add_argument("--file", help="polynomial text file (default: stdin)")
    return parser


# -- helpers --------------------------------------------------------------


def _read_input(args, stdin) -> str:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return fh.read()
    return stdin.read()


def _guard(n: int, args):
    if n > args.max_n and not args.force:
        raise ResourceLimit(f"n={n} exceeds --max-n {args.max_n}; pass --force to proceed")


def _registry(args):
    return load_registry(args.registry) if args.registry else REGISTRY


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None


def _poly_obj(p):
    return {"text": serialize(p), "terms": to_json_obj(p)["terms"]}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# -- verbs ----------------------------------------------------------------


def cmd_enumerate(args, stdin):
    if args.n < 1:
        raise UsageError("--n must be positive")
    mats = enumerate_asms(args.n, args.n if args.force else args.max_n)
    if args.format == "json":
        obj = {"schema_version": SCHEMA_VERSION, "n": args.n, "count": len(mats)}
        if not args.count_only:
            obj["matrices"] = [[list(r) for r in m.rows] for m in mats]
        return _dump(obj)
    if args.count_only:
        return str(len(mats))
    return "\n\n".join(format_matrix(m.rows) for m in mats)


def cmd_cumulant(args, stdin):
    b = validate_asm(parse_matrix(_read_input(args, stdin)))
    c = left_cumulant(b) if Side(args.side) is Side.LEFT else right_cumulant(b)
    if args.format == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "side": args.side, "n": c.n,
                      "entries": [list(r) for r in c.entries]})
    return format_matrix(c.entries)


def cmd_fan(args, stdin):
    b = validate_asm(parse_matrix(_read_input(args, stdin)))
    fan = OPERATORS[FanKind(args.kind)](b)
    if args.format == "json":
        obj = fan.to_json_obj()
        obj["schema_version"] = SCHEMA_VERSION
        obj["sites"] = [list(s) for s in fan.sites]
        return _dump(obj)
    blocks = [f"{bits}\n{format_matrix(fan.members[bits].rows)}" for bits in sorted(fan.members)]
    return "\n\n".join(blocks)


def _custom_layers(args, stdin):
    if not args.file:
        raise UsageError("--init file requires --file")
    obj = json.loads(_read_input(args, stdin))
    conv = lambda grid: [[deserialize(str(v)) for v in row] for row in grid]  # noqa: E731
    return conv(obj["x0"]), conv(obj["x1"])


def cmd_condense(args, stdin):
    if args.n < 1:
        raise UsageError("--n must be positive")
    _guard(args.n, args)
    variant = get_variant(args.variant, _registry(args))
    if args.init == "file":
        x0, x1 = _custom_layers(args, stdin)
        p = init_pyramid(args.n, InitMode.CUSTOM, x0, x1)
    else:
        if args.file:
            raise UsageError("--file is only used with --init file")
        p = init_pyramid(args.n, InitMode(args.init))
    apex = condense(p, variant).apex
    if args.format == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "n": args.n, "variant": variant.id,
                      "init": args.init, "apex": _poly_obj(apex)})
    return serialize(apex)


def cmd_closed_form(args, stdin):
    k = args.n if args.k is None else args.k
    _guard(k, args)
    variant = get_variant(args.variant, _registry(args))
    poly, records = closed_form(args.n, k, variant, max_n=max(args.max_n, k))
    if args.format == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "n": args.n, "k": k,
                      "variant": variant.id, "pairs": len(records) or 1,
                      "apex": _poly_obj(poly)})
    return serialize(poly)


def _report(args):
    _guard(args.n, args)
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    variants = resolve_variants(args.variants, _registry(args))
    return variants, dict(symbolic=not args.numeric_only, trials=args.trials,
                          seed=args.seed, exchange=not args.no_exchange)


def cmd_verify(args, stdin):
    variants, opts = _report(args)
    report = verify_equivalence(args.n, variants, workers=_threads(), **opts)
    if args.format == "json":
        return report.to_json()
    return conventions_ledger(report).rstrip("\n")


def cmd_bench(args, stdin):
    variants, opts = _report(args)
    verdicts, timings = {}, {}
    for v in variants:
        t0 = time.perf_counter()
        r = verify_equivalence(args.n, [v], **opts)
        timings[v.id] = round(time.perf_counter() - t0, 6)
        verdicts[v.id] = r.verdicts[v.id].to_json_obj()
    obj = {"schema_version": SCHEMA_VERSION, "n": args.n, "seed": args.seed,
           "trials": args.trials, "verdicts": verdicts, "seconds": timings}
    if args.format == "json":
        return _dump(obj)
    return "\n".join(f"{vid}\t{secs:.3f}s\tsymbolic_equal={verdicts[vid]['symbolic_equal']}"
                     for vid, secs in timings.items())


def cmd_count(args, stdin):
    _guard(args.k, args)
    n = count_terms(args.k, max(args.max_n, args.k))
    if args.format == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "k": args.k, "terms": n})
    return str(n)


def cmd_specialize(args, stdin):
    p = deserialize(_read_input(args, stdin).strip())
    out = specialize(p, SPECIALIZATIONS[args.rule]())
    if args.format == "json":
        return _dump({"schema_version": SCHEMA_VERSION, "rule": args.rule, "result": _poly_obj(out)})
    return serialize(out)


COMMANDS = {
    "enumerate": cmd_enumerate,
    "cumulant": cmd_cumulant,
    "fan": cmd_fan,
    "condense": cmd_condense,
    "closed-form": cmd_closed_form,
    "verify": cmd_verify,
    "bench": cmd_bench,
    "count": cmd_count,
    "specialize": cmd_specialize,
}

DOMAIN_ERRORS = (AsmError, LaurentError, ResourceLimit, InterlacingError,
                 UnknownVariant, ValueError, ZeroDivisionError, KeyError, OSError)


def run(argv: Optional[Sequence[str]] = None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = sys.stdin if stdin is None else stdin
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(argv)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        out = COMMANDS[args.verb](args, stdin)
    except UsageError as exc:
        print(parser.format_usage().rstrip(), file=stderr)
        print(f"error: {exc}", file=stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(json.dumps({"error": {"type": type(exc).__name__, "message": str(msg)}},
                         sort_keys=True), file=stderr)
        return 1
    stdout.write(out + "\n")
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
