"""Command-line front end: ``python -m tvf {eval,verify,relations,catalog}``.

Exit codes: 0 when everything checked passes, 1 when something fails, 2 for
usage, parse and range errors.

Settings come from (lowest to highest priority) built-in defaults, a flat
``key=value`` config file given by ``--config``, command-line flags, and
environment variables ``TVF_DIGITS``, ``TVF_WEIGHT_CAP``, ``TVF_CACHE_DIR``,
``TVF_THREADS``.
"""
from __future__ import annotations

import argparse
import csv
import fnmatch
import io
import json
import os
import sys
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from typing import Optional, Sequence

import mpmath

from . import catalog as _catalog
from .index import MtvIndex, ParseError, parse_index
from .numeric import CapacityError, DomainError, PrecisionCtx, eval_euler, eval_mtv
from .relations import CapacityError as RelCapacityError
from .relations import DEFAULT_WEIGHT_CAP, check_identity, generate_dsh_system
from .verify import VerifyReport, plan, verify_many

__all__ = ["main", "load_config", "resolve_settings", "format_fixed", "UsageError"]

DEFAULTS = {"digits": 30, "weight_cap": DEFAULT_WEIGHT_CAP, "cache_dir": None, "threads": 1}
_INT_KEYS = {"digits", "weight_cap", "threads"}


class UsageError(Exception):
    pass


def load_config(path: Optional[str]) -> dict:
    """Read ``key = value`` lines; blank lines and ``#`` comments are skipped."""
    if not path:
        return {}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for n, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{n}: expected key=value")
            k, v = (s.strip() for s in line.split("=", 1))
            k = k.replace("-", "_").lower()
            if k not in DEFAULTS:
                raise UsageError(f"{path}:{n}: unknown key {k!r}")
            out[k] = v
    return out


def resolve_settings(flags: dict, env: Optional[dict] = None) -> dict:
    env = os.environ if env is None else env
    cfg = dict(DEFAULTS)
    cfg.update(load_config(flags.get("config")))
    cfg.update({k: v for k, v in flags.items() if k in DEFAULTS and v is not None})
    for k in DEFAULTS:
        v = env.get("TVF_" + k.upper())
        if v:
            cfg[k] = v
    try:
        for k in _INT_KEYS:
            cfg[k] = int(cfg[k])
    except (TypeError, ValueError) as exc:
        raise UsageError(f"bad integer setting: {exc}") from None
    if cfg["digits"] < 10:
        raise UsageError("digits must be at least 10")
    return cfg


def format_fixed(x, places: int) -> str:
    """``x`` rounded to ``places`` digits after the decimal point."""
    with mpmath.workdps(places + 30):
        text = mpmath.nstr(x, places + 25, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)
    with localcontext() as dctx:
        dctx.prec = places + 60
        return str(Decimal(text).quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_EVEN))


def _weights(args) -> list[int]:
    if args.weight is not None and args.weights is not None:
        raise UsageError("give --weight or --weights, not both")
    if args.weight is not None:
        return [args.weight]
    if args.weights is not None:
        lo, sep, hi = args.weights.partition("..")
        try:
            a, b = int(lo), int(hi if sep else lo)
        except ValueError:
            raise UsageError(f"--weights expects a..b, got {args.weights!r}") from None
        if a > b:
            raise UsageError("empty weight range")
        return list(range(a, b + 1))
    return []


# -- subcommands ----------------------------------------------------------------

def cmd_eval(args, cfg, out) -> int:
    try:
        idx = parse_index(args.index)
    except ParseError as exc:
        raise UsageError(str(exc)) from None
    ctx = PrecisionCtx(cfg["digits"])
    try:
        res = eval_mtv(idx, ctx) if isinstance(idx, MtvIndex) else eval_euler(idx, ctx)
    except DomainError:
        raise UsageError(f"non-admissible index {args.index!r}") from None
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(format_fixed(res.value, cfg["digits"]), file=out)
    print(f"error bound {mpmath.nstr(res.error_bound, 3)}", file=out)
    return 0


def _emit_reports(reports: list[VerifyReport], fmt: str, out) -> None:
    if fmt == "json":
        for r in reports:
            print(json.dumps(r.to_json()), file=out)
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(VerifyReport.FIELDS)
        for r in reports:
            w.writerow(r.row())
    else:
        for r in reports:
            flag = "PASS" if r.passed else "FAIL"
            extra = f"  [{r.detail}]" if r.detail else ""
            print(f"{flag}  {r.identity:<32} w={r.weight:<2} residual={r.residual or '-':<12} "
                  f"{r.method} {r.elapsed_ms}ms{extra}", file=out)


def cmd_verify(args, cfg, out) -> int:
    known = _catalog.names()
    if not args.all and not args.name:
        raise UsageError("give --name NAME (repeatable) or --all")
    if args.name:
        bad = [n for n in args.name if n not in known]
        if bad:
            raise UsageError(f"unknown identity {', '.join(bad)}; valid names: {', '.join(known)}")
    names = None if args.all else args.name
    weights = _weights(args)
    if not weights:
        if args.all:
            raise UsageError("--all needs --weight or --weights")
        weights = sorted({_catalog.get(n).fixed_weight or _catalog.get(n).min_weight for n in names})
    items = plan(names, weights)
    if names is not None:
        got = {n for n, _ in items}
        missing = [n for n in names if n not in got]
        if missing:
            e = _catalog.get(missing[0])
            rng = f"only {e.fixed_weight}" if e.fixed_weight else f"w >= {e.min_weight}"
            raise UsageError(f"{missing[0]} is not defined at weight(s) {weights}; valid range {rng}")
    method = args.method or ("both" if args.symbolic else "numeric")
    if cfg["cache_dir"]:
        os.environ["TVF_CACHE_DIR"] = str(cfg["cache_dir"])
    reports = verify_many(items, cfg["digits"], method, cfg["threads"], cfg["weight_cap"])
    _emit_reports(reports, args.format, out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_relations(args, cfg, out) -> int:
    if cfg["cache_dir"]:
        os.environ["TVF_CACHE_DIR"] = str(cfg["cache_dir"])
    W = args.weight
    try:
        sysm = generate_dsh_system(W, cfg["weight_cap"])
    except (RelCapacityError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    print(f"weight {W}: {len(sysm.rows)} rows, {len(sysm.basis)} symbols, rank {sysm.rank}, "
          f"dimension bound {sysm.dimension_bound()}", file=out)
    if not args.check:
        return 0
    try:
        ident = _catalog.build(args.check, W)
    except KeyError:
        raise UsageError(f"unknown identity {args.check}; valid names: {', '.join(_catalog.names())}") from None
    except _catalog.RangeError as exc:
        raise UsageError(str(exc)) from None
    m = check_identity(ident, cfg["weight_cap"])
    if m.member:
        print(f"{args.check} at weight {W}: certificate found", file=out)
        print(json.dumps([c.to_json() for c in m.certificates], indent=1), file=out)
        return 0
    print(f"{args.check} at weight {W}: not in the span", file=out)
    for k, lc in sorted(m.residual.items()):
        print(f"  residual T^{k}: {lc}", file=out)
    if m.not_attempted:
        print(f"  not attempted at weight(s) {sorted(set(m.not_attempted))}", file=out)
    return 1


def cmd_catalog(args, cfg, out) -> int:
    ents = [e for e in _catalog.entries(not args.no_auxiliary)
            if (args.filter is None or fnmatch.fnmatchcase(e.name, args.filter))
            and (args.provenance is None or args.provenance.lower() in e.provenance.lower())]
    rows = [{"name": e.name, "provenance": e.provenance, "min_weight": e.fixed_weight or e.min_weight}
            for e in ents]
    if args.format == "json":
        print(json.dumps(rows, indent=1), file=out)
    elif args.format == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(["name", "provenance", "min_weight"])
        for r in rows:
            w.writerow([r["name"], r["provenance"], r["min_weight"]])
    else:
        for e, r in zip(ents, rows):
            tag = " (aux)" if e.auxiliary else ""
            print(f"{r['name']:<32} w>={r['min_weight']:<2} {r['provenance']}{tag}", file=out)
    return 0


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    # shared options may appear before or after the subcommand
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("--threads", type=int)
    common.add_argument("--cap", dest="weight_cap", type=int, help="largest weight for relation systems")
    p = argparse.ArgumentParser(prog="tvf", description="Euler sums and multiple T-values.", parents=[common])
    sub = p.add_subparsers(dest="command", required=True)
    sub_parser = sub.add_parser

    def add_parser(name, **kw):
        return sub_parser(name, parents=[common], **kw)
    sub.add_parser = add_parser

    e = sub.add_parser("eval", help="evaluate one Euler sum or multiple T-value")
    e.add_argument("index", help='e.g. "2b,1" or "T:2,1,1"')
    e.add_argument("--digits", type=int)

    v = sub.add_parser("verify", help="check catalog identities")
    v.add_argument("--name", action="append")
    v.add_argument("--all", action="store_true")
    v.add_argument("--weight", type=int)
    v.add_argument("--weights", help="inclusive range a..b")
    v.add_argument("--digits", type=int)
    v.add_argument("--symbolic", action="store_true", help="also demand a double shuffle certificate")
    v.add_argument("--method", choices=("numeric", "symbolic", "both"))
    v.add_argument("--format", choices=("json", "csv", "text"), default="text")
    v.add_argument("--cache", dest="cache_dir")

    r = sub.add_parser("relations", help="rank of the double shuffle system and membership checks")
    r.add_argument("--weight", type=int, required=True)
    r.add_argument("--check", metavar="NAME")
    r.add_argument("--cache", dest="cache_dir")

    c = sub.add_parser("catalog", help="list identities")
    c.add_argument("--format", choices=("json", "csv", "text"), default="text")
    c.add_argument("--filter", help="shell pattern on names, e.g. 'sum-depth3-*'")
    c.add_argument("--provenance", help="substring of the provenance text")
    c.add_argument("--no-auxiliary", action="store_true")
    return p


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "relations": cmd_relations, "catalog": cmd_catalog}


def main(argv: Optional[Sequence[str]] = None, out=None, env: Optional[dict] = None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = resolve_settings(vars(args), env)
        return COMMANDS[args.command](args, cfg, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def run(argv: Optional[Sequence[str]] = None) -> str:
    """Capture stdout of ``main``; handy in notebooks and demos."""
    buf = io.StringIO()
    main(argv, buf)
    return buf.getvalue()
