"""Command-line front end.

Every command prints one JSON document (or plain text with
``--format text``).  The payload never contains timings; those live in a
separate top-level ``timings`` field so outputs can be compared byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, fields
from typing import Dict, List, Optional, Sequence

from gmpy2 import mpq

from . import formulas, powerseries, trapezoids, verify
from .errors import ConfigError, DomainError, ResourceError
from .field import FieldElem, parse_rational
from .pfaffian import TriArray, pf_elimination, pf_laplace, pf_matchings

SCHEMA = "trapcount/1"
CONFIG_ENV = "TRAPCOUNT_CONFIG"

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


@dataclass
class Config:
    default_A: str = "p0a"
    pf_cap: int = 12
    enum_cap: int = 10**7
    truncation_margin: int = 0
    output_format: str = "json"

    def validate(self) -> "Config":
        if self.default_A not in powerseries.P_CHOICES + ("none",):
            raise ConfigError("default_A must be one of %s or none" % ", ".join(powerseries.P_CHOICES))
        for key in ("pf_cap", "enum_cap"):
            if getattr(self, key) <= 0:
                raise ConfigError("%s must be positive" % key)
        if self.truncation_margin < 0:
            raise ConfigError("truncation_margin must be non-negative")
        if self.output_format not in ("json", "text"):
            raise ConfigError("output_format must be json or text")
        return self


def _coerce(name: str, raw):
    kind = {f.name: f.type for f in fields(Config)}[name]
    if kind in ("int", int):
        try:
            return int(raw)
        except (TypeError, ValueError):
            raise ConfigError("%s must be an integer" % name)
    return str(raw)


def load_config(path: Optional[str]) -> Config:
    """Read key=value lines or a JSON object; unknown keys are rejected."""
    cfg = Config()
    if not path:
        return cfg.validate()
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError("cannot read config %s: %s" % (path, exc))
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except ValueError as exc:
            raise ConfigError("bad JSON config: %s" % exc)
    else:
        data = {}
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError("line %d: expected key=value" % lineno)
            key, value = line.split("=", 1)
            data[key.strip()] = value.strip()
    known = {f.name for f in fields(Config)}
    for key, value in data.items():
        if key not in known:
            raise ConfigError("unknown config key %r" % key)
        setattr(cfg, key, _coerce(key, value))
    return cfg.validate()


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _int_list(text: str) -> List[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got %r" % text)


def build_parser() -> argparse.ArgumentParser:
    # global flags are accepted before or after the subcommand
    common = _Parser(add_help=False)
    common.add_argument("--config", default=argparse.SUPPRESS, help="key=value or JSON config file (also $%s)" % CONFIG_ENV)
    common.add_argument("--format", choices=("json", "text"), default=argparse.SUPPRESS, help="output format")
    common.add_argument("--no-timings", action="store_true", default=argparse.SUPPRESS, help="omit the timings field")
    p = _Parser(prog="trapcount", description="Exact counts of Gelfand-Tsetlin and monotone trapezoids.", parents=[common])
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    _add = sub.add_parser
    sub.add_parser = lambda name, **kw: _add(name, parents=[common], **kw)

    def counts(sp):
        sp.add_argument("--h", type=int, required=True)
        sp.add_argument("--n", type=int)
        sp.add_argument("--bottom", type=_int_list, help="bottom row, e.g. 1,3,4,6")
        sp.add_argument("--symbolic", action="store_true", help="return the polynomial")
        sp.add_argument("--eval-at", type=_int_list, help="evaluate the symbolic result at this row")

    g = sub.add_parser("gt", help="GT_h(k_n)")
    counts(g)
    g.add_argument("--method", choices=("pfaffian", "weyl", "brute"), default="pfaffian")

    m = sub.add_parser("mt", help="MT_h(k_n) through the operator formula")
    counts(m)
    m.add_argument("--A", dest="A", choices=powerseries.P_CHOICES + ("none",))
    m.add_argument("--factor", choices=powerseries.FACTORS, default="one_plus_x_plus_y")

    e = sub.add_parser("enumerate", help="brute-force count (and listing) of trapezoids")
    e.add_argument("--h", type=int, required=True)
    e.add_argument("--bottom", type=_int_list, required=True)
    e.add_argument("--monotone", action="store_true")
    e.add_argument("--list", action="store_true", help="also list every trapezoid")

    a = sub.add_parser("asm", help="alternating sign matrices of size n")
    a.add_argument("--n", type=int, required=True)
    a.add_argument("--list", action="store_true", help="list the matrices")

    pf = sub.add_parser("pfaffian", help="Pfaffian of an upper-triangular array")
    pf.add_argument("--entries", help="JSON rows: row i lists A[i][i+1..]")
    pf.add_argument("--file", help="read the JSON rows from a file")
    pf.add_argument("--method", choices=("laplace", "matchings", "elimination"), default="laplace")

    hs = sub.add_parser("hidden", help="hidden series A for a built-in P")
    hs.add_argument("--P", dest="P", choices=powerseries.P_CHOICES)
    hs.add_argument("--factor", choices=powerseries.FACTORS, default="one_plus_x_plus_y")
    hs.add_argument("--order", type=int, default=8)
    hs.add_argument("--dump", action="store_true", help="include every coefficient row")

    v = sub.add_parser("verify", help="run identity checks")
    v.add_argument("--suite", choices=tuple(verify.SUITES), default="fast")
    v.add_argument("--check", choices=tuple(verify.CHECKS))
    v.add_argument("--params", default="{}", help="JSON object of check parameters")

    sub.add_parser("selftest", help="formula against brute force on a small grid")
    return p


# ---------------------------------------------------------------------------
# commands


def _count_args(args, cfg: Config):
    if args.symbolic and args.bottom is not None:
        raise _UsageError("--symbolic takes --eval-at, not --bottom")
    if args.eval_at is not None and not args.symbolic:
        raise _UsageError("--eval-at needs --symbolic")
    n = args.n
    row = args.bottom if args.bottom is not None else args.eval_at
    if n is None:
        if row is None:
            raise _UsageError("give --n or a row")
        n = len(row)
    if row is not None and len(row) != n:
        raise DomainError("row has %d entries, expected %d" % (len(row), n))
    return n


def _result_json(res: formulas.CountResult, eval_at: Optional[Sequence[int]]) -> dict:
    out = res.to_json()
    if eval_at is not None:
        value = res.value.eval({"k%d" % (i + 1): v for i, v in enumerate(eval_at)})
        out["eval_at"] = list(eval_at)
        out["value"] = _plain(value)
    return out


def _plain(v: FieldElem):
    if v.is_rational() and v.rat_part.denominator == 1:
        return int(v.rat_part)
    return str(v)


def cmd_gt(args, cfg: Config) -> dict:
    n = _count_args(args, cfg)
    res = formulas.gt_count(args.h, n, symbolic=args.symbolic, bottom=args.bottom, method=args.method)
    return _result_json(res, args.eval_at)


def cmd_mt(args, cfg: Config) -> dict:
    n = _count_args(args, cfg)
    choice = args.A or cfg.default_A
    row = args.bottom
    res = formulas.mt_count(
        args.h, n, choice, symbolic=args.symbolic, bottom=row, factor=args.factor, margin=cfg.truncation_margin
    )
    if args.eval_at is not None and any(args.eval_at[i] >= args.eval_at[i + 1] for i in range(n - 1)):
        raise DomainError("monotone counts need a strictly increasing row")
    return _result_json(res, args.eval_at)


def cmd_enumerate(args, cfg: Config) -> dict:
    count = trapezoids.enumerate_gt(args.h, args.bottom, monotone=args.monotone, cap=cfg.enum_cap)
    out = {"h": args.h, "bottom": args.bottom, "monotone": args.monotone, "count": count, "provenance": "brute_force"}
    if args.list:
        out["trapezoids"] = [t.to_json() for t in trapezoids.iter_trapezoids(args.h, args.bottom, args.monotone, cfg.enum_cap)]
    return out


def cmd_asm(args, cfg: Config) -> dict:
    n = args.n
    if n < 1:
        raise DomainError("n must be positive")
    bottom = list(range(1, n + 1))
    brute = trapezoids.enumerate_gt(n, bottom, monotone=True, cap=cfg.enum_cap)
    formula = formulas.mt_count(n - 1, n, cfg.default_A, bottom=bottom, margin=cfg.truncation_margin).value
    out = {"n": n, "count": brute, "formula": formula, "agree": brute == formula}
    if args.list:
        out["matrices"] = [
            trapezoids.to_sign_matrix(t).to_json() for t in trapezoids.iter_trapezoids(n, bottom, True, cfg.enum_cap)
        ]
    return out


def _parse_entry(x):
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise ConfigError("entries must be integers or rational strings")


def cmd_pfaffian(args, cfg: Config) -> dict:
    if (args.entries is None) == (args.file is None):
        raise _UsageError("give exactly one of --entries and --file")
    text = args.entries
    if args.file:
        try:
            with open(args.file) as fh:
                text = fh.read()
        except OSError as exc:
            raise ConfigError("cannot read %s: %s" % (args.file, exc))
    try:
        rows = json.loads(text)
    except ValueError as exc:
        raise ConfigError("bad JSON rows: %s" % exc)
    if not isinstance(rows, list):
        raise ConfigError("rows must be a JSON list")
    # row i holds A[i][i+1..order]; the empty last row may be left out
    order = len(rows) + 1 if rows and rows[-1] else len(rows)
    for i, r in enumerate(rows):
        if not isinstance(r, list) or len(r) != order - i - 1:
            raise ConfigError("row %d should have %d entries" % (i + 1, order - i - 1))
    a = TriArray(order, [[_parse_entry(x) for x in r] for r in rows], mpq(0))
    if args.method == "matchings":
        value = pf_matchings(a, cap=cfg.pf_cap)
    elif args.method == "elimination":
        value = pf_elimination(a)
    else:
        value = pf_laplace(a)
    return {"order": order, "method": args.method, "value": _fmt_q(value)}


def _fmt_q(q) -> str:
    q = mpq(q)
    return str(q.numerator) if q.denominator == 1 else "%d/%d" % (q.numerator, q.denominator)


def cmd_hidden(args, cfg: Config) -> dict:
    choice = args.P or (cfg.default_A if cfg.default_A != "none" else "p0a")
    order = args.order + cfg.truncation_margin
    if order < 1:
        raise DomainError("order must be positive")
    A = powerseries.build_hidden_series(choice, args.factor, order)
    report = powerseries.check_equation(A)
    out = {
        "P": choice,
        "factor": args.factor,
        "order": order,
        "constant_term": str(A.constant_term),
        "symmetric": A == powerseries.swap_vars(A),
        "rational": A.is_rational(),
        "equation": report,
    }
    if args.dump:
        out["rows"] = powerseries.dump_rows(A)
    return out


def cmd_verify(args, cfg: Config) -> dict:
    if args.check:
        try:
            params = json.loads(args.params)
        except ValueError as exc:
            raise _UsageError("--params must be a JSON object: %s" % exc)
        if not isinstance(params, dict):
            raise _UsageError("--params must be a JSON object")
        reports = [verify.run_check(args.check, params)]
    else:
        reports = verify.run_suite(args.suite)
    return {
        "suite": None if args.check else args.suite,
        "reports": [r.to_json() for r in reports],
        "passed": all(r.passed for r in reports),
    }


SELFTEST_GRID = [(h, n) for n in range(0, 5) for h in range(0, min(n, 2) + 1)]


def selftest_rows(n: int, count: int = 4) -> List[List[int]]:
    """Deterministic strictly increasing rows with small spread."""
    from itertools import combinations

    rows = [list(c) for c in combinations(range(1, n + 4), n)]
    step = max(1, len(rows) // count)
    return rows[::step][:count]


def cmd_selftest(args, cfg: Config) -> dict:
    failures = []
    checked = 0
    for h, n in SELFTEST_GRID:
        for row in selftest_rows(n):
            gt = formulas.gt_count(h, n, bottom=row).value
            gt_b = trapezoids.enumerate_gt(h, row)
            mt = formulas.mt_count(h, n, cfg.default_A, bottom=row).value
            mt_b = trapezoids.enumerate_gt(h, row, monotone=True)
            checked += 1
            if gt != gt_b or mt != mt_b:
                failures.append({"h": h, "n": n, "bottom": row, "gt": [gt, gt_b], "mt": [mt, mt_b]})
    return {"checked": checked, "failures": failures, "passed": not failures}


COMMANDS = {
    "gt": cmd_gt,
    "mt": cmd_mt,
    "enumerate": cmd_enumerate,
    "asm": cmd_asm,
    "pfaffian": cmd_pfaffian,
    "hidden": cmd_hidden,
    "verify": cmd_verify,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# output


def _text(obj, indent: int = 0) -> List[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append("%s%s:" % (pad, k))
                lines.extend(_text(v, indent + 1))
            else:
                lines.append("%s%s: %s" % (pad, k, _scalar(v)))
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, dict):
                lines.append("%s-" % pad)
                lines.extend(_text(v, indent + 1))
            else:
                lines.append("%s- %s" % (pad, _scalar(v) if not isinstance(v, list) else json.dumps(v)))
    else:
        lines.append(pad + _scalar(obj))
    return lines


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (list, dict)):
        return json.dumps(v)
    return str(v)


def _emit(doc: dict, fmt: str, out) -> None:
    if fmt == "text":
        payload = dict(doc["result"])
        if "timings" in doc:
            payload["seconds"] = doc["timings"]["total_seconds"]
        out.write("\n".join(_text(payload)) + "\n")
    else:
        out.write(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def main(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(parser.format_usage())
        err.write("trapcount: error: %s\n" % exc)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        cfg = load_config(getattr(args, "config", None) or os.environ.get(CONFIG_ENV))
        fmt = getattr(args, "format", None) or cfg.output_format
        start = time.perf_counter()
        result = COMMANDS[args.command](args, cfg)
        elapsed = time.perf_counter() - start
    except _UsageError as exc:
        err.write("trapcount: error: %s\n" % exc)
        return EXIT_USAGE
    except (ConfigError, DomainError) as exc:
        err.write("trapcount: error: %s\n" % exc)
        return EXIT_USAGE
    except ResourceError as exc:
        err.write("trapcount: resource limit: %s\n" % exc)
        return EXIT_RESOURCE
    doc = {"schema": SCHEMA, "command": args.command, "result": result}
    if not getattr(args, "no_timings", False):
        doc["timings"] = {"total_seconds": round(elapsed, 6)}
    _emit(doc, fmt, out)
    if args.command in ("verify", "selftest") and not result["passed"]:
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
