"""``qf``: evaluate form expressions and verify closed forms.

Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error.
"""
from __future__ import annotations

import argparse
import json
import sys

from .. import closed_forms as cf
from .. import harness
from ..combinatorics import binomial
from ..power_engine import EnumerationTooLarge, lambda_power, sym_power
from ..squareclass import FieldMode
from ..witt_normal import normalize
from .parser import ParseError, evaluate, parse

OK, MISMATCH, USAGE = 0, 1, 2

_TABLE_NOTE = """\
Odd n: T_S = <(-1)^((n-1)/2)> + (n^2-1)/2 x H.  For odd n and odd k the
exterior-power residue carries that sign times (-1)^((k-1)/2); the bare
(-1)^((k-1)/2) entry (--literal-table) disagrees with direct expansion
whenever n = 3 mod 4, and such cells are flagged."""


class _UsageError(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(USAGE)


def _mode(text: str | None) -> FieldMode | None:
    return None if text is None else FieldMode.parse(text)


def cmd_eval(args) -> int:
    try:
        form = evaluate(parse(args.expr))
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, EnumerationTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    out = normalize(form, _mode(args.mode) or FieldMode.GENERIC) if args.normalize else form
    if args.format == "json":
        print(json.dumps(out.to_json()))
    else:
        print(out)
    return OK


_PARAM_FLAGS = ("h", "k", "n", "m", "p", "q", "r", "s", "sign", "seed")


def cmd_verify(args) -> int:
    ident = args.identity
    if ident not in harness.REGISTRY:
        print(f"error: unknown identity {ident!r}; known: {', '.join(harness.REGISTRY)}",
              file=sys.stderr)
        return USAGE
    names = harness.REGISTRY[ident].params
    given = {f: getattr(args, f) for f in _PARAM_FLAGS if getattr(args, f) is not None}
    extra = sorted(set(given) - set(names))
    missing = [n for n in names if n not in given]
    if extra or missing:
        msg = []
        if missing:
            msg.append("missing " + ", ".join(f"--{n}" for n in missing))
        if extra:
            msg.append("unexpected " + ", ".join(f"--{n}" for n in extra))
        print(f"error: {ident}: {'; '.join(msg)}", file=sys.stderr)
        return USAGE
    try:
        cfg = harness.SuiteConfig(
            identities={ident: given},
            p1_exponent=args.p1_exponent,
            literal_table=args.literal_table,
            modes={ident: args.mode} if args.mode else {},
        )
        cells = cfg.cells()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if not cells:
        single = {k: harness._expand(v)[0] for k, v in given.items()}
        try:
            harness.verify(ident, single)
        except harness.DomainError as exc:
            print(f"error: {exc}", file=sys.stderr)
        else:
            print(f"error: no parameter cell of {ident} lies in its domain", file=sys.stderr)
        return USAGE
    reports, ok = harness.run_suite(cfg)
    if args.format == "json":
        print(harness.reports_to_json(reports))
    else:
        for rep in reports:
            print(rep.summary())
        if args.mode is None and any(r.params.get("n", 1) % 4 == 0 for r in reports):
            print("note: n = 0 mod 4 cells verified with -1 a square (mode c)")
        print(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    return OK if ok else MISMATCH


def _cell(engine, closed, mode) -> dict:
    shown = normalize(closed, FieldMode.GENERIC)
    residue = "" if shown.residue.is_zero else f"{shown.residue} + "
    ok = normalize(engine, mode) == normalize(closed, mode)
    return {
        "text": f"{residue}{shown.hyp} x H",
        "dim": str(closed.dim),
        "verified": ok,
        "engine": str(normalize(engine, mode)),
    }


def table_rows(n: int, k_max: int, literal_table: bool = False) -> list[dict]:
    params = cf.TraceParams(n, concrete=False)
    form = cf.trace_form(params)
    mode = cf.required_mode(n)
    rows = []
    for k in range(k_max + 1):
        ext, _ = cf.ext_trace_closed(params, k, literal_table=literal_table)
        sym, _ = cf.sym_trace_closed(params, k)
        rows.append({
            "k": k,
            "mode": mode.value,
            "ext": _cell(lambda_power(form, k), ext, mode),
            "sym": _cell(sym_power(form, k), sym, mode),
        })
    return rows


def cmd_table(args) -> int:
    if args.n < 1 or args.k_max < 0:
        print("error: need --n >= 1 and --k-max >= 0", file=sys.stderr)
        return USAGE
    rows = table_rows(args.n, args.k_max, args.literal_table)
    if args.format == "json":
        print(json.dumps({"n": args.n, "rows": rows}, indent=2))
    else:
        mode = cf.required_mode(args.n)
        print(f"T_S for n={args.n}, dim {args.n ** 2}, mode {mode.value}"
              + (" (-1 is a square)" if mode is FieldMode.MINUS_ONE_SQUARE else ""))
        for row in rows:
            cells = []
            for col, label in (("ext", "L"), ("sym", "S")):
                cell = row[col]
                flag = "" if cell["verified"] else f"  [MISMATCH: engine gives {cell['engine']}]"
                cells.append(f"{label}: {cell['text']}{flag}")
            print(f"k={row['k']:<3} " + " | ".join(cells))
    bad = any(not row[c]["verified"] for row in rows for c in ("ext", "sym"))
    return MISMATCH if bad else OK


def cmd_suite(args) -> int:
    try:
        cfg = harness.SuiteConfig.load(args.config) if args.config else harness.default_config()
    except (OSError, ValueError) as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return USAGE
    if args.workers:
        cfg.workers = args.workers
    reports, ok = harness.run_suite(cfg)
    if args.format == "json":
        print(harness.reports_to_json(reports))
        return OK if ok else MISMATCH
    per_id: dict[str, list[int]] = {}
    for rep in reports:
        tally = per_id.setdefault(rep.identity_id, [0, 0])
        tally[0] += rep.passed
        tally[1] += 1
    for ident, (good, total) in per_id.items():
        print(f"{'PASS' if good == total else 'FAIL'} {ident}: {good}/{total}")
    for rep in reports:
        if not rep.passed or args.verbose:
            print(rep.summary())
    print(f"{'all passed' if ok else 'FAILURES'}: {sum(r.passed for r in reports)}/{len(reports)} cells")
    return OK if ok else MISMATCH


def build_parser() -> argparse.ArgumentParser:
    ap = _ArgParser(prog="qf", description="Exact powers of diagonal quadratic forms.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    ev = sub.add_parser("eval", help="evaluate a form expression")
    ev.add_argument("expr")
    ev.add_argument("--mode", choices=["r", "c"], default=None,
                    help="r: -1 not a square (default); c: -1 a square")
    ev.add_argument("--normalize", action="store_true", help="print the Witt normal form")
    ev.add_argument("--format", choices=["text", "json"], default="text")
    ev.set_defaults(func=cmd_eval)

    ve = sub.add_parser("verify", help="check one identity over parameter ranges")
    ve.add_argument("identity")
    for name in _PARAM_FLAGS:
        ve.add_argument(f"--{name}", metavar="RANGE", help="integer or lo..hi")
    ve.add_argument("--mode", choices=["r", "c"], default=None)
    ve.add_argument("--p1-exponent", choices=["standard", "literal"], default="standard")
    ve.add_argument("--literal-table", action="store_true")
    ve.add_argument("--format", choices=["text", "json"], default="text")
    ve.set_defaults(func=cmd_verify)

    ta = sub.add_parser("table", help="summary table of L^k T_S and S^k T_S",
                        epilog=_TABLE_NOTE, formatter_class=argparse.RawDescriptionHelpFormatter)
    ta.add_argument("--n", type=int, required=True)
    ta.add_argument("--k-max", type=int, required=True)
    ta.add_argument("--literal-table", action="store_true")
    ta.add_argument("--format", choices=["text", "json"], default="text")
    ta.set_defaults(func=cmd_table)

    su = sub.add_parser("suite", help="run a verification sweep")
    su.add_argument("--config", help="TOML sweep description (default: acceptance sweep)")
    su.add_argument("--workers", type=int, default=0)
    su.add_argument("--verbose", action="store_true")
    su.add_argument("--format", choices=["text", "json"], default="text")
    su.set_defaults(func=cmd_suite)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
