"""Command line front end: ``crosswalks <command> ...`` or ``python3 -m crosswalks``.

Exit codes: 0 when everything requested passed, 1 when a check failed,
2 for usage errors and unreadable input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

from . import bijections as bj
from .config import DEFAULTS
from .errors import VerificationError
from .partitions import count_partitions
from .recurrences import (
    TABLE_ROWS,
    guess_rec,
    load_catalog,
    row_asymptotics,
    verify_ode,
    verify_rec,
)
from .walks import EndSet, sequence

TABLES = {
    "vacillating": ["vac-A1", "vac-A2", "vac-A2-odd", "vac-A3", "vac-A4"],
    "hesitating": ["hes-A1", "hes-A2", "hes-A2-odd", "hes-A3"],
}
# the same tables under their numbered names
TABLES["paper2"] = TABLES["vacillating"]
TABLES["paper3"] = TABLES["hesitating"]


class UsageError(Exception):
    """Bad arguments or unreadable input; reported with exit code 2."""


@dataclass
class RunConfig:
    N: int = 24
    window: tuple[int, int] | None = None
    walk_ceiling: int | None = None
    fmt: str = "tsv"
    guards: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.N < 4:
            raise UsageError("-N must be at least 4")
        if self.window is not None:
            lo, hi = self.window
            if lo > -(self.N + 4) or hi < self.N + 4:
                raise UsageError(f"window must contain [-{self.N + 4}, {self.N + 4}]")

    def apply_guards(self):
        """Export guard overrides so every module sees them."""
        merged = dict(self.guards)
        if self.walk_ceiling is not None:
            merged["walk_length"] = self.walk_ceiling
        if merged:
            current = os.environ.get("CROSSWALKS_GUARD", "")
            items = [current] if current and not current.isdigit() else []
            items += [f"{k}={v}" for k, v in sorted(merged.items())]
            os.environ["CROSSWALKS_GUARD"] = ",".join(items)


# --------------------------------------------------------------------------
# output


def _row_anchor(row: str) -> str:
    flavor, endset, parity, rho, alpha = TABLE_ROWS[row]
    return f"{flavor} walks from (1,0) to {endset}, {parity} lengths"


def _emit_sequences(records: list[dict], fmt: str, out) -> None:
    """records: {label, sequence, anchor, params}."""
    if fmt == "json":
        payload = [
            {"sequence": [str(v) for v in r["sequence"]], "anchor": r["anchor"], "params": r["params"]}
            for r in records
        ]
        out.write(json.dumps(payload[0] if len(payload) == 1 else payload, indent=1, sort_keys=True) + "\n")
    else:
        for r in records:
            out.write("\t".join([r["label"]] + [str(v) for v in r["sequence"]]) + "\n")


def _report(results: list[tuple[str, bool, str]], fmt: str, out) -> int:
    if fmt == "json":
        out.write(
            json.dumps([{"check": n, "ok": ok, "detail": d} for n, ok, d in results], indent=1, sort_keys=True)
            + "\n"
        )
    else:
        for name, ok, detail in results:
            out.write(f"{'PASS' if ok else 'FAIL'}\t{name}\t{detail}\n")
    return 0 if all(ok for _, ok, _ in results) else 1


# --------------------------------------------------------------------------
# commands


def cmd_table(args, cfg: RunConfig, out) -> int:
    records = []
    for row in TABLES[args.which]:
        flavor, endset, parity, _, _ = TABLE_ROWS[row]
        seq = sequence(flavor, EndSet.parse(endset), args.terms, parity=parity)
        records.append(
            {
                "label": row,
                "sequence": seq,
                "anchor": _row_anchor(row),
                "params": {"flavor": flavor, "endset": endset, "parity": parity, "terms": args.terms},
            }
        )
    _emit_sequences(records, cfg.fmt, out)
    return 0


def cmd_count(args, cfg: RunConfig, out) -> int:
    A = EndSet.parse(args.endset)
    start = tuple(int(v) for v in args.start.split(","))
    if args.flavor == "hesitating":
        lengths = [L for L in range(args.min_length, args.max_length + 1) if L % 2 == 0]
        seq = sequence(args.flavor, A, args.max_length // 2 + 1, parity="even", start=start)
        values = [seq[L // 2] for L in lengths]
    else:
        lengths = list(range(args.min_length, args.max_length + 1))
        seq = sequence(args.flavor, A, args.max_length + 1, parity="all", start=start)
        values = [seq[L] for L in lengths]
    record = {
        "label": f"{args.flavor}:{A}",
        "sequence": values,
        "anchor": f"{args.flavor} walks from {start} to {A}, lengths {lengths[0] if lengths else '-'}..{args.max_length}",
        "params": {"flavor": args.flavor, "endset": str(A), "start": list(start), "lengths": lengths},
    }
    _emit_sequences([record], cfg.fmt, out)
    return 0


def cmd_partitions(args, cfg: RunConfig, out) -> int:
    values = [
        count_partitions(n, args.noncross_k, args.enhanced, args.bisymmetric, method=args.method)
        for n in range(args.min_n, args.max_n + 1)
    ]
    flags = [f"{args.noncross_k}-noncrossing" if args.noncross_k else "all"]
    flags += ["enhanced"] * args.enhanced + ["bisymmetric"] * args.bisymmetric
    record = {
        "label": "partitions",
        "sequence": values,
        "anchor": f"{' '.join(flags)} partitions of [n], n = {args.min_n}..{args.max_n}",
        "params": {
            "noncross_k": args.noncross_k,
            "enhanced": args.enhanced,
            "bisymmetric": args.bisymmetric,
            "n": [args.min_n, args.max_n],
            "method": args.method,
        },
    }
    _emit_sequences([record], cfg.fmt, out)
    return 0


def cmd_series(args, cfg: RunConfig, out) -> int:
    from .series import dump_series, eval_CA, eval_EA, t_coefficients

    fn = eval_CA if args.flavor == "vacillating" else eval_EA
    s = fn(EndSet.parse(args.endset), cfg.N, cfg.window)
    if args.dump_series:
        Path(args.dump_series).write_text(dump_series(s))
    coeffs = t_coefficients(s)
    record = {
        "label": f"{args.flavor}:{args.endset}",
        "sequence": [c.numerator if c.denominator == 1 else c for c in coeffs],
        "anchor": f"constant-term series for {args.flavor} walks from (1,0) to {args.endset}, mod t^{cfg.N}",
        "params": {"flavor": args.flavor, "endset": args.endset, "N": cfg.N, "window": list(s.window)},
    }
    _emit_sequences([record], cfg.fmt, out)
    return 0


def _run(name: str, fn: Callable[[], object]) -> tuple[str, bool, str]:
    t0 = time.perf_counter()
    try:
        res = fn()
    except VerificationError as e:
        idx = f" (index {e.index})" if getattr(e, "index", None) is not None else ""
        return name, False, f"{e}{idx}"
    ok = res is not False
    detail = f"{time.perf_counter() - t0:.2f}s"
    if not ok:
        detail = "check returned false; " + detail
    elif isinstance(res, int) and not isinstance(res, bool):
        detail = f"through index {res}; {detail}"
    return name, ok, detail


def verify_identities(cfg: RunConfig) -> list[tuple[str, bool, str]]:
    from .series import identity_names, jacobi_check, verify_identity

    out = []
    for name in identity_names():
        if name == "jacobi":
            out.append(_run(name, jacobi_check))
        else:
            out.append(_run(name, lambda n=name: verify_identity(n, cfg.N, cfg.window)))
    return out


def verify_recurrences(cfg: RunConfig, terms: int = 64) -> list[tuple[str, bool, str]]:
    cat = load_catalog()
    return [
        _run(e.name, lambda e=e: verify_rec(e.rec, e.source.dp_terms(terms)))
        for e in cat.recurrences.values()
    ]


def verify_odes(cfg: RunConfig) -> list[tuple[str, bool, str]]:
    cat = load_catalog()
    return [
        _run(e.name, lambda e=e: verify_ode(e.ode, e.source.series_terms(cfg.N))) for e in cat.odes.values()
    ]


def verify_bijections(cfg: RunConfig, n_max: int = 10) -> list[tuple[str, bool, str]]:
    from itertools import product

    out = []
    for kind in (bj.OSCILLATING, bj.VACILLATING):
        out.append(_run(f"{kind} encoding onto W(n), n<={n_max}",
                        lambda k=kind: all(bj.check_bijection(k, n) for n in range(n_max + 1))))
    out.append(_run("word prefix conditions agree, length<=12",
                    lambda: all(bj.lemma_word_equiv(w) for m in range(13) for w in product((0, 1), repeat=m))))
    out.append(_run("Dyck restriction, n<=6", lambda: all(bj.dyck_corollary(n) for n in range(1, 7))))
    o = bj.HeightSequence(bj.OSCILLATING, bj.EXAMPLE_OSCILLATING)
    out.append(_run("example: theta(O)", lambda: str(bj.theta(o)) == bj.EXAMPLE_WORD))
    out.append(_run("example: eta(eta_inv(theta(O)))",
                    lambda: bj.eta(bj.eta_inv(bj.theta(o))) == bj.theta(o)))
    return out


SUITES = {
    "identities": verify_identities,
    "recurrences": verify_recurrences,
    "odes": verify_odes,
    "bijections": verify_bijections,
}


def cmd_verify(args, cfg: RunConfig, out) -> int:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        results += [(f"{name}:{n}", ok, d) for n, ok, d in SUITES[name](cfg)]
    return _report(results, cfg.fmt, out)


def read_sequence_file(path: str) -> list[int]:
    """One decimal integer per line; ``#`` starts a comment."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e}") from e
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            values.append(int(line))
        except ValueError:
            raise UsageError(f"{path}:{lineno}: not an integer: {line!r}") from None
    if not values:
        raise UsageError(f"{path}: no terms")
    return values


def cmd_guess(args, cfg: RunConfig, out) -> int:
    from .errors import UnderdeterminedError

    seq = read_sequence_file(args.input)
    try:
        rec = guess_rec(seq, args.max_order, args.max_degree)
    except UnderdeterminedError as e:
        raise UsageError(str(e)) from e
    if rec is None:
        out.write(f"no recurrence of order <= {args.max_order} and degree <= {args.max_degree}\n")
        return 1
    if cfg.fmt == "json":
        payload = {
            "order": rec.order,
            "degree": rec.degree,
            "coeffs": [[str(c) for c in p] for p in rec.coeffs],
            "terms": len(seq),
        }
        out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        out.write(str(rec) + "\n")
        for i, p in enumerate(rec.coeffs):
            out.write(f"p{i}\t" + "\t".join(str(c) for c in p) + "\n")
    return 0


def cmd_asymptotics(args, cfg: RunConfig, out) -> int:
    rows = args.rows or list(TABLE_ROWS)
    unknown = [r for r in rows if r not in TABLE_ROWS]
    if unknown:
        raise UsageError(f"unknown rows: {', '.join(unknown)}")
    results = []
    for row in rows:
        rec, fit = row_asymptotics(row, args.n_max)
        results.append((row, fit))
    if cfg.fmt == "json":
        payload = [
            {"row": r, "rho": f.rho, "alpha": f.alpha, "alpha_used": f.alpha_used, "kappa": f.kappa,
             "alpha_spread": f.alpha_spread, "kappa_spread": f.kappa_spread, "n": f.n}
            for r, f in results
        ]
        out.write(json.dumps(payload, indent=1, sort_keys=True) + "\n")
    else:
        out.write("row\trho\talpha\tkappa\tkappa_spread\n")
        for r, f in results:
            out.write(f"{r}\t{f.rho:.5f}\t{f.alpha:.4f}\t{f.kappa:.4f}\t{f.kappa_spread:.2g}\n")
    return 0


def cmd_bijection(args, cfg: RunConfig, out) -> int:
    ex = bj.worked_example()
    if cfg.fmt == "json":
        out.write(json.dumps(ex, indent=1) + "\n")
    else:
        for k, v in ex.items():
            out.write(f"{k}\t{v}\n")
    return 0


# --------------------------------------------------------------------------
# parser


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError("window is LO,HI") from None
    return lo, hi


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["tsv", "json"], default="tsv")
    common.add_argument("-N", type=int, default=24, help="truncation order in t (default 24)")
    common.add_argument("--window", type=_window, help="x-exponent window LO,HI for series commands")
    common.add_argument("--walk-ceiling", type=int, help=f"walk length guard (default {DEFAULTS['walk_length']})")
    common.add_argument("--guard", action="append", default=[], metavar="KEY=VALUE",
                        help="override a size guard; repeatable")

    p = argparse.ArgumentParser(prog="crosswalks", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("table", parents=[common], help="walk-count tables")
    t.add_argument("which", choices=sorted(TABLES))
    t.add_argument("--terms", type=int, default=7)
    t.set_defaults(func=cmd_table)

    c = sub.add_parser("count", parents=[common], help="walk counts into an end set")
    c.add_argument("--flavor", choices=["vacillating", "hesitating"], default="vacillating")
    c.add_argument("--endset", default="A2")
    c.add_argument("--start", default="1,0")
    c.add_argument("--min-length", type=int, default=0)
    c.add_argument("--max-length", type=int, default=12)
    c.set_defaults(func=cmd_count)

    pt = sub.add_parser("partitions", parents=[common], help="brute-force partition counts")
    pt.add_argument("--min-n", type=int, default=1)
    pt.add_argument("--max-n", type=int, default=10)
    pt.add_argument("--noncross-k", type=int)
    pt.add_argument("--enhanced", action="store_true")
    pt.add_argument("--bisymmetric", action="store_true")
    pt.add_argument("--method", choices=["fast", "filter"], default="fast")
    pt.set_defaults(func=cmd_partitions)

    s = sub.add_parser("series", parents=[common], help="constant-term series coefficients")
    s.add_argument("--flavor", choices=["vacillating", "hesitating"], default="vacillating")
    s.add_argument("--endset", default="A2")
    s.add_argument("--dump-series", metavar="FILE", help="also write the full bivariate series")
    s.set_defaults(func=cmd_series)

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=sorted(SUITES) + ["all"])
    v.set_defaults(func=cmd_verify)

    g = sub.add_parser("guess", parents=[common], help="guess a P-recurrence for a sequence file")
    g.add_argument("--in", dest="input", required=True, help="one integer per line, '-' for stdin")
    g.add_argument("--max-order", type=int, default=3)
    g.add_argument("--max-degree", type=int, default=2)
    g.set_defaults(func=cmd_guess)

    a = sub.add_parser("asymptotics", parents=[common], help="growth fits for the table rows")
    a.add_argument("rows", nargs="*", help=f"rows to fit (default all: {', '.join(TABLE_ROWS)})")
    a.add_argument("--n-max", type=int, default=2000)
    a.set_defaults(func=cmd_asymptotics)

    b = sub.add_parser("bijection", parents=[common], help="tableau encodings")
    b.add_argument("action", choices=["demo"])
    b.set_defaults(func=cmd_bijection)
    return p


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        guards = {}
        for item in args.guard:
            key, _, value = item.partition("=")
            if key not in DEFAULTS or not value.isdigit():
                raise UsageError(f"bad guard override {item!r}")
            guards[key] = int(value)
        cfg = RunConfig(args.N, args.window, args.walk_ceiling, args.format, guards)
        cfg.apply_guards()
        return args.func(args, cfg, out)
    except UsageError as e:
        print(f"crosswalks: error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"crosswalks: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
