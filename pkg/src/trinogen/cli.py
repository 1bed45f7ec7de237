"""Command-line interface.

Every command writes newline-delimited records (JSON lines by default, CSV
with ``--format csv``).  Numbers are written as decimal strings.  Exit codes:
0 success, 1 computation error, 2 bad arguments, 3 a theorem inconsistency
(a would-be counterexample).
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import enum
import io
import json
import sys
import time
from typing import Any, Callable, Iterable

from trinogen import _backend
from trinogen.lucas import WssMethod, period, wss_sieve, wss_test
from trinogen.monogenic import family_report, monogenicity_report, verify_main_theorem
from trinogen.polyfp import EDF_SEED, Trinomial
from trinogen.quadfield import field_data

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_ERROR, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2, 3


def to_wire(obj: Any) -> Any:
    """Convert results to JSON-safe values, integers as decimal strings."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return f"{obj:.3f}"
    if isinstance(obj, Trinomial):
        return {"N": str(obj.N), "M": str(obj.M), "A": str(obj.A), "B": str(obj.B), "text": str(obj)}
    if dataclasses.is_dataclass(obj):
        return {f.name: to_wire(getattr(obj, f.name)) for f in dataclasses.fields(obj) if f.repr}
    if isinstance(obj, dict):
        return {str(k): to_wire(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_wire(v) for v in obj]
    return str(obj)


def flatten(record: dict, prefix: str = "") -> dict[str, str]:
    """Dotted-key view of a record, as written to CSV."""
    out: dict[str, str] = {}
    for key, value in record.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            out.update(flatten(value, name + "."))
        elif isinstance(value, list):
            out[name] = json.dumps(value, separators=(",", ":"))
        elif value is None:
            out[name] = ""
        elif isinstance(value, bool):
            out[name] = "true" if value else "false"
        else:
            out[name] = value
    return out


class Emitter:
    def __init__(self, fmt: str, stream=None, timing: bool = True):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.timing = timing
        self._csv_header: list[str] | None = None

    def record(self, command: str, inputs: dict, result: Any, started: float) -> dict:
        elapsed = (time.perf_counter() - started) * 1000 if self.timing else 0.0
        return {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "inputs": to_wire(inputs),
            "result": to_wire(result),
            "timing_ms": f"{elapsed:.3f}",
        }

    def emit(self, rec: dict) -> None:
        if self.fmt == "json":
            self.stream.write(json.dumps(rec, separators=(",", ":")) + "\n")
            return
        flat = flatten(rec)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        if self._csv_header is None:
            self._csv_header = list(flat)
            writer.writerow(self._csv_header)
        writer.writerow([flat.get(k, "") for k in self._csv_header])
        self.stream.write(buf.getvalue())


def _log(args: argparse.Namespace, msg: str) -> None:
    if not args.quiet:
        print(msg, file=sys.stderr)


def cmd_period(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    rec = period(args.k, args.m)
    out.emit(out.record("period", {"k": args.k, "m": args.m}, {"k": rec.k, "m": rec.m, "pi": rec.pi}, t0))
    return EXIT_OK


def cmd_wss_check(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    verdict = wss_test(args.k, args.p, args.method)
    inputs = {"k": args.k, "p": args.p, "method": args.method}
    out.emit(out.record("wss check", inputs, verdict, t0))
    return EXIT_OK


def cmd_wss_sieve(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    hits = wss_sieve(args.k, args.pmin, args.pmax, jobs=args.jobs)
    inputs = {"k": args.k, "pmin": args.pmin, "pmax": args.pmax}
    for verdict in hits:
        out.emit(out.record("wss sieve", inputs, verdict, t0))
    _log(
        args,
        f"wss sieve k={args.k} p in [{args.pmin}, {args.pmax}]: {len(hits)} hit(s) "
        f"in {(time.perf_counter() - t0) * 1000:.0f} ms ({_backend.BACKEND} kernels)",
    )
    return EXIT_OK


def cmd_field(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    fd = field_data(args.k)
    result = {
        "D": fd.D,
        "fund_disc": fd.fund_disc,
        "squarefree": fd.squarefree_D,
        "class_number": fd.class_number,
        "in_theorem_range": fd.in_theorem_range,
    }
    out.emit(out.record("field", {"k": args.k}, result, t0))
    return EXIT_OK


def cmd_mono(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    if args.family:
        inputs = {"family": True, "k": args.k, "s": args.s, "n": args.n}
        report = family_report(args.k, args.s, args.n)
    else:
        t = Trinomial(args.N, args.M, args.A, args.B)
        inputs = {"N": args.N, "M": args.M, "A": args.A, "B": args.B, "attest_irreducible": args.attest_irreducible}
        report = monogenicity_report(t, attest_irreducible=args.attest_irreducible)
    result = to_wire(report)
    result["complete"] = report.complete
    result["index_primes"] = to_wire(report.index_primes)
    result["edf_seed"] = str(EDF_SEED)
    out.emit(out.record("mono", inputs, result, t0))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, out: Emitter) -> int:
    t0 = time.perf_counter()
    rep = verify_main_theorem(args.k, args.s, args.depth)
    result = to_wire(rep)
    result["family_index_primes"] = {str(n): to_wire(r.index_primes) for n, r in enumerate(rep.family_reports, 1)}
    out.emit(out.record("verify", {"k": args.k, "s": args.s, "depth": args.depth}, result, t0))
    if rep.consistent_with_theorem is False:
        _log(args, f"INCONSISTENT: k={args.k}, s={args.s} contradicts the WSS/monogenicity equivalence")
        return EXIT_INCONSISTENT
    return EXIT_OK


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {value}")
    return value


def _global_flags(parser: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--format", choices=("json", "csv"), default=d("json"), help="output format")
    parser.add_argument("--jobs", type=_positive, default=d(1), help="worker processes for the sieve")
    parser.add_argument("--quiet", action="store_true", default=d(False), help="no stderr progress lines")
    parser.add_argument(
        "--no-timing", action="store_true", default=d(False), help="write timing_ms as 0 (byte-reproducible output)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trinogen",
        description="Lucas periods, k-Wall-Sun-Sun primes and monogenicity of x^(2s^n) - k x^(s^n) - 1",
    )
    _global_flags(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, fn: Callable, parent=sub, **kw) -> argparse.ArgumentParser:
        p = parent.add_parser(name, **kw)
        _global_flags(p, suppress=True)
        p.set_defaults(func=fn)
        return p

    p = add("period", cmd_period, help="period of U_n(k,-1) mod m")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--m", type=int, required=True)

    wss = sub.add_parser("wss", help="k-Wall-Sun-Sun primes")
    wss_sub = wss.add_subparsers(dest="wss_command", required=True)
    p = add("check", cmd_wss_check, parent=wss_sub, help="test a single prime")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--method", choices=[m.value for m in WssMethod], default=None)
    p = add("sieve", cmd_wss_sieve, parent=wss_sub, help="search a prime range")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--pmin", type=int, default=2)
    p.add_argument("--pmax", type=int, required=True)

    p = add("field", cmd_field, help="D, fundamental discriminant and class number")
    p.add_argument("--k", type=_positive, required=True)

    p = add("mono", cmd_mono, help="monogenicity of a trinomial")
    p.add_argument("--family", action="store_true", help="use x^(2s^n) - k x^(s^n) - 1")
    p.add_argument("--k", type=_positive)
    p.add_argument("--s", type=_positive)
    p.add_argument("--n", type=_positive)
    p.add_argument("--N", type=int)
    p.add_argument("--M", type=int)
    p.add_argument("--A", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--attest-irreducible", action="store_true", help="caller vouches for irreducibility over Q")

    p = add("verify", cmd_verify, help="check the WSS / monogenicity equivalence for (k, s)")
    p.add_argument("--k", type=_positive, required=True)
    p.add_argument("--s", type=_positive, required=True)
    p.add_argument("--depth", type=_positive, default=2)
    return parser


def _validate(parser: argparse.ArgumentParser, args: argparse.Namespace) -> None:
    if args.command == "field" and args.k == 4:
        parser.error("k = 4 is excluded")
    if args.command == "mono":
        if args.family:
            if None in (args.k, args.s, args.n):
                parser.error("mono --family needs --k, --s and --n")
            if args.k == 4:
                parser.error("k = 4 is excluded")
        else:
            if None in (args.N, args.M, args.A, args.B):
                parser.error("mono needs --N, --M, --A and --B (or --family)")
            if not 0 < args.M < args.N:
                parser.error("need 0 < M < N")
    if args.command == "period" and args.m < 2:
        parser.error("--m must be >= 2")
    if args.command == "wss" and args.wss_command == "sieve" and not 2 <= args.pmin <= args.pmax:
        parser.error("need 2 <= --pmin <= --pmax")


def main(argv: Iterable[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _validate(parser, args)
    out = Emitter(args.format, timing=not args.no_timing)
    try:
        return args.func(args, out)
    except (ValueError, ArithmeticError, OverflowError) as exc:
        print(f"trinogen: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
