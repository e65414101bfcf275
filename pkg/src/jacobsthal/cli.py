"""Command-line interface.

Every command can print human-readable text (``--format text``, default) or
line-delimited JSON records (``--format records``).  Each record is an
object ``{"schema_version": 1, "command": ..., "payload": {...}}``; large
integers are written as decimal strings.

Exit codes: 0 when the run matched the expected profile, 1 when it
completed but found an unexpected counterexample, 2 on usage or I/O errors.

Flags fall back to ``JACOBSTHAL_<FLAG>`` environment variables (for example
``JACOBSTHAL_BUDGET``, ``JACOBSTHAL_WORKERS``, ``JACOBSTHAL_CACHE``), then to
built-in defaults.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from jacobsthal import cache as cache_io
from jacobsthal.divisibility import (
    check_index_family,
    decompose,
    divides_index,
    family_index,
    family_predicted,
    gcd_law_sample,
    index_divisibility_exceptions,
    max_divisor_is_non_jacobsthal,
    v3_valuation,
)
from jacobsthal.factorization import Budget, FactorCache, is_probable_prime, scan_index
from jacobsthal.identities import IDENTITY_NAMES, sweep_identity
from jacobsthal.modular import jacobsthal_mod, unit_witness
from jacobsthal.sequence import jacobsthal, jacobsthal_lucas

SCHEMA_VERSION = 1
ENV_PREFIX = "JACOBSTHAL_"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    """Parse ``A..B`` (inclusive) or a single integer ``A``."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected A..B") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _env(name: str, convert=str, default=None):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return default
    try:
        return convert(raw)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise UsageError(f"bad value for {ENV_PREFIX}{name}: {raw!r} ({exc})") from None


def make_row(command: str, payload: dict) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "payload": payload}


def dump_row(row: dict) -> str:
    return json.dumps(row, separators=(",", ":"), ensure_ascii=False)


class Output:
    """Routes result rows to stdout as text or records."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def emit(self, command: str, payload: dict, text: str) -> None:
        if self.fmt == "records":
            print(dump_row(make_row(command, payload)), file=self.stream)
        else:
            print(text, file=self.stream)


# --- simple commands -------------------------------------------------------


def cmd_compute(args, out: Output) -> int:
    if args.modulus is not None:
        if args.lucas:
            value = jacobsthal_lucas(args.k) % args.modulus
        else:
            value = jacobsthal_mod(args.k, args.modulus).value
    else:
        value = jacobsthal_lucas(args.k) if args.lucas else jacobsthal(args.k)
    payload = {"k": args.k, "variant": "j" if args.lucas else "J", "modulus": args.modulus, "value": str(value)}
    out.emit("compute", payload, str(value))
    return EXIT_OK


def cmd_identity(args, out: Output) -> int:
    lo, hi = args.range_pos or args.range or (None, None)
    if lo is None:
        raise UsageError("identity needs a range, e.g. 'identity double 0..100'")
    try:
        report = sweep_identity(args.name, lo, hi)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = report.to_dict()
    out.emit(
        "identity",
        {"summary": True, **summary},
        f"{report.name} {lo}..{hi}: checked={report.checked} failures={len(report.failures)}"
        + ("" if report.expectation_met else "  UNEXPECTED"),
    )
    for verdict in report.failures:
        row = verdict.to_dict()
        out.emit("identity", {"summary": False, **row}, f"  fails at {row['index']}: lhs-rhs = {row['difference']}")
    return EXIT_OK if report.expectation_met else EXIT_COUNTEREXAMPLE


def cmd_divides(args, out: Output) -> int:
    if args.n is not None:
        if args.m is None:
            raise UsageError("divides needs both N and M, or --range")
        if args.n < 1 or args.m < 1:
            raise UsageError("indices must be positive")
        value_div = divides_index(args.n, args.m)
        index_div = args.m % args.n == 0
        literal = value_div == index_div
        payload = {
            "n": args.n,
            "m": args.m,
            "value_divides": value_div,
            "index_divides": index_div,
            "literal_iff_holds": literal,
            "expected_exception": not literal and args.n <= 2,
        }
        text = f"J_{args.n} | J_{args.m}: {value_div}; {args.n} | {args.m}: {index_div}"
        if not literal:
            text += "  (iff fails" + (", known exception: J_n = 1)" if args.n <= 2 else ")")
        out.emit("divides", payload, text)
        return EXIT_OK if literal or args.n <= 2 else EXIT_COUNTEREXAMPLE

    if args.range is None:
        raise UsageError("divides needs N M or --range A..B")
    n_lo, n_hi = args.range
    m_lo, m_hi = args.m_range or args.range
    if n_lo < 1 or m_lo < 1:
        raise UsageError("indices must be positive")
    exceptions = index_divisibility_exceptions(range(n_lo, n_hi + 1), range(m_lo, m_hi + 1))
    unexpected = [v for v in exceptions if not v.detail["expected"]]
    checked = (n_hi - n_lo + 1) * (m_hi - m_lo + 1)
    out.emit(
        "divides",
        {"summary": True, "n_range": [n_lo, n_hi], "m_range": [m_lo, m_hi], "checked": checked,
         "exceptions": len(exceptions), "unexpected": len(unexpected)},
        f"n in {n_lo}..{n_hi}, m in {m_lo}..{m_hi}: checked={checked} "
        f"iff-exceptions={len(exceptions)} unexpected={len(unexpected)}",
    )
    for verdict in exceptions:
        n, m = verdict.index
        out.emit(
            "divides",
            {"summary": False, **verdict.to_dict()},
            f"  n={n} m={m}: J_n | J_m={verdict.detail['value_divides']} n | m={verdict.detail['index_divides']}"
            + ("" if verdict.detail["expected"] else "  UNEXPECTED"),
        )
    return EXIT_COUNTEREXAMPLE if unexpected else EXIT_OK


def cmd_gcd_law(args, out: Output) -> int:
    lo, hi = args.range or (1, 2000)
    if lo < 1:
        raise UsageError("indices must be positive")
    checked, failures = gcd_law_sample(args.samples, lo, hi, seed=args.seed)
    out.emit(
        "gcd-law",
        {"range": [lo, hi], "seed": args.seed, "checked": checked, "failures": [list(p) for p in failures]},
        f"gcd(J_m, J_n) = J_gcd(m,n): {checked} pairs in {lo}..{hi} (seed {args.seed}), {len(failures)} failures",
    )
    return EXIT_COUNTEREXAMPLE if failures else EXIT_OK


def cmd_valuation(args, out: Output) -> int:
    if args.k < 1:
        raise UsageError("k must be positive")
    result = v3_valuation(args.k)
    out.emit(
        "valuation",
        result.to_dict(),
        f"v_3(J_{args.k}) = {result.exponent} (formula v_3(k) = {result.formula_exponent}, agree={result.agrees})",
    )
    return EXIT_OK if result.agrees else EXIT_COUNTEREXAMPLE


def cmd_decompose(args, out: Output) -> int:
    try:
        d = decompose(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.emit("decompose", d.to_dict(), f"J_{d.q} = lcm(J_{d.m}, J_{d.k}) * {d.cofactor}")
    return EXIT_OK


# --- scans -------------------------------------------------------------------

_WORKER_CACHE: FactorCache | None = None


def _init_worker(entries) -> None:
    global _WORKER_CACHE
    _WORKER_CACHE = FactorCache(entries)


def _scan_primes_row(q, budget, seed, cache, timing):
    t0 = time.perf_counter()
    record = scan_index(q, budget, seed=seed, cache=cache)
    record.elapsed = round(time.perf_counter() - t0, 6)
    row = record.to_dict(timing=timing)
    # only composite index 4 is expected to give a prime
    unexpected = record.index_class == "composite" and record.value_class != "composite" and q != 4
    return row, unexpected


def _scan_unit_witness_row(q, budget, seed, cache, timing):
    result = unit_witness(q, budget, seed=seed, cache=cache)
    return result.to_dict(), result.status == "witness" and result.witness.x != 1


def _scan_max_divisor_row(q, budget, seed, cache, timing):
    if q <= 4 or is_probable_prime(q).is_prime:
        return {"name": "max-divisor", "index": q, "status": "skipped", "reason": "index_not_composite_above_4"}, False
    if is_probable_prime(jacobsthal(q)).is_prime:
        return {"name": "max-divisor", "index": q, "status": "skipped", "reason": "value_is_prime"}, False
    verdict = max_divisor_is_non_jacobsthal(q, budget, seed=seed, cache=cache)
    return verdict.to_dict(), verdict.status == "fails"


def _scan_family_row(n, budget, seed, cache, timing, base=19, kind="linear"):
    f = family_index(base, n, kind)
    divides = check_index_family(base, n, kind)
    predicted = family_predicted(base, n, kind)
    row = {"base": base, "n": n, "kind": kind, "index": str(f), "divides": divides, "predicted": predicted}
    return row, predicted and not divides


_SCANNERS = {
    "primes": _scan_primes_row,
    "unit-witness": _scan_unit_witness_row,
    "max-divisor": _scan_max_divisor_row,
    "family": _scan_family_row,
}


def _run_task(kind, index, budget, seed, timing, extra):
    cache = _WORKER_CACHE
    row, unexpected = _SCANNERS[kind](index, budget, seed, cache, timing, **extra)
    new = cache.drain_new() if cache is not None else []
    return index, row, unexpected, new


def run_scan(kind: str, lo: int, hi: int, budget: Budget, *, seed: int = 0, workers: int = 1,
             cache: FactorCache | None = None, timing: bool = False, extra: dict | None = None):
    """Run a scan over ``lo..hi``; return rows sorted by index and the unexpected flags.

    Worker processes start from a snapshot of ``cache`` and hand new
    factorizations back; only this process writes to ``cache``.
    """
    extra = extra or {}
    cache = cache if cache is not None else FactorCache()
    indices = list(range(lo, hi + 1))
    results = []
    if workers <= 1:
        global _WORKER_CACHE
        saved, _WORKER_CACHE = _WORKER_CACHE, cache
        try:
            results = [_run_task(kind, i, budget, seed, timing, extra) for i in indices]
        finally:
            _WORKER_CACHE = saved
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(cache.entries(),)) as pool:
            futures = [pool.submit(_run_task, kind, i, budget, seed, timing, extra) for i in indices]
            results = [f.result() for f in futures]
        for _, _, _, new in results:
            for fac in new:
                cache.put(fac)
    cache.drain_new()
    results.sort(key=lambda r: r[0])
    return [(row, unexpected) for _, row, unexpected, _ in results]


def _summarize(kind: str, rows) -> dict:
    summary = {"summary": True, "records": len(rows), "unexpected": sum(u for _, u in rows)}
    payloads = [r for r, _ in rows]
    if kind == "primes":
        summary["composite_index_primes"] = [
            r["q"] for r in payloads if r["index_class"] == "composite" and r["value_class"] != "composite"
        ]
        summary["prime_index_composites"] = [
            r["q"] for r in payloads
            if r["index_class"] == "prime" and r["value_class"] == "composite" and r["factors"] is not None
        ]
        summary["incomplete_factorizations"] = [
            r["q"] for r in payloads if r["factors"] is not None and not r["factors"]["complete"]
        ]
    elif kind == "unit-witness":
        witnesses = [r for r in payloads if r["status"] == "witness"]
        summary["witnesses"] = len(witnesses)
        summary["x_is_one"] = sum(1 for r in witnesses if r["x_is_one"])
        summary["inconclusive"] = [r["q"] for r in payloads if r["status"] == "inconclusive"]
    elif kind == "max-divisor":
        for status in ("holds", "fails", "inconclusive", "skipped"):
            summary[status] = sum(1 for r in payloads if r["status"] == status)
    elif kind == "family":
        summary["divides"] = [r["n"] for r in payloads if r["divides"]]
    return summary


def cmd_scan(args, out: Output) -> int:
    kind = args.kind
    lo, hi = args.range_pos or args.range or (None, None)
    if lo is None:
        raise UsageError(f"scan {kind} needs a range")
    if lo < (0 if kind == "family" else 2):
        raise UsageError(f"range start too small for scan {kind}")
    extra = {}
    if kind == "family":
        if args.base < 1:
            raise UsageError("family base must be positive")
        extra = {"base": args.base, "kind": "power" if args.power else "linear"}

    cache = cache_io.load_cache(args.cache) if args.cache else FactorCache()
    budget = Budget(rho_iterations=args.budget, trial_bound=args.trial_bound)
    t0 = time.perf_counter()
    rows = run_scan(kind, lo, hi, budget, seed=args.seed, workers=args.workers, cache=cache,
                    timing=args.timing, extra=extra)
    elapsed = time.perf_counter() - t0
    command = f"scan-{kind}"
    lines = [dump_row(make_row(command, row)) + "\n" for row, _ in rows]
    summary = _summarize(kind, rows)

    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.writelines(lines)
        summary_stream = out
    else:
        sys.stdout.writelines(lines)
        summary_stream = Output(args.format, sys.stderr)
    if args.cache:
        cache_io.save_cache(cache, args.cache)

    text = f"scan {kind} {lo}..{hi}: " + ", ".join(f"{k}={v}" for k, v in summary.items() if k != "summary")
    summary_stream.emit(command, summary, text + f" ({elapsed:.2f}s)")
    return EXIT_COUNTEREXAMPLE if summary["unexpected"] else EXIT_OK


def cmd_cache(args, out: Output) -> int:
    if not args.cache:
        raise UsageError("cache commands need --cache PATH (or JACOBSTHAL_CACHE)")
    if args.action == "show":
        cache = cache_io.load_cache(args.cache)
        for _, fac in sorted(cache.entries().items()):
            out.emit("cache", fac.to_dict(), cache_io.format_entry(fac))
        return EXIT_OK
    valid, bad = cache_io.verify_cache_file(args.cache)
    out.emit(
        "cache",
        {"valid": valid, "corrupt": [[lineno, err] for lineno, err in bad]},
        f"{valid} valid entries, {len(bad)} corrupt" + "".join(f"\n  line {n}: {e}" for n, e in bad),
    )
    return EXIT_COUNTEREXAMPLE if bad else EXIT_OK


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "records"), default=_env("FORMAT", default="text"))
    common.add_argument("--range", type=parse_range, default=_env("RANGE", parse_range), metavar="A..B")
    common.add_argument("--budget", type=int, default=_env("BUDGET", int, Budget.rho_iterations),
                        metavar="UNITS", help="Pollard-rho iterations per factored value")
    common.add_argument("--trial-bound", type=int, default=_env("TRIAL_BOUND", int, Budget.trial_bound))
    common.add_argument("--workers", type=_positive_int, default=_env("WORKERS", _positive_int, 1))
    common.add_argument("--out", default=_env("OUT"), metavar="PATH")
    common.add_argument("--cache", default=_env("CACHE"), metavar="PATH")
    common.add_argument("--seed", type=int, default=_env("SEED", int, 0))
    common.add_argument("--timing", action="store_true", help="include elapsed seconds in scan records")

    parser = argparse.ArgumentParser(prog="jacobsthal", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", parents=[common], help="print J_k (or j_k with --lucas)")
    p.add_argument("k", type=int)
    p.add_argument("--lucas", action="store_true")
    p.add_argument("--mod", dest="modulus", type=_positive_int, metavar="N")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("identity", parents=[common], help="sweep an identity over a range")
    p.add_argument("name", choices=IDENTITY_NAMES)
    p.add_argument("range_pos", nargs="?", type=parse_range, metavar="A..B")
    p.set_defaults(func=cmd_identity)

    p = sub.add_parser("divides", parents=[common], help="compare J_n | J_m with n | m")
    p.add_argument("n", nargs="?", type=int)
    p.add_argument("m", nargs="?", type=int)
    p.add_argument("--m-range", type=parse_range, metavar="A..B")
    p.set_defaults(func=cmd_divides)

    p = sub.add_parser("gcd-law", parents=[common], help="check gcd(J_m, J_n) = J_gcd(m,n) on random pairs")
    p.add_argument("--samples", type=_positive_int, default=1000)
    p.set_defaults(func=cmd_gcd_law)

    p = sub.add_parser("valuation", parents=[common], help="3-adic valuation of J_k")
    p.add_argument("k", type=int)
    p.set_defaults(func=cmd_valuation)

    p = sub.add_parser("decompose", parents=[common], help="split J_q around its largest proper divisor")
    p.add_argument("q", type=int)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("scan", help="run a conjecture/proposition scan")
    scan_sub = p.add_subparsers(dest="kind", required=True)
    for kind in ("primes", "unit-witness", "max-divisor"):
        sp = scan_sub.add_parser(kind, parents=[common])
        sp.add_argument("range_pos", nargs="?", type=parse_range, metavar="A..B")
        sp.set_defaults(func=cmd_scan)
    sp = scan_sub.add_parser("family", parents=[common], help="f | J_f for f = BASE*3^n (or BASE^n*3^(n+2))")
    sp.add_argument("base", type=int)
    sp.add_argument("range_pos", nargs="?", type=parse_range, metavar="A..B", help="range of n")
    sp.add_argument("--power", action="store_true", help="use f = BASE^n * 3^(n+2)")
    sp.set_defaults(func=cmd_scan)

    p = sub.add_parser("cache", parents=[common], help="inspect the factor cache")
    p.add_argument("action", choices=("show", "verify"))
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"jacobsthal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args, Output(args.format))
    except (UsageError, ValueError) as exc:
        print(f"jacobsthal: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"jacobsthal: I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
