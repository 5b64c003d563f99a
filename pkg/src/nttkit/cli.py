"""Command-line front end: correctness verification, timing, bank analysis.

Exit codes: 0 success, 1 verification/operational failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import random
import statistics
import sys
import time
from dataclasses import dataclass

from . import bankmodel
from .algorithms import VARIANTS, intt, make_plan, naive_dft, ntt, run_plan
from .errors import InvalidSize, NttError
from .modmath import DEFAULT_PRIME, FieldParams, find_primitive_root
from .polymul import cyclic_mul_ntt, schoolbook_cyclic
from .twiddle import FORWARD, build_table

BENCH_VARIANTS = tuple(v for v in VARIANTS if v != "naive")
BENCH_CSV_FIELDS = ("algo", "n", "prime", "reps", "mean_ns", "median_ns", "min_ns", "checksum")


@dataclass
class BenchRecord:
    algo: str
    n: int
    prime: int
    reps: int
    mean_ns: int
    median_ns: int
    min_ns: int
    checksum: int


def bench_input(n: int, prime: int, seed: int) -> list[int]:
    """Deterministic random residue vector for one benchmark cell."""
    rng = random.Random(f"{seed}-{n}-{prime}")
    return [rng.randrange(prime) for _ in range(n)]


def _field(prime: int) -> FieldParams:
    return FieldParams(prime, find_primitive_root(prime))


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def verify_run(max_log: int, seed: int, prime: int, vectors: int = 5, echo=print):
    """Oracle-equivalence, round-trip, and polymul suites up to 2**max_log.

    Returns the list of failure tuples (suite, algo, n); empty means pass.
    """
    params = _field(prime)
    rng = random.Random(seed)
    failures = []
    sizes = [1 << log for log in range(1, max_log + 1) if (prime - 1) % (1 << log) == 0]
    skipped = max_log - len(sizes)
    if skipped:
        echo(f"note: {skipped} size(s) skipped (do not divide p-1 for p={prime})")

    variants = [v for v in VARIANTS if v != "naive"]
    ok = {(v, n): True for v in variants for n in sizes}
    rt_ok = {(v, n): True for v in variants for n in sizes}
    for n in sizes:
        fwd = build_table(params, n, FORWARD)
        inv = build_table(params, n, INVERSE)
        for _ in range(vectors):
            x = [rng.randrange(prime) for _ in range(n)]
            want = naive_dft(x, fwd)
            for v in variants:
                if ok[(v, n)] and ntt(x, fwd, v) != want:
                    ok[(v, n)] = False
                    failures.append(("oracle", v, n))
                if rt_ok[(v, n)] and intt(ntt(x, fwd, v), inv, v) != x:
                    rt_ok[(v, n)] = False
                    failures.append(("roundtrip", v, n))

    poly_sizes = sizes
    poly_ok = {(v, n): True for v in variants for n in poly_sizes}
    for n in poly_sizes:
        a = [rng.randrange(prime) for _ in range(n)]
        b = [rng.randrange(prime) for _ in range(n)]
        want = schoolbook_cyclic(a, b, prime)
        for v in variants:
            if cyclic_mul_ntt(a, b, params, v) != want:
                poly_ok[(v, n)] = False
                failures.append(("polymul", v, n))

    def matrix(title, cells, cols):
        echo(title)
        header = "variant".ljust(10) + "".join(f"{f'N={n}':>9}" for n in cols)
        echo(header)
        for v in variants:
            row = v.ljust(10)
            for n in cols:
                row += f"{'ok' if cells[(v, n)] else 'FAIL':>9}"
            echo(row)

    matrix("oracle equivalence vs naive_dft", ok, sizes)
    matrix("round trip intt(ntt(x)) == x", rt_ok, sizes)
    if poly_sizes:
        matrix("cyclic polymul vs schoolbook", poly_ok, poly_sizes)
    for suite, v, n in failures:
        echo(f"FAIL suite={suite} algo={v} N={n} seed={seed}")
    echo("verify: " + ("PASS" if not failures else "FAIL"))
    return failures


def cmd_verify(args) -> int:
    failures = verify_run(args.max_log, args.seed, args.prime, args.vectors)
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# bench
# ---------------------------------------------------------------------------

def bench_run(algos, sizes, reps: int, prime: int, seed: int) -> list[BenchRecord]:
    """Time run_plan per (algo, size); twiddle precomputation is excluded."""
    params = _field(prime)
    records = []
    for n in sizes:
        if n < 2 or n & (n - 1) or (prime - 1) % n:
            raise InvalidSize(f"size {n} unusable with prime {prime}")
        x = bench_input(n, prime, seed)
        for algo in algos:
            plan = make_plan(params, algo, n, FORWARD)  # tables built and cached here
            checksum = run_plan(plan, x)[0]
            timings = []
            for _ in range(reps):
                t0 = time.perf_counter_ns()
                out = run_plan(plan, x)
                timings.append(time.perf_counter_ns() - t0)
            assert out[0] == checksum
            records.append(
                BenchRecord(
                    algo=algo,
                    n=n,
                    prime=prime,
                    reps=reps,
                    mean_ns=int(statistics.fmean(timings)),
                    median_ns=int(statistics.median(timings)),
                    min_ns=int(min(timings)),
                    checksum=checksum,
                )
            )
    return records


def write_bench_csv(records, path) -> None:
    """Append records, writing the header only when the file starts empty."""
    try:
        empty = not open(path, "rb").read(1)
    except FileNotFoundError:
        empty = True
    with open(path, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=BENCH_CSV_FIELDS)
        if empty:
            writer.writeheader()
        for r in records:
            writer.writerow({k: getattr(r, k) for k in BENCH_CSV_FIELDS})


def cmd_bench(args) -> int:
    algos = args.algo or list(BENCH_VARIANTS)
    sizes = args.size or [1024, 4096, 16384]
    records = bench_run(algos, sizes, args.reps, args.prime, args.seed)
    header = f"{'algo':<10}{'n':>8}{'reps':>6}{'mean_ns':>14}{'median_ns':>14}{'min_ns':>14}  checksum"
    print(header)
    for r in records:
        print(
            f"{r.algo:<10}{r.n:>8}{r.reps:>6}{r.mean_ns:>14}{r.median_ns:>14}"
            f"{r.min_ns:>14}  {r.checksum}"
        )
    if args.csv:
        write_bench_csv(records, args.csv)
        print(f"wrote {len(records)} rows to {args.csv}")
    return 0


# ---------------------------------------------------------------------------
# banks
# ---------------------------------------------------------------------------

def cmd_banks(args) -> int:
    if args.units is not None:
        if args.algo != "pease_nc":
            print("error: --units applies to the pease_nc swap-safety check")
            return 1
        report = bankmodel.pease_nc_partition_check(args.log_n, args.units, args.ports)
        print(bankmodel.report_text(report))
        _maybe_banks_csv(args, report)
        return 0

    trace = bankmodel.gen_trace(args.algo, args.log_n)
    if args.search:
        if args.banks is None:
            print("error: --search requires --banks")
            return 1
        partition = bankmodel.feasible_partition(
            trace, args.banks, ports=args.ports, unroll=args.unroll
        )
        if partition is None:
            print(f"infeasible: no II=1 partition with {args.banks} bank(s) per array")
            return 0
        for array_id, bank_map in sorted(partition.items()):
            if bank_map.kind == "explicit":
                detail = " ".join(f"{a}->{b}" for a, b in enumerate(bank_map.table))
            else:
                detail = f"{bank_map.kind}={bank_map.param}"
            print(f"array {array_id}: {detail}")
        print("feasible: II=1")
        return 0

    if args.blocksize is not None:
        mapping = bankmodel.blocksize(args.blocksize)
    else:
        mapping = bankmodel.interleave(args.interleave)
    cfg = bankmodel.BankConfig(mapping, ports=args.ports, unroll=args.unroll)
    report = bankmodel.schedule(trace, cfg, target_ii=1)
    print(bankmodel.report_text(report))
    _maybe_banks_csv(args, report)
    return 0


def _maybe_banks_csv(args, report) -> None:
    if not args.csv:
        return
    row = bankmodel.report_csv_row(report)
    row.update({"algo": args.algo, "log_n": args.log_n,
                "ports": args.ports, "unroll": args.unroll})
    fields = ["algo", "log_n", "ports", "unroll", "achieved_ii", "target_ii",
              "feasible", "conflicts", "swap_safe"]
    try:
        empty = not open(args.csv, "rb").read(1)
    except FileNotFoundError:
        empty = True
    with open(args.csv, "a", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields)
        if empty:
            writer.writeheader()
        writer.writerow(row)
    print(f"wrote report to {args.csv}")


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nttkit")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="cross-check every variant against the oracle")
    p_verify.add_argument("--max-log", type=int, default=10)
    p_verify.add_argument("--seed", type=int, default=42)
    p_verify.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p_verify.add_argument("--vectors", type=int, default=5)
    p_verify.set_defaults(func=cmd_verify)

    p_bench = sub.add_parser("bench", help="time the variants and emit CSV")
    p_bench.add_argument("--algo", action="append", choices=BENCH_VARIANTS)
    p_bench.add_argument("--size", action="append", type=int)
    p_bench.add_argument("--reps", type=int, default=100)
    p_bench.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    p_bench.add_argument("--seed", type=int, default=42)
    p_bench.add_argument("--csv")
    p_bench.set_defaults(func=cmd_bench)

    p_banks = sub.add_parser("banks", help="bank-conflict analysis of one variant")
    p_banks.add_argument("--algo", required=True, choices=bankmodel.TRACE_VARIANTS)
    p_banks.add_argument("--log-n", type=int, required=True)
    p_banks.add_argument("--interleave", type=int, default=1)
    p_banks.add_argument("--blocksize", type=int)
    p_banks.add_argument("--banks", type=int)
    p_banks.add_argument("--ports", type=int, default=2)
    p_banks.add_argument("--unroll", type=int, default=1)
    p_banks.add_argument("--units", type=int)
    p_banks.add_argument("--search", action="store_true")
    p_banks.add_argument("--csv")
    p_banks.set_defaults(func=cmd_banks)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and not 1 <= args.max_log <= 14:
        parser.error("--max-log must be in [1, 14]")
    if args.command == "banks" and not 1 <= args.log_n <= 16:
        parser.error("--log-n must be in [1, 16]")
    try:
        return args.func(args)
    except NttError as exc:
        print(f"error: {type(exc).__name__}: {exc}")
        return 1


if __name__ == "__main__":
    sys.exit(main())
