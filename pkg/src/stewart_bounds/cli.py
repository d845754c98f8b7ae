"""Command-line surface: one subcommand per pipeline, reproducible output.

Subcommands: n0 (threshold for one kappa), tables (the published rows),
verify-qk (the eta q_k < k^1.3 sweep), primitive (primitive divisors of
F_n), cyclotomic (Phi_n(gamma) and its estimate checks), yu-check (the
fixed-constant inequality battery), bigkappa (the 143 log kappa
log log kappa chain).

Output is deterministic for a fixed config: JSON is sorted and carries
every scanned intermediate (k, Theta_k, Lambda, dsn), CSV layouts are
documented in docs/csv_formats.md, and the worker-pool size never
affects bytes (parallel table rows merge in argument order).  mpfr
values serialize as 42-digit decimals, which round-trip exactly at the
default 128-bit precision.

Exit status: 0 success, 1 hypothesis violation, 2 verification failure
(a checked inequality came back false), 3 incomplete factorization.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, fields, is_dataclass

from gmpy2 import mpfr

from .bounds import (
    BigKappaChain,
    BoundResult,
    ChainLink,
    ScanEntry,
    Validity,
    YuCheckReport,
    YuRow,
    bigkappa_bound,
    n0_optimize,
    yu_constants_check,
)
from .cyclotomic import (
    CyclotomicValue,
    EsumCheck,
    SchinzelCheck,
    SchinzelRow,
    SchwarzReport,
    esum_identity_check,
    phi_eval_exact,
    schinzel_check,
)
from .errors import (
    HypothesisViolation,
    IncompleteFactorization,
    StewartBoundsError,
)
from .fiboracle import (
    ApparitionRecord,
    EliouCheck,
    PrimitiveDivisorSet,
    primitive_divisors,
)
from .quadfield import QuadInt
from .rounding import mpfr_from_str, mpfr_str
from .splitprimes import QkVerification, verify_qk_bound

SCHEMA = "stewart-bounds/1"
LEMMA_FULL_K = 80802434
TABLE_1_KAPPAS = tuple(range(1, 11))
TABLE_2_KAPPAS = (20, 30, 40, 50, 100, 1000, 10 ** 4, 10 ** 5, 10 ** 6)

SUBCOMMANDS = ("n0", "tables", "verify-qk", "primitive", "cyclotomic",
               "yu-check", "bigkappa")
FORMATS = ("human", "json", "csv")


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    precision_bits: int = 128
    output_format: str = "human"
    cache_dir: str | None = None
    parallelism: int = 1

    def __post_init__(self):
        if self.subcommand not in SUBCOMMANDS:
            raise ValueError(f"unknown subcommand {self.subcommand!r}")
        if self.precision_bits < 64:
            raise ValueError("precision below 64 bits is not supported")
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass(frozen=True)
class TableReport:
    """The published threshold rows, recomputed."""

    which: str  # "1", "2", or "both"
    rows: tuple  # of BoundResult


@dataclass(frozen=True)
class CyclotomicSurvey:
    """Phi_n(gamma) with its estimate checks bundled for one n."""

    n: int
    value: CyclotomicValue
    esum: EsumCheck
    schinzel: SchinzelCheck


# ---------------------------------------------------------------------------
# Serialization.  JSON tags the only non-JSON scalars ({"mpfr": dec} and
# {"set": [...]}) and nests dataclasses as {"type": ..., "fields": ...},
# so every report parses back to an equal object at default precision.

_REPORT_TYPES = {cls.__name__: cls for cls in (
    ApparitionRecord, BigKappaChain, BoundResult, ChainLink,
    CyclotomicSurvey, CyclotomicValue, EliouCheck, EsumCheck,
    PrimitiveDivisorSet, QkVerification, QuadInt, ScanEntry, SchinzelCheck,
    SchinzelRow, SchwarzReport, TableReport, Validity, YuCheckReport, YuRow,
)}


def _to_jsonable(x):
    if is_dataclass(x) and not isinstance(x, type):
        return {"type": type(x).__name__,
                "fields": {f.name: _to_jsonable(getattr(x, f.name))
                           for f in fields(x)}}
    if isinstance(x, mpfr):
        return {"mpfr": mpfr_str(x)}
    if isinstance(x, frozenset):
        return {"set": [_to_jsonable(v) for v in sorted(x)]}
    if isinstance(x, (tuple, list)):
        return [_to_jsonable(v) for v in x]
    if x is None or isinstance(x, (bool, int, float, str)):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _from_jsonable(x, bits: int):
    if isinstance(x, dict):
        if "mpfr" in x:
            return mpfr_from_str(x["mpfr"], bits)
        if "set" in x:
            return frozenset(_from_jsonable(v, bits) for v in x["set"])
        cls = _REPORT_TYPES[x["type"]]
        kwargs = {k: _from_jsonable(v, bits) for k, v in x["fields"].items()}
        return cls(**kwargs)
    if isinstance(x, list):
        return tuple(_from_jsonable(v, bits) for v in x)
    return x


def parse_report(data, bits: int = 128):
    """Inverse of emit_report for the json format (exact at 128 bits)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    obj = json.loads(data)
    if isinstance(obj, dict) and "report" in obj:
        obj = obj["report"]
    return _from_jsonable(obj, bits)


def _num(x):
    """Human/CSV-friendly scalar: mpfr to short decimal, rest unchanged."""
    if isinstance(x, mpfr):
        return f"{float(x):.12g}"
    if isinstance(x, float):
        return f"{x:.12g}"
    return "" if x is None else str(x)


def _csv_table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_num(v) for v in row])
    return buf.getvalue()


def _csv_of(result) -> str:
    if isinstance(result, BoundResult):
        return _csv_table(
            ["kappa", "k", "theta_k", "lambda", "dsn", "n0", "selected"],
            [(result.kappa, e.k, e.theta_k, e.lambda_value, e.dsn, e.n0,
              e.k == result.k) for e in result.scan] or
            [(result.kappa, result.k, result.theta_k, result.lambda_value,
              result.log_n_bound, result.n0, True)])
    if isinstance(result, TableReport):
        return _csv_table(["table", "kappa", "k", "n0"],
                          [(result.which, r.kappa, r.k, r.n0)
                           for r in result.rows])
    if isinstance(result, QkVerification):
        return _csv_table(
            ["k_from", "k_to", "exponent", "passed", "checked", "last_k",
             "last_q", "max_ratio", "escalations", "first_fail_k",
             "first_fail_q"],
            [(result.k_from, result.k_to, result.exponent, result.passed,
              result.checked, result.last_k, result.last_q, result.max_ratio,
              result.escalations, result.first_fail_k, result.first_fail_q)])
    if isinstance(result, PrimitiveDivisorSet):
        return _csv_table(["n", "p", "nu"],
                          [(result.n, p, e)
                           for p, e in sorted(result.divisors)])
    if isinstance(result, YuCheckReport):
        return _csv_table(["k", "p_floor", "name", "lhs", "rhs", "holds",
                           "note"],
                          [(result.k, result.p_floor, r.name, r.lhs, r.rhs,
                            r.holds, r.note) for r in result.rows])
    if isinstance(result, BigKappaChain):
        return _csv_table(["name", "method", "holds", "lhs", "rhs", "note"],
                          [(l.name, l.method, l.holds, l.lhs, l.rhs, l.note)
                           for l in result.links])
    if isinstance(result, SchinzelCheck):
        return _csv_table(
            ["n", "p", "kind", "nu_ideal", "nu_allowed", "ok"],
            [(result.n, r.p, r.kind, r.nu_ideal, r.nu_allowed, r.ok)
             for r in result.rows])
    if isinstance(result, CyclotomicSurvey):
        head = _csv_table(
            ["n", "value_a", "value_b", "norm", "is_unit", "esum_delta",
             "esum_passed", "schinzel_passed"],
            [(result.n, result.value.value.a, result.value.value.b,
              result.value.norm, result.value.is_unit, result.esum.delta,
              result.esum.passed, result.schinzel.passed)])
        return head + "\n" + _csv_of(result.schinzel)
    # single-row fallback for flat reports (EliouCheck, EsumCheck, ...)
    names = [f.name for f in fields(result)]
    return _csv_table(names, [tuple(getattr(result, n) for n in names)])


def _human_of(result) -> str:
    lines = []

    def kv(label, value):
        lines.append(f"  {label:<26s} {_num(value)}")

    if isinstance(result, BoundResult):
        lines.append(f"threshold for kappa = {result.kappa}")
        kv("optimal k", result.k)
        kv("Theta_k (upper)", result.theta_k)
        kv("Lambda (upper)", result.lambda_value)
        kv("log-n bound (upper)", result.log_n_bound)
        kv("side-condition floor", result.validity.precondition_floor)
        kv("n0", result.n0)
        lines.append("  a primitive divisor >= (kappa+1) n - 1 exists "
                     "for all n >= exp(n0)")
        if result.scan:
            lines.append(f"  scanned k = {result.scan[0].k} .. "
                         f"{result.scan[-1].k}")
    elif isinstance(result, TableReport):
        lines.append(f"published threshold rows (table {result.which})")
        lines.append(f"  {'kappa':>8s} {'k':>4s} {'n0':>7s}")
        for r in result.rows:
            lines.append(f"  {r.kappa:>8d} {r.k:>4d} {r.n0:>7d}")
    elif isinstance(result, QkVerification):
        lines.append(f"split-prime growth check: eta q_k < k^"
                     f"{result.exponent} for k = {result.k_from} .. "
                     f"{result.k_to}")
        kv("passed", result.passed)
        kv("indices checked", result.checked)
        kv("max ratio", result.max_ratio)
        kv("escalations", result.escalations)
        if result.first_fail_k is not None:
            kv("first failure k", result.first_fail_k)
            kv("first failure q", result.first_fail_q)
    elif isinstance(result, PrimitiveDivisorSet):
        lines.append(f"primitive divisors of F_{result.n}")
        for p, e in sorted(result.divisors):
            lines.append(f"  p = {p}" + (f"  (multiplicity {e})"
                                         if e > 1 else ""))
        if not result.divisors:
            lines.append("  (none)")
    elif isinstance(result, CyclotomicSurvey):
        v = result.value
        lines.append(f"Phi_{result.n}(gamma) in Z[eta]")
        kv("value", f"{v.value.a} + {v.value.b} eta")
        kv("norm", v.norm)
        kv("unit", v.is_unit)
        lines.append("near-unit estimate (log|norm| vs 2 phi(n) log eta):")
        kv("delta", result.esum.delta)
        kv("delta <= 0.48", result.esum.passed)
        kv("tail term", result.esum.o1_value)
        s = result.schinzel
        if s.excluded:
            lines.append("valuation comparison: n = 6 excluded")
        elif s.out_of_regime:
            lines.append("valuation comparison: out of regime "
                         "(no primitive part to compare)")
        else:
            lines.append("valuation of Phi_n(gamma) at non-primitive "
                         "primes vs the allowed nu(n):")
            for r in s.rows:
                lines.append(f"  p = {r.p:<8d} {r.kind:<9s} "
                             f"nu = {r.nu_ideal} <= {r.nu_allowed}: "
                             f"{'ok' if r.ok else 'VIOLATION'}")
            if not s.rows:
                lines.append("  (all prime divisors primitive)")
            kv("passed", s.passed)
    elif isinstance(result, YuCheckReport):
        lines.append(f"fixed-constant inequalities at k = {result.k}, "
                     f"p = ceil(e^(3k) k^3) = {result.p_floor}")
        for r in result.rows:
            mark = "ok  " if r.holds else "FAIL"
            lines.append(f"  {mark} {r.name:<18s} lhs = {_num(r.lhs):<22s} "
                         f"rhs = {_num(r.rhs)}")
            if r.note:
                lines.append(f"       {r.note}")
        kv("all hold", result.passed)
    elif isinstance(result, BigKappaChain):
        lines.append(f"large-kappa chain at log kappa = "
                     f"{_num(result.log_kappa)}")
        kv("k = floor(log M)", result.k)
        kv("log M (lower)", result.log_m)
        for l in result.links:
            mark = "ok  " if l.holds else "FAIL"
            side = (f" lhs = {_num(l.lhs)} rhs = {_num(l.rhs)}"
                    if l.lhs is not None else "")
            lines.append(f"  {mark} {l.name:<18s} [{l.method}]{side}")
            if l.note:
                lines.append(f"       {l.note}")
        kv("threshold (upper)", result.threshold)
        lines.append("  a primitive divisor >= (kappa+1) n - 1 exists for "
                     "all n >= exp(143 log kappa log log kappa)")
        kv("all links hold", result.passed)
    elif isinstance(result, EliouCheck):
        lines.append(f"primitive-part size check for F_{result.n}")
        kv("log primitive part", result.lhs)
        kv("required lower bound", result.rhs)
        kv("passed", result.passed)
    else:
        lines.append(type(result).__name__)
        for f in fields(result):
            kv(f.name, getattr(result, f.name))
    return "\n".join(lines) + "\n"


def emit_report(result, output_format: str = "json") -> bytes:
    """Serialize any report dataclass; json round-trips via parse_report."""
    if output_format == "json":
        doc = {"schema": SCHEMA, "report": _to_jsonable(result)}
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    if output_format == "csv":
        return _csv_of(result).encode()
    if output_format == "human":
        return _human_of(result).encode()
    raise ValueError(f"unknown format {output_format!r}")


# ---------------------------------------------------------------------------
# Subcommand handlers: each returns (exit_status, report).


def _resolve_cache_dir(config: RunConfig) -> str | None:
    env = os.environ.get("STEWART_BOUNDS_CACHE")
    if env:
        return env
    return config.cache_dir


def _cmd_n0(config: RunConfig, ns) -> tuple:
    k_range = None
    if ns.k_lo is not None or ns.k_hi is not None:
        if ns.k_lo is None or ns.k_hi is None:
            raise ValueError("--k-lo and --k-hi must be given together")
        k_range = (ns.k_lo, ns.k_hi)
    result = n0_optimize(ns.kappa, k_range=k_range,
                         bits=config.precision_bits)
    return 0, result


def _cmd_tables(config: RunConfig, ns) -> tuple:
    from .splitprimes import enumerate_split_primes

    kappas = {"1": TABLE_1_KAPPAS, "2": TABLE_2_KAPPAS,
              "both": TABLE_1_KAPPAS + TABLE_2_KAPPAS}[ns.which]
    table = enumerate_split_primes(upper=1000)

    def one(kappa):
        return n0_optimize(kappa, bits=config.precision_bits, table=table)

    if config.parallelism > 1:
        with ThreadPoolExecutor(max_workers=config.parallelism) as pool:
            rows = tuple(pool.map(one, kappas))
    else:
        rows = tuple(one(kappa) for kappa in kappas)
    return 0, TableReport(which=ns.which, rows=rows)


def _cmd_verify_qk(config: RunConfig, ns) -> tuple:
    k_to = LEMMA_FULL_K if ns.full else ns.k_to
    if k_to is None:
        raise ValueError("--to is required unless --full is given")
    checkpoint = None
    cache_dir = _resolve_cache_dir(config)
    if cache_dir:
        os.makedirs(cache_dir, exist_ok=True)
        checkpoint = os.path.join(
            cache_dir, f"qk-{ns.k_from}-{k_to}-{ns.exponent}.json")
    result = verify_qk_bound(ns.k_from, k_to, ns.exponent,
                             checkpoint_path=checkpoint)
    return (0 if result.passed else 2), result


def _cmd_primitive(config: RunConfig, ns) -> tuple:
    result = primitive_divisors(ns.n, prime_budget=ns.budget)
    return 0, result


def _cmd_cyclotomic(config: RunConfig, ns) -> tuple:
    value = phi_eval_exact(ns.n)
    esum = esum_identity_check(ns.n, bits=config.precision_bits)
    schinzel = schinzel_check(ns.n)
    survey = CyclotomicSurvey(n=ns.n, value=value, esum=esum,
                              schinzel=schinzel)
    failed = esum.passed is False or schinzel.passed is False
    return (2 if failed else 0), survey


def _cmd_yu_check(config: RunConfig, ns) -> tuple:
    result = yu_constants_check(ns.k, bits=config.precision_bits)
    return (0 if result.passed else 2), result


def _cmd_bigkappa(config: RunConfig, ns) -> tuple:
    if (ns.kappa is None) == (ns.log_kappa is None):
        raise ValueError("give exactly one of --kappa and --log-kappa")
    _, report = bigkappa_bound(kappa=ns.kappa, log_kappa=ns.log_kappa,
                               bits=config.precision_bits)
    return (0 if report.passed else 2), report


_HANDLERS = {
    "n0": _cmd_n0,
    "tables": _cmd_tables,
    "verify-qk": _cmd_verify_qk,
    "primitive": _cmd_primitive,
    "cyclotomic": _cmd_cyclotomic,
    "yu-check": _cmd_yu_check,
    "bigkappa": _cmd_bigkappa,
}


def run(config: RunConfig, args, stream=None) -> int:
    """Execute one subcommand; write the report to stream; return status."""
    if stream is None:
        stream = sys.stdout.buffer
    try:
        status, result = _HANDLERS[config.subcommand](config, args)
    except HypothesisViolation as e:
        print(f"hypothesis violation: {e}", file=sys.stderr)
        return 1
    except IncompleteFactorization as e:
        print(f"incomplete factorization: {e}", file=sys.stderr)
        return 3
    except (StewartBoundsError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    stream.write(emit_report(result, config.output_format))
    try:
        stream.flush()
    except (AttributeError, ValueError):
        pass
    return status


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stewart-bounds",
        description="Explicit thresholds past which Fibonacci numbers "
                    "have large primitive divisors, with exact desk-scale "
                    "oracles for the underlying arithmetic.")
    parser.add_argument("--precision", type=int, default=128,
                        metavar="BITS", help="working precision, >= 64 "
                        "(default 128)")
    parser.add_argument("--format", choices=FORMATS, default="human",
                        help="output format (default human)")
    parser.add_argument("--cache-dir", default=None, metavar="DIR",
                        help="checkpoint/cache directory; the "
                        "STEWART_BOUNDS_CACHE environment variable "
                        "overrides this flag")
    parser.add_argument("--parallelism", type=int, default=1, metavar="N",
                        help="worker-pool size; never affects output bytes")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("n0", help="threshold n0 for one kappa")
    p.add_argument("--kappa", type=int, required=True)
    p.add_argument("--k-lo", type=int, default=None,
                   help="scan window lower end (>= 8)")
    p.add_argument("--k-hi", type=int, default=None,
                   help="scan window upper end")

    p = sub.add_parser("tables", help="reproduce the published rows")
    p.add_argument("--which", choices=("1", "2", "both"), default="both")

    p = sub.add_parser("verify-qk", help="check eta q_k < k^e over a range")
    p.add_argument("--from", dest="k_from", type=int, required=True)
    p.add_argument("--to", dest="k_to", type=int, default=None)
    p.add_argument("--exponent", default="1.3")
    p.add_argument("--full", action="store_true",
                   help=f"run the whole verified range (k to "
                   f"{LEMMA_FULL_K}); hours of sieving, checkpointed "
                   f"to the cache directory")

    p = sub.add_parser("primitive", help="primitive divisors of F_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=10 ** 6,
                   help="trial-division ceiling for the sign-rule route")

    p = sub.add_parser("cyclotomic",
                       help="Phi_n(gamma), its norm, and estimate checks")
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("yu-check",
                       help="fixed numeric inequalities behind the "
                            "order-of-magnitude constant")
    p.add_argument("--k", type=int, default=8)

    p = sub.add_parser("bigkappa",
                       help="threshold chain for log kappa >= 250000")
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--log-kappa", dest="log_kappa", default=None,
                   help="log kappa as an integer or decimal string")

    return parser


def main(argv=None) -> None:
    ns = _build_parser().parse_args(argv)
    try:
        config = RunConfig(subcommand=ns.subcommand,
                           precision_bits=ns.precision,
                           output_format=ns.format,
                           cache_dir=ns.cache_dir,
                           parallelism=ns.parallelism)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        sys.exit(2)
    sys.exit(run(config, ns))


if __name__ == "__main__":
    main()
