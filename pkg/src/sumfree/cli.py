"""Command-line front end.

Subcommands::

    check            report the attributes and classification of one set
    gtable           write the exact g(n, m) table as CSV (or JSON)
    enumerate        list sum-free / maximal / maximum sets of one universe
    scan-bounds      compare exact g values against both cardinality bounds
    verify-taxonomy  classify all maximum sets and check completeness
    verify-lemmas    re-check the minimum-element and pair-structure facts

Exit codes: 0 success (and, for the verify/scan commands, every claim
verified), 1 operational error (bad arguments, unparsable set text, caps
exceeded, I/O trouble), 2 verification failure.

Configuration precedence is flags, then environment, then defaults. The
environment variables are SUMFREE_MAX_N (enumeration cap, default 32),
SUMFREE_WORKERS (worker processes, default 1) and SUMFREE_CACHE (cache file
path). Everything here is deterministic: the same command against the same
cache state produces byte-identical output.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import bounds, cache, taxonomy
from .core import (
    IntegerSet,
    SetRecord,
    SumFreeToolkitError,
    make_record,
)
from .search import (
    GEntry,
    SearchConfig,
    compute_g_cells,
    enumerate_maximal_sets,
    enumerate_maximum_sets,
    enumerate_sum_free,
    g_table,
    write_g_table_csv,
)

ENV_MAX_N = "SUMFREE_MAX_N"
ENV_WORKERS = "SUMFREE_WORKERS"
ENV_CACHE = "SUMFREE_CACHE"

DEFAULT_MAX_N = 32


class _Parser(argparse.ArgumentParser):
    """argparse parser that reports usage errors with exit code 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SumFreeToolkitError(f"{name} must be an integer, got {raw!r}") from None


def _resolve_config(args: argparse.Namespace) -> SearchConfig:
    workers = args.workers
    if workers is None:
        workers = _env_int(ENV_WORKERS, 1)
    return SearchConfig(max_n=_env_int(ENV_MAX_N, DEFAULT_MAX_N), parallel=workers)


def _resolve_cache_path(args: argparse.Namespace) -> Path | None:
    raw = args.cache if args.cache is not None else os.environ.get(ENV_CACHE)
    return Path(raw) if raw else None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: object) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _add_common(parser: argparse.ArgumentParser, n_max: bool = True) -> None:
    if n_max:
        parser.add_argument("--n-max", type=int, required=True, dest="n_max",
                            help="largest universe bound to scan")
    parser.add_argument("--workers", type=int, default=None,
                        help="worker processes (default 1 or SUMFREE_WORKERS)")
    parser.add_argument("--cache", default=None,
                        help="cache file path (default SUMFREE_CACHE)")
    parser.add_argument("--out", default=None, help="output file (default stdout)")


def _record_dict(record: SetRecord) -> dict:
    label = taxonomy.classify(record.set)
    pair_coverage = (
        taxonomy.verify_pair_coverage(record.set) if record.is_maximum else None
    )
    return {
        "set": str(record.set),
        "n": record.universe_bound,
        "cardinality": record.cardinality,
        "min_element": record.min_element,
        "max_element": record.max_element,
        "sum_free": record.is_sum_free,
        "maximal": record.is_maximal,
        "maximum": record.is_maximum,
        "classes": sorted(cls.value for cls in label.classes),
        "exception": label.exception.value if label.exception else None,
        "unclassified": label.unclassified,
        "pair_coverage": pair_coverage,
    }


def cmd_check(args: argparse.Namespace) -> int:
    member_set = IntegerSet.parse(args.set_text, args.n)
    _emit(_json_text(_record_dict(make_record(member_set))), args.out)
    return 0


def cmd_gtable(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    cache_path = _resolve_cache_path(args)
    cells = [(n, m) for n in range(1, args.n_max + 1) for m in range(1, n + 1)]

    if cache_path is None:
        entries = g_table(args.n_max, config)
        cached_count = 0
    else:
        with cache.cache_lock(cache_path):
            data = cache.load_cache(cache_path)
            hits = {cell: data.g_entries[cell] for cell in cells if cell in data.g_entries}
            missing = [cell for cell in cells if cell not in hits]
            computed = _compute_cells(missing, config)
            entries = [
                hits[cell] if cell in hits else computed[cell] for cell in cells
            ]
            cached_count = len(hits)
            data.g_entries.update(computed)
            cache.save_cache(cache_path, data)

    if args.format == "json":
        payload = [
            {"n": e.n, "m": e.m, "g": e.g_value, "witness": str(e.witness),
             "nodes": e.node_count}
            for e in entries
        ]
        _emit(_json_text(payload), args.out)
    else:
        buffer = io.StringIO()
        write_g_table_csv(entries, buffer)
        _emit(buffer.getvalue(), args.out)
    print(
        f"gtable: {len(cells)} rows ({cached_count} cached, "
        f"{len(cells) - cached_count} computed)",
        file=sys.stderr,
    )
    return 0


def _compute_cells(
    cells: list[tuple[int, int]], config: SearchConfig
) -> dict[tuple[int, int], GEntry]:
    return {(e.n, e.m): e for e in compute_g_cells(cells, config)}


def _maximum_records_provider(
    config: SearchConfig, data: cache.CacheData | None
):
    def provider(n: int) -> list[SetRecord]:
        if data is not None and n in data.maximum_digests:
            records = [
                make_record(IntegerSet.parse(text, n))
                for text in data.maximum_digests[n]
            ]
            records.sort(key=lambda record: record.set.members())
            return records
        records = enumerate_maximum_sets(n, config)
        if data is not None:
            data.maximum_digests[n] = tuple(
                sorted(str(record.set) for record in records)
            )
        return records

    return provider


def cmd_enumerate(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    cache_path = _resolve_cache_path(args)

    if args.kind == "maximum" and cache_path is not None:
        with cache.cache_lock(cache_path):
            data = cache.load_cache(cache_path)
            sets = [r.set for r in _maximum_records_provider(config, data)(args.n)]
            cache.save_cache(cache_path, data)
    elif args.kind == "maximum":
        sets = [r.set for r in enumerate_maximum_sets(args.n, config)]
    elif args.kind == "maximal":
        sets = [r.set for r in enumerate_maximal_sets(args.n, config)]
    else:
        sets = list(enumerate_sum_free(args.n, config))

    if args.format == "csv":
        lines = ["set,cardinality"]
        lines.extend(f'"{s}",{s.cardinality}' for s in sets)
        _emit("\n".join(lines) + "\n", args.out)
    else:
        payload = {
            "n": args.n,
            "kind": args.kind,
            "count": len(sets),
            "sets": [str(s) for s in sets],
        }
        _emit(_json_text(payload), args.out)
    return 0


def cmd_scan_bounds(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    verdicts = bounds.scan_bound_violations(args.n_max, config)

    if args.format == "csv":
        buffer = io.StringIO()
        bounds.write_verdicts_csv(verdicts, buffer)
        _emit(buffer.getvalue(), args.out)
    else:
        buffer = io.StringIO()
        bounds.write_verdicts_json(verdicts, buffer)
        _emit(buffer.getvalue(), args.out)

    ce_rows = [v for v in verdicts if v.ce_violated]
    revised_rows = [v for v in verdicts if v.revised_violated]
    print(f"scan-bounds: {len(verdicts)} cells scanned up to n_max={args.n_max}",
          file=sys.stderr)
    if ce_rows:
        listed = "; ".join(
            f"(n={v.n},m={v.m}) g={v.g_exact} > {v.ce_bound} witness {v.witness}"
            for v in ce_rows
        )
        print(f"classic-bound violations: {listed}", file=sys.stderr)
    else:
        print("classic-bound violations: none", file=sys.stderr)
    if revised_rows:
        listed = "; ".join(
            f"(n={v.n},m={v.m}) g={v.g_exact} > {v.revised_bound}"
            for v in revised_rows
        )
        print(f"revised-bound violations: {listed}", file=sys.stderr)
        return 2
    print("revised-bound violations: none", file=sys.stderr)
    return 0


def cmd_verify_taxonomy(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    cache_path = _resolve_cache_path(args)

    if cache_path is not None:
        with cache.cache_lock(cache_path):
            data = cache.load_cache(cache_path)
            provider = _maximum_records_provider(config, data)
            reports = taxonomy.verify_taxonomy_completeness(
                args.n_max, config, maximum_sets=provider
            )
            cache.save_cache(cache_path, data)
    else:
        reports = taxonomy.verify_taxonomy_completeness(args.n_max, config)

    summary = taxonomy.summarize_reports(reports)
    latest_native = max(n for n, _, _ in taxonomy.KNOWN_EXCEPTIONS)
    if args.n_max < latest_native:
        summary["note"] = (
            f"exceptions with native universe above n_max={args.n_max} "
            "are outside the scanned range"
        )
    payload = {
        "per_n": [taxonomy.report_to_dict(report) for report in reports],
        "summary": summary,
    }
    _emit(_json_text(payload), args.out)

    ok = summary["completeness_ok"] and summary["exceptions_match_expected"]
    print(
        "verify-taxonomy: "
        + ("all maximum sets classified, exceptions as expected"
           if ok else "verification FAILED"),
        file=sys.stderr,
    )
    return 0 if ok else 2


def cmd_verify_lemmas(args: argparse.Namespace) -> int:
    config = _resolve_config(args)
    cache_path = _resolve_cache_path(args)

    if cache_path is not None:
        with cache.cache_lock(cache_path):
            data = cache.load_cache(cache_path)
            provider = _maximum_records_provider(config, data)
            result = _lemma_scan(args.n_max, config, provider)
            cache.save_cache(cache_path, data)
    else:
        result = _lemma_scan(args.n_max, config, None)

    _emit(_json_text(result), args.out)
    ok = result["all_ok"]
    print(
        "verify-lemmas: " + ("all claims hold" if ok else "verification FAILED"),
        file=sys.stderr,
    )
    return 0 if ok else 2


def _lemma_scan(n_max: int, config: SearchConfig, provider) -> dict:
    lemma1 = taxonomy.verify_lemma_min_element(n_max, config, maximum_sets=provider)
    lemma1_failures = [n for n, ok in lemma1.items() if not ok]

    m1 = taxonomy.verify_m1_exceptions(n_max, config, maximum_sets=provider)
    m2 = taxonomy.verify_m2_exceptions(n_max, config, maximum_sets=provider)
    m1_found = [(r.universe_bound, str(r.set)) for r in m1]
    m2_found = [(r.universe_bound, str(r.set)) for r in m2]
    m1_expected = [(4, "{1,4}"), (6, "{1,4,6}")]
    m2_expected = [(6, "{2,5,6}"), (8, "{2,3,7,8}")]
    m1_expected = [pair for pair in m1_expected if pair[0] <= n_max]
    m2_expected = [pair for pair in m2_expected if pair[0] <= n_max]

    pair_failures = []
    checked = 0
    effective = provider or (lambda n: enumerate_maximum_sets(n, config))
    for n in range(1, n_max + 1):
        for record in effective(n):
            if record.min_element in (1, 2):
                checked += 1
                if not taxonomy.verify_pair_coverage(record.set):
                    pair_failures.append({"n": n, "set": str(record.set)})

    all_ok = (
        not lemma1_failures
        and m1_found == m1_expected
        and m2_found == m2_expected
        and not pair_failures
    )
    return {
        "n_max": n_max,
        "lemma_min_element": {
            "all_ok": not lemma1_failures,
            "failures": lemma1_failures,
        },
        "m1_uncovered": [{"n": n, "set": s} for n, s in m1_found],
        "m1_expected": [{"n": n, "set": s} for n, s in m1_expected],
        "m1_ok": m1_found == m1_expected,
        "m2_uncovered": [{"n": n, "set": s} for n, s in m2_found],
        "m2_expected": [{"n": n, "set": s} for n, s in m2_expected],
        "m2_ok": m2_found == m2_expected,
        "pair_coverage": {
            "checked": checked,
            "all_ok": not pair_failures,
            "failures": pair_failures,
        },
        "all_ok": all_ok,
    }


def build_parser() -> _Parser:
    parser = _Parser(
        prog="sumfree",
        description="Exact enumeration and verification of sum-free subsets of [1,n].",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="inspect one set")
    p_check.add_argument("set_text", help='set in brace form, e.g. "{2,5,6}"')
    p_check.add_argument("--n", type=int, required=True, help="universe bound")
    p_check.add_argument("--out", default=None, help="output file (default stdout)")
    p_check.set_defaults(func=cmd_check)

    p_gtable = sub.add_parser("gtable", help="write the exact g(n,m) table")
    _add_common(p_gtable)
    p_gtable.add_argument("--format", choices=("csv", "json"), default="csv")
    p_gtable.set_defaults(func=cmd_gtable)

    p_enum = sub.add_parser("enumerate", help="list sum-free sets of one universe")
    p_enum.add_argument("--n", type=int, required=True, help="universe bound")
    p_enum.add_argument("--kind", choices=("all", "maximal", "maximum"),
                        default="all")
    p_enum.add_argument("--format", choices=("json", "csv"), default="json")
    p_enum.add_argument("--workers", type=int, default=None)
    p_enum.add_argument("--cache", default=None)
    p_enum.add_argument("--out", default=None)
    p_enum.set_defaults(func=cmd_enumerate)

    p_scan = sub.add_parser("scan-bounds", help="check both bounds against exact g")
    _add_common(p_scan)
    p_scan.add_argument("--format", choices=("json", "csv"), default="json")
    p_scan.set_defaults(func=cmd_scan_bounds)

    p_tax = sub.add_parser("verify-taxonomy",
                           help="classify all maximum sets, check completeness")
    _add_common(p_tax)
    p_tax.set_defaults(func=cmd_verify_taxonomy)

    p_lem = sub.add_parser("verify-lemmas",
                           help="re-check minimum-element and pair-structure facts")
    _add_common(p_lem)
    p_lem.set_defaults(func=cmd_verify_lemmas)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.func(args)
    except cache.CacheLockedError as exc:
        print(f"sumfree: {exc}", file=sys.stderr)
        return 1
    except SumFreeToolkitError as exc:
        print(f"sumfree: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"sumfree: i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
