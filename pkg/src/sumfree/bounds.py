"""Cardinality bounds for g(n, m) and exhaustive violation scans.

The classical Cameron-Erdos piecewise bound for the largest sum-free subset
of [1, n] with lowest value m is

    n - m + 1            when m > n/2,
    m                    when n/3 <= m <= n/2,
    floor((n-m)/2) + 1   when m < n/3.

Case predicates compare 2m and 3m against n exactly; no floating point is
involved, so the boundary points land where the inequalities say (2m = n is
the middle case, 3m = n is the middle case too).

The middle branch fails when n = 3m and the extremal set contains n: the
pair-exclusion argument behind it counts one excluded value twice, so the
correct bound there is m + 1 (see :func:`pair_exclusion_analysis` for the
double-counted pair). :func:`revised_bound` exposes the corrected value as
an unconditional upper bound, and the scan records for every cell whether a
maximum-cardinality witness actually contains n.
"""

from __future__ import annotations

import csv
import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable

from .core import IntegerSet, PreconditionError, SetRecord
from .search import (
    DEFAULT_CONFIG,
    SearchConfig,
    compute_g,
    compute_g_with_n,
    enumerate_maximum_sets,
)


class BoundCase(str, enum.Enum):
    """Which branch of the piecewise bound applies to (n, m)."""

    UPPER_THIRD = "UpperThird"  # m > n/2
    MIDDLE_THIRD = "MiddleThird"  # n/3 <= m <= n/2
    LOWER_THIRD = "LowerThird"  # m < n/3


VERDICT_COLUMNS = (
    "n",
    "m",
    "case",
    "ce_bound",
    "revised_bound",
    "g_exact",
    "ce_violated",
    "revised_violated",
    "tight",
    "witness",
)


def _check_pair(n: int, m: int) -> None:
    if not 1 <= m <= n:
        raise PreconditionError(f"need 1 <= m <= n, got m={m}, n={n}")


def bound_case(n: int, m: int) -> BoundCase:
    _check_pair(n, m)
    if 2 * m > n:
        return BoundCase.UPPER_THIRD
    if 3 * m >= n:
        return BoundCase.MIDDLE_THIRD
    return BoundCase.LOWER_THIRD


def ce_bound(n: int, m: int) -> int:
    """The classical piecewise upper bound for g(n, m)."""
    case = bound_case(n, m)
    if case is BoundCase.UPPER_THIRD:
        return n - m + 1
    if case is BoundCase.MIDDLE_THIRD:
        return m
    return (n - m) // 2 + 1


def revised_bound(n: int, m: int) -> int:
    """The corrected upper bound: m + 1 when n = 3m, otherwise unchanged.

    At n = 3m the middle-branch value m only holds for sets avoiding n, so
    the maximum over both families (with and without n) is m + 1; everywhere
    else the classical bound stands.
    """
    _check_pair(n, m)
    if n == 3 * m:
        return m + 1
    return ce_bound(n, m)


@dataclass(frozen=True)
class PairAnalysis:
    """The pair-exclusion bookkeeping behind the middle-branch bound.

    For x in [2m, n] a sum-free set with minimum m holds at most one element
    of the pair (x - m, x), which excludes n - 2m + 1 values, except that a
    single value can be counted twice: x - 2m must itself be a member, which
    forces x - 2m = m, i.e. x = 3m, possible only when n = 3m.
    """

    n: int
    m: int
    pairs: tuple[tuple[int, int], ...]
    double_counted: int | None
    exclusion_count: int


def pair_exclusion_analysis(n: int, m: int) -> PairAnalysis:
    """Materialize the exclusion pairs (x - m, x) for x in [2m, n]."""
    _check_pair(n, m)
    if n < 2 * m:
        return PairAnalysis(n=n, m=m, pairs=(), double_counted=None, exclusion_count=0)
    pairs = tuple((x - m, x) for x in range(2 * m, n + 1))
    double_counted = 3 * m if n == 3 * m else None
    exclusion_count = len(pairs) - (1 if double_counted is not None else 0)
    return PairAnalysis(
        n=n,
        m=m,
        pairs=pairs,
        double_counted=double_counted,
        exclusion_count=exclusion_count,
    )


@dataclass(frozen=True)
class BoundVerdict:
    """Both bounds and the exact value for one (n, m) cell.

    ``g_with_n`` is the exact maximum over sets that contain n itself (None
    when no such set exists); ``witness_contains_n`` says whether some
    maximum-g set contains n, i.e. g_with_n == g_exact.
    """

    n: int
    m: int
    case_label: BoundCase
    ce_bound: int
    revised_bound: int
    g_exact: int
    g_with_n: int | None
    ce_violated: bool
    revised_violated: bool
    tight: bool
    witness: IntegerSet
    witness_contains_n: bool


def evaluate_cell(n: int, m: int, config: SearchConfig = DEFAULT_CONFIG) -> BoundVerdict:
    """Compute the full verdict for one (n, m) cell via exhaustive search."""
    entry = compute_g(n, m, config)
    restricted = compute_g_with_n(n, m, config)
    g_with_n = restricted.g_value if restricted is not None else None
    classic = ce_bound(n, m)
    revised = revised_bound(n, m)
    return BoundVerdict(
        n=n,
        m=m,
        case_label=bound_case(n, m),
        ce_bound=classic,
        revised_bound=revised,
        g_exact=entry.g_value,
        g_with_n=g_with_n,
        ce_violated=entry.g_value > classic,
        revised_violated=entry.g_value > revised,
        tight=entry.g_value == revised,
        witness=entry.witness,
        witness_contains_n=g_with_n == entry.g_value,
    )


def _cell_worker(job: tuple[int, int, int]) -> BoundVerdict:
    n, m, max_n = job
    return evaluate_cell(n, m, SearchConfig(max_n=max_n))


def scan_bound_violations(
    n_max: int, config: SearchConfig = DEFAULT_CONFIG
) -> list[BoundVerdict]:
    """Verdicts for every 1 <= m <= n <= n_max, ordered by n then m.

    The verification targets: every cell with ce_violated has n = 3m and a
    maximum-g witness containing n, and no cell has revised_violated. Both
    are asserted by the test suite, not silently assumed here.
    """
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    if n_max > config.max_n:
        raise PreconditionError(
            f"n_max={n_max} exceeds the configured cap max_n={config.max_n}"
        )
    cells = [(n, m) for n in range(1, n_max + 1) for m in range(1, n + 1)]
    if config.parallel > 1 and len(cells) > 1:
        jobs = [(n, m, config.max_n) for n, m in cells]
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            return list(pool.map(_cell_worker, jobs, chunksize=8))
    return [evaluate_cell(n, m, config) for n, m in cells]


def find_tight_exceptions(
    n_max: int, config: SearchConfig = DEFAULT_CONFIG
) -> list[SetRecord]:
    """Maximum-cardinality sets attaining the corrected bound at n = 3m.

    Collects, over all n <= n_max, every sum-free set of cardinality
    floor((n+1)/2) whose minimum m satisfies n = 3m, that contains n, and
    whose cardinality equals m + 1. Exhaustive scans show exactly two such
    sets exist: {1,3} in [1,3] and {2,5,6} in [1,6].
    """
    if n_max < 1:
        raise PreconditionError(f"n_max must be >= 1, got {n_max}")
    results: list[SetRecord] = []
    for n in range(1, n_max + 1):
        for record in enumerate_maximum_sets(n, config):
            m = record.min_element
            if m is None or n != 3 * m:
                continue
            if n not in record.set:
                continue
            if record.cardinality == m + 1:
                results.append(record)
    return results


def verdict_to_dict(verdict: BoundVerdict) -> dict:
    """The wire form of one verdict row (fixed key order)."""
    return {
        "n": verdict.n,
        "m": verdict.m,
        "case": verdict.case_label.value,
        "ce_bound": verdict.ce_bound,
        "revised_bound": verdict.revised_bound,
        "g_exact": verdict.g_exact,
        "ce_violated": verdict.ce_violated,
        "revised_violated": verdict.revised_violated,
        "tight": verdict.tight,
        "witness": str(verdict.witness),
    }


def write_verdicts_json(verdicts: Iterable[BoundVerdict], stream: IO[str]) -> None:
    json.dump([verdict_to_dict(v) for v in verdicts], stream, indent=2)
    stream.write("\n")


def write_verdicts_csv(verdicts: Iterable[BoundVerdict], stream: IO[str]) -> None:
    """CSV mirror of the JSON report, identical column order."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(VERDICT_COLUMNS)
    for verdict in verdicts:
        row = verdict_to_dict(verdict)
        writer.writerow(
            [
                row["n"],
                row["m"],
                row["case"],
                row["ce_bound"],
                row["revised_bound"],
                row["g_exact"],
                str(row["ce_violated"]).lower(),
                str(row["revised_violated"]).lower(),
                str(row["tight"]).lower(),
                row["witness"],
            ]
        )
