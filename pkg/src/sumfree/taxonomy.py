"""Classification of maximum-cardinality sum-free sets.

The Cameron-Erdos taxonomy lists the shapes a sum-free subset of [1, n] with
cardinality floor((n+1)/2) can take:

  * the odd numbers in [1, n],
  * for odd n, the interval [(n+1)/2, n],
  * for even n, the intervals [n/2, n-1] and [n/2+1, n].

Exhaustive search shows the list is complete except for exactly four sets,
each tied to its native universe: {1,4} in [1,4], {1,4,6} and {2,5,6} in
[1,6], and {2,3,7,8} in [1,8]. :func:`classify` labels a set with every
matching class (at tiny n the classes overlap, e.g. {1} in [1,1] is both the
odd numbers and an upper interval) or with its named exception; anything
else comes back unclassified.

The verify_* scans re-derive the supporting facts for every n in range: no
maximum set has minimum in [3, floor((n+1)/2) - 1], the sets containing 1 or
2 that escape the classes are exactly the four above, and every maximum set
hits each pair (k, p - k) below the middle exactly once (p its largest
member).
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from typing import IO, Callable

from .core import (
    IntegerSet,
    PreconditionError,
    SetRecord,
    make_record,
    maximum_cardinality,
)
from .search import DEFAULT_CONFIG, SearchConfig, enumerate_maximum_sets


class TaxonomyClass(str, enum.Enum):
    ODD_NUMBERS = "OddNumbers"
    ODD_UPPER_INTERVAL = "OddUpperInterval"
    EVEN_INTERVAL_LOW = "EvenIntervalLow"
    EVEN_INTERVAL_HIGH = "EvenIntervalHigh"


class ExceptionName(str, enum.Enum):
    E14 = "E14"
    E146 = "E146"
    E256 = "E256"
    E2378 = "E2378"


# The four exceptional sets, keyed by (universe bound, members). {2,5,6}
# inside [1,7] is not a maximum set, so exceptions fire only at native n.
KNOWN_EXCEPTIONS: tuple[tuple[int, tuple[int, ...], ExceptionName], ...] = (
    (4, (1, 4), ExceptionName.E14),
    (6, (1, 4, 6), ExceptionName.E146),
    (6, (2, 5, 6), ExceptionName.E256),
    (8, (2, 3, 7, 8), ExceptionName.E2378),
)

_EXCEPTION_LOOKUP = {(n, members): name for n, members, name in KNOWN_EXCEPTIONS}


@dataclass(frozen=True)
class TaxonomyLabel:
    """Outcome of classifying one set: classes, a named exception, or neither."""

    classes: frozenset[TaxonomyClass]
    exception: ExceptionName | None
    unclassified: bool


@dataclass(frozen=True)
class TaxonomyReport:
    """Per-universe summary of the maximum-set classification scan."""

    n: int
    total_maximum_sets: int
    label_counts: dict[TaxonomyClass, int]
    exceptions_found: tuple[SetRecord, ...]
    lemma1_ok: bool
    completeness_ok: bool


def _odd_numbers_bits(n: int) -> int:
    bits = 0
    for value in range(1, n + 1, 2):
        bits |= 1 << value
    return bits


def _interval_bits(lo: int, hi: int) -> int:
    return (1 << (hi + 1)) - (1 << lo)


def class_members(cls: TaxonomyClass, n: int) -> IntegerSet | None:
    """The set a taxonomy class denotes in [1, n], or None if n has the wrong parity."""
    if cls is TaxonomyClass.ODD_NUMBERS:
        return IntegerSet(n, _odd_numbers_bits(n))
    if cls is TaxonomyClass.ODD_UPPER_INTERVAL:
        if n % 2 == 0:
            return None
        return IntegerSet(n, _interval_bits((n + 1) // 2, n))
    if cls is TaxonomyClass.EVEN_INTERVAL_LOW:
        if n % 2 == 1:
            return None
        return IntegerSet(n, _interval_bits(n // 2, n - 1))
    if n % 2 == 1:
        return None
    return IntegerSet(n, _interval_bits(n // 2 + 1, n))


def classify(a: IntegerSet) -> TaxonomyLabel:
    """Match a set against the taxonomy classes and the four named exceptions.

    A set may carry several classes at once; an exception is reported only
    when no class matches and (set, n) is one of the four known pairs.
    """
    n = a.universe_bound
    classes = frozenset(
        cls
        for cls in TaxonomyClass
        if (reference := class_members(cls, n)) is not None
        and reference.bits == a.bits
    )
    if classes:
        return TaxonomyLabel(classes=classes, exception=None, unclassified=False)
    exception = _EXCEPTION_LOOKUP.get((n, a.members()))
    return TaxonomyLabel(
        classes=classes, exception=exception, unclassified=exception is None
    )


# Scans take the maximum sets for a given n from this kind of callable, so a
# caller holding cached enumerations can substitute them for a fresh search.
MaximumSetsProvider = Callable[[int], list[SetRecord]]


def _lemma1_holds(records: list[SetRecord], n: int) -> bool:
    ceiling = maximum_cardinality(n)
    return all(
        not (record.min_element is not None and 3 <= record.min_element < ceiling)
        for record in records
    )


def verify_taxonomy_completeness(
    n_max: int,
    config: SearchConfig = DEFAULT_CONFIG,
    maximum_sets: MaximumSetsProvider | None = None,
) -> list[TaxonomyReport]:
    """Classify every maximum-cardinality set for each n <= n_max.

    ``completeness_ok`` is False when some set is neither classified nor a
    named exception; such sets are reported, not raised. Across a scan with
    n_max >= 8 the union of exceptions is expected to be exactly the four
    known sets.
    """
    provider = maximum_sets or (lambda n: enumerate_maximum_sets(n, config))
    reports = []
    for n in range(1, n_max + 1):
        records = provider(n)
        label_counts = {cls: 0 for cls in TaxonomyClass}
        exceptions: list[SetRecord] = []
        unclassified = 0
        for record in records:
            label = classify(record.set)
            for cls in label.classes:
                label_counts[cls] += 1
            if label.exception is not None:
                exceptions.append(record)
            elif label.unclassified:
                unclassified += 1
        reports.append(
            TaxonomyReport(
                n=n,
                total_maximum_sets=len(records),
                label_counts=label_counts,
                exceptions_found=tuple(exceptions),
                lemma1_ok=_lemma1_holds(records, n),
                completeness_ok=unclassified == 0,
            )
        )
    return reports


def verify_lemma_min_element(
    n_max: int,
    config: SearchConfig = DEFAULT_CONFIG,
    maximum_sets: MaximumSetsProvider | None = None,
) -> dict[int, bool]:
    """Per n: no maximum-cardinality set has minimum in [3, floor((n+1)/2) - 1]."""
    provider = maximum_sets or (lambda n: enumerate_maximum_sets(n, config))
    return {n: _lemma1_holds(provider(n), n) for n in range(1, n_max + 1)}


def verify_m1_exceptions(
    n_max: int,
    config: SearchConfig = DEFAULT_CONFIG,
    maximum_sets: MaximumSetsProvider | None = None,
) -> list[SetRecord]:
    """Maximum sets containing 1 that match no taxonomy class, over n <= n_max.

    Expected: exactly {1,4} in [1,4] and {1,4,6} in [1,6].
    """
    return _collect_uncovered(n_max, config, maximum_sets, minimum=1)


def verify_m2_exceptions(
    n_max: int,
    config: SearchConfig = DEFAULT_CONFIG,
    maximum_sets: MaximumSetsProvider | None = None,
) -> list[SetRecord]:
    """Maximum sets with minimum 2 that match no taxonomy class, over n <= n_max.

    Expected: exactly {2,5,6} in [1,6] and {2,3,7,8} in [1,8]. (Containing 2
    and having minimum 2 coincide for sum-free sets: 1 and 2 cannot coexist.)
    """
    return _collect_uncovered(n_max, config, maximum_sets, minimum=2)


def _collect_uncovered(
    n_max: int,
    config: SearchConfig,
    maximum_sets: MaximumSetsProvider | None,
    minimum: int,
) -> list[SetRecord]:
    provider = maximum_sets or (lambda n: enumerate_maximum_sets(n, config))
    found = []
    for n in range(1, n_max + 1):
        for record in provider(n):
            if record.min_element != minimum:
                continue
            if not classify(record.set).classes:
                found.append(record)
    return found


def verify_pair_coverage(a: IntegerSet) -> bool:
    """Check the pair structure of a maximum set with largest member p.

    For each k in [1, floor((n+1)/2) - 1] the set must contain exactly one of
    {k, p - k}; if k = p - k the value cannot be a member at all (it would
    double to p). Requires a maximum-cardinality sum-free set.
    """
    record = make_record(a)
    if not record.is_maximum or record.max_element is None:
        raise PreconditionError(
            "pair coverage is defined for maximum-cardinality sum-free sets only"
        )
    p = record.max_element
    for k in range(1, maximum_cardinality(a.universe_bound)):
        partner = p - k
        if k == partner:
            if k in a:
                return False
            continue
        if (k in a) == (partner in a):
            return False
    return p in a


def odd_pattern_check(a: IntegerSet) -> bool:
    """True when a = {1, 3, 5, ..., p} for its own odd largest member p."""
    p = a.max_element
    if p is None or p % 2 == 0:
        return False
    return a.bits == _odd_numbers_bits(p)


def report_to_dict(report: TaxonomyReport) -> dict:
    """The wire form of one per-n taxonomy report."""
    return {
        "n": report.n,
        "maximum_count": report.total_maximum_sets,
        "labels": {cls.value: report.label_counts[cls] for cls in TaxonomyClass},
        "exceptions": [str(record.set) for record in report.exceptions_found],
        "lemma1_ok": report.lemma1_ok,
        "completeness_ok": report.completeness_ok,
    }


def summarize_reports(reports: list[TaxonomyReport]) -> dict:
    """Aggregate object with the global exception list over a whole scan."""
    exceptions = []
    for report in reports:
        for record in report.exceptions_found:
            label = classify(record.set).exception
            exceptions.append(
                {
                    "n": report.n,
                    "set": str(record.set),
                    "label": label.value if label is not None else None,
                }
            )
    n_max = reports[-1].n if reports else 0
    expected = [
        {"n": n, "set": str(IntegerSet.from_members(members, n)), "label": name.value}
        for n, members, name in KNOWN_EXCEPTIONS
        if n <= n_max
    ]
    return {
        "n_max": n_max,
        "total_maximum_sets": sum(r.total_maximum_sets for r in reports),
        "exceptions": exceptions,
        "expected_exceptions": expected,
        "exceptions_match_expected": exceptions == expected,
        "completeness_ok": all(r.completeness_ok for r in reports),
        "lemma1_ok": all(r.lemma1_ok for r in reports),
    }


def write_taxonomy_json(reports: list[TaxonomyReport], stream: IO[str]) -> None:
    payload = {
        "per_n": [report_to_dict(report) for report in reports],
        "summary": summarize_reports(reports),
    }
    json.dump(payload, stream, indent=2)
    stream.write("\n")
