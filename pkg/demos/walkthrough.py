#!/usr/bin/env python3
"""Guided tour of the sumfree toolkit.

Walks through each capability in order: set values and predicates, the two
enumeration routes, exact g(n, m) with witnesses, the classical bound and
its correction at n = 3m, and the maximum-set taxonomy with its four
exceptional sets. Everything below is exact integer computation; rerunning
prints identical output.

Usage: python3 demos/walkthrough.py
"""

from sumfree import (
    IntegerSet,
    ce_bound,
    classify,
    compute_g,
    enumerate_maximum_sets,
    find_tight_exceptions,
    is_sum_free,
    make_record,
    maximum_cardinality,
    oracle_enumerate_sum_free,
    pair_exclusion_analysis,
    revised_bound,
    scan_bound_violations,
    sumset,
    verify_taxonomy_completeness,
)


def section(title):
    print()
    print("=" * 72)
    print(title)
    print("=" * 72)


section("Sets, sumsets, predicates")
a = IntegerSet.parse("{2,5,6}", 6)
print(f"A = {a}  within [1,{a.universe_bound}]")
print(f"A+A = {sumset(a, a)}  (universe widens to [1,12])")
print(f"sum-free: {is_sum_free(a)} (no member is a sum of two members, x=y allowed)")
record = make_record(IntegerSet.parse("{1,3,8}", 8))
print(f"{{1,3,8}} in [1,8]: maximal={record.is_maximal}, maximum={record.is_maximum}"
      f" (cardinality {record.cardinality} < {maximum_cardinality(8)})")

section("Enumeration: brute-force oracle vs pruned engine")
family = oracle_enumerate_sum_free(6)
print(f"[1,6] has {len(family)} sum-free subsets (empty set included)")
maximum = enumerate_maximum_sets(6)
print(f"of these, {len(maximum)} reach the maximum cardinality "
      f"{maximum_cardinality(6)}:")
for r in maximum:
    print(f"  {r.set}")

section("Exact g(n,m): largest sum-free subset with a pinned minimum")
for n, m in [(6, 1), (6, 2), (6, 3), (9, 3)]:
    entry = compute_g(n, m)
    print(f"g({n},{m}) = {entry.g_value}   witness {entry.witness}"
          f"   ({entry.node_count} search nodes)")

section("The classical piecewise bound and where it fails")
print(f"classical bound at (6,2): {ce_bound(6, 2)}  but g(6,2) = "
      f"{compute_g(6, 2).g_value} via {compute_g(6, 2).witness}")
analysis = pair_exclusion_analysis(6, 2)
print(f"exclusion pairs (x-m, x) for x in [2m,n]: {list(analysis.pairs)}")
print(f"value counted twice: {analysis.double_counted} (possible only when n=3m)")
print(f"corrected bound at n=3m: {revised_bound(6, 2)}")

scan = scan_bound_violations(24)
violations = [(v.n, v.m) for v in scan if v.ce_violated]
print(f"scanning all (n,m) with n <= 24: classical bound fails at {violations}")
print(f"corrected bound violated anywhere: {any(v.revised_violated for v in scan)}")
attainers = find_tight_exceptions(24)
print("maximum-cardinality sets attaining m+1 at n=3m with n as a member:")
for r in attainers:
    print(f"  {r.set} in [1,{r.universe_bound}]")

section("Taxonomy of maximum-cardinality sets")
for text, n in [("{1,3,5,7}", 8), ("{5,6,7,8}", 8), ("{2,3,7,8}", 8)]:
    label = classify(IntegerSet.parse(text, n))
    tag = label.exception.value if label.exception else \
        ",".join(sorted(c.value for c in label.classes))
    print(f"  {text} in [1,{n}] -> {tag}")
reports = verify_taxonomy_completeness(24)
exceptions = [(rec.set, rep.n) for rep in reports for rec in rep.exceptions_found]
print(f"scan n <= 24: every maximum set classified = "
      f"{all(r.completeness_ok for r in reports)}")
print("the only sets outside the classes:")
for s, n in exceptions:
    print(f"  {s} in [1,{n}]")
