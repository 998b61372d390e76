"""Exact enumeration engines for sum-free subsets of [1, n].

Two independent routes are deliberately kept apart:

  * :func:`oracle_enumerate_sum_free` walks all 2^n subsets and filters with
    the core predicate. It is slow, obviously correct, and never shares
    search state with anything else. Hard-capped at n <= 20.
  * :func:`enumerate_sum_free` is a pruned backtracking engine. Candidates
    are tried in increasing order; the state carries the current members and
    a forbidden-sums bit array (every pairwise sum of chosen members,
    self-sums included). Because each new candidate k exceeds every chosen
    member, the extension stays sum-free exactly when k avoids the recorded
    sums; the difference-free reading of the same constraint is subsumed.

Every set visited by the backtracking tree is itself sum-free, so full
enumeration costs one node per emitted set. The maximum-cardinality and
g(n, m) searches reuse the same tree with a branch-and-bound cut: a branch
dies once the current size plus the count of still-allowed candidates cannot
reach the target.

g(n, m) is the cardinality of the largest sum-free subset of [1, n] whose
smallest member is exactly m ({m} itself always qualifies, so g >= 1).
Witnesses are deterministic: among tied maximum sets the one with the
smallest membership bit pattern (as an integer, element 1 = lowest bit) is
kept.

Work splitting for parallel runs is deterministic: subtrees rooted at sets
of ``prefix_depth`` members are farmed to worker processes and merged back
in root order, so worker count never changes the output.
"""

from __future__ import annotations

import csv
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

from .core import (
    IntegerSet,
    PreconditionError,
    SetRecord,
    SumFreeToolkitError,
    is_sum_free,
    make_record,
    maximum_cardinality,
)

# Bumped whenever the search algorithm or its tie-breaking changes; caches
# produced under a different fingerprint are recomputed, never trusted.
ENGINE_FINGERPRINT = "sumfree-search-1"

# 2^n iteration: the oracle refuses anything beyond this.
ORACLE_MAX_N = 20

GTABLE_CSV_HEADER = ("n", "m", "g", "witness", "nodes")


class SearchCapError(SumFreeToolkitError, ValueError):
    """An enumeration was requested beyond its configured runtime cap."""


@dataclass(frozen=True)
class SearchConfig:
    """Runtime limits and parallelism for the enumeration engines.

    ``max_n`` caps full enumeration (cost is exponential in n), ``parallel``
    is the worker-process count, and ``prefix_depth`` is the tree depth at
    which subtrees are split off as independent work units.
    """

    max_n: int = 32
    parallel: int = 1
    prefix_depth: int = 3

    def __post_init__(self) -> None:
        if self.max_n < 1:
            raise PreconditionError(f"max_n must be >= 1, got {self.max_n}")
        if self.parallel < 1:
            raise PreconditionError(f"parallel must be >= 1, got {self.parallel}")
        if self.prefix_depth < 0:
            raise PreconditionError(
                f"prefix_depth must be >= 0, got {self.prefix_depth}"
            )


DEFAULT_CONFIG = SearchConfig()


@dataclass(frozen=True)
class GEntry:
    """One exact g(n, m) value with a witness and search-cost metadata."""

    n: int
    m: int
    g_value: int
    witness: IntegerSet
    node_count: int


def _check_universe(n: int, config: SearchConfig) -> None:
    if n < 1:
        raise PreconditionError(f"universe bound must be >= 1, got {n}")
    if n > config.max_n:
        raise SearchCapError(
            f"n={n} exceeds the configured enumeration cap max_n={config.max_n}"
        )


def oracle_enumerate_sum_free(n: int) -> list[IntegerSet]:
    """Brute-force reference: all sum-free subsets of [1, n], empty set included.

    Iterates every one of the 2^n subsets and keeps those passing the core
    sum-free predicate. Kept structurally independent of the pruned engine so
    the two can validate each other.
    """
    if n < 1:
        raise PreconditionError(f"universe bound must be >= 1, got {n}")
    if n > ORACLE_MAX_N:
        raise SearchCapError(
            f"n={n} exceeds the brute-force oracle cap {ORACLE_MAX_N}"
        )
    found = []
    for raw in range(1 << n):
        candidate = IntegerSet(n, raw << 1)
        if is_sum_free(candidate):
            found.append(candidate)
    return found


def _descend_split(
    n: int, prefix_depth: int
) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Walk the search tree down to ``prefix_depth`` members.

    Returns the shallow sets (fewer members than the split depth, in
    depth-first preorder) and the subtree roots as (bits, forbidden, start)
    triples, also in preorder.
    """
    shallow: list[int] = []
    roots: list[tuple[int, int, int]] = []

    def descend(bits: int, forbidden: int, start: int, size: int) -> None:
        if size == prefix_depth:
            roots.append((bits, forbidden, start))
            return
        shallow.append(bits)
        for k in range(start, n + 1):
            if forbidden >> k & 1:
                continue
            new_bits = bits | 1 << k
            descend(new_bits, forbidden | new_bits << k, k + 1, size + 1)

    descend(0, 0, 1, 0)
    return shallow, roots


def _subtree_sets(n: int, bits: int, forbidden: int, start: int) -> list[int]:
    """All sum-free extensions of one subtree root, root included, preorder."""
    out: list[int] = []

    def descend(bits: int, forbidden: int, start: int) -> None:
        out.append(bits)
        for k in range(start, n + 1):
            if forbidden >> k & 1:
                continue
            new_bits = bits | 1 << k
            descend(new_bits, forbidden | new_bits << k, k + 1)

    descend(bits, forbidden, start)
    return out


def _subtree_worker(job: tuple[int, int, int, int]) -> list[int]:
    n, bits, forbidden, start = job
    return _subtree_sets(n, bits, forbidden, start)


def enumerate_sum_free(
    n: int, config: SearchConfig = DEFAULT_CONFIG
) -> Iterator[IntegerSet]:
    """Stream every sum-free subset of [1, n], empty set included.

    The order is fixed regardless of worker count: sets with fewer than
    ``prefix_depth`` members first (preorder), then each subtree block in
    root order. The emitted family always equals the brute-force oracle's.
    """
    _check_universe(n, config)
    shallow, roots = _descend_split(n, config.prefix_depth)

    def generate() -> Iterator[IntegerSet]:
        for bits in shallow:
            yield IntegerSet(n, bits)
        if config.parallel > 1 and len(roots) > 1:
            jobs = [(n, bits, forbidden, start) for bits, forbidden, start in roots]
            with ProcessPoolExecutor(max_workers=config.parallel) as pool:
                for block in pool.map(_subtree_worker, jobs):
                    for bits in block:
                        yield IntegerSet(n, bits)
        else:
            for bits, forbidden, start in roots:
                for member_bits in _subtree_sets(n, bits, forbidden, start):
                    yield IntegerSet(n, member_bits)

    return generate()


def _range_mask(start: int, n: int) -> int:
    """Bits start..n inclusive."""
    return (1 << (n + 1)) - (1 << start)


def enumerate_maximum_sets(
    n: int, config: SearchConfig = DEFAULT_CONFIG
) -> list[SetRecord]:
    """All sum-free subsets of [1, n] with cardinality floor((n+1)/2).

    Branch-and-bound: a branch is cut once its size plus the remaining
    non-forbidden candidates cannot reach the target. Results are sorted by
    member sequence.
    """
    _check_universe(n, config)
    target = maximum_cardinality(n)
    found: list[int] = []

    def descend(bits: int, forbidden: int, start: int, size: int) -> None:
        if size == target:
            found.append(bits)
            return
        allowed = _range_mask(start, n) & ~forbidden
        if size + allowed.bit_count() < target:
            return
        for k in range(start, n + 1):
            if forbidden >> k & 1:
                continue
            new_bits = bits | 1 << k
            descend(new_bits, forbidden | new_bits << k, k + 1, size + 1)

    descend(0, 0, 1, 0)
    found.sort(key=lambda bits: IntegerSet(n, bits).members())
    return [make_record(IntegerSet(n, bits)) for bits in found]


def enumerate_maximal_sets(
    n: int, config: SearchConfig = DEFAULT_CONFIG
) -> list[SetRecord]:
    """All maximal sum-free subsets of [1, n] (no sum-free proper superset)."""
    _check_universe(n, config)
    records = (make_record(s) for s in enumerate_sum_free(n, config))
    maximal = [record for record in records if record.is_maximal]
    maximal.sort(key=lambda record: record.set.members())
    return maximal


def compute_g(n: int, m: int, config: SearchConfig = DEFAULT_CONFIG) -> GEntry:
    """Exact g(n, m): the largest sum-free subset of [1, n] with minimum m.

    The search pins m as a member and branches over candidates in (m, n].
    ``node_count`` is the number of partial sets expanded.
    """
    if not 1 <= m <= n:
        raise PreconditionError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_universe(n, config)

    best_size = 1
    best_bits = 1 << m
    nodes = 0

    def descend(bits: int, forbidden: int, start: int, size: int) -> None:
        nonlocal best_size, best_bits, nodes
        nodes += 1
        if size > best_size or (size == best_size and bits < best_bits):
            best_size = size
            best_bits = bits
        allowed = _range_mask(start, n) & ~forbidden
        if size + allowed.bit_count() < best_size:
            return
        for k in range(start, n + 1):
            if forbidden >> k & 1:
                continue
            new_bits = bits | 1 << k
            descend(new_bits, forbidden | new_bits << k, k + 1, size + 1)

    seed = 1 << m
    descend(seed, seed << m, m + 1, 1)
    return GEntry(n=n, m=m, g_value=best_size, witness=IntegerSet(n, best_bits), node_count=nodes)


def compute_g_with_n(
    n: int, m: int, config: SearchConfig = DEFAULT_CONFIG
) -> GEntry | None:
    """Like :func:`compute_g` but restricted to sets that contain n itself.

    Returns None when no sum-free subset of [1, n] has minimum m and contains
    n (that happens exactly when {m, n} is not sum-free, e.g. n = 2m).

    Because n sits above every branching candidate k, extending by k must
    also avoid creating k + x = n: k is rejected when n - k is already a
    member or when 2k = n.
    """
    if not 1 <= m <= n:
        raise PreconditionError(f"need 1 <= m <= n, got m={m}, n={n}")
    _check_universe(n, config)

    if m == n:
        return GEntry(n=n, m=m, g_value=1, witness=IntegerSet(n, 1 << n), node_count=1)

    seed_bits = (1 << m) | (1 << n)
    if not is_sum_free(IntegerSet(n, seed_bits)):
        return None

    best_size = 2
    best_bits = seed_bits
    nodes = 0

    def descend(bits: int, forbidden: int, start: int, size: int) -> None:
        nonlocal best_size, best_bits, nodes
        nodes += 1
        if size > best_size or (size == best_size and bits < best_bits):
            best_size = size
            best_bits = bits
        allowed = _range_mask(start, n - 1) & ~forbidden
        if size + allowed.bit_count() < best_size:
            return
        for k in range(start, n):
            if forbidden >> k & 1:
                continue
            if bits >> (n - k) & 1 or 2 * k == n:
                continue
            new_bits = bits | 1 << k
            descend(new_bits, forbidden | new_bits << k, k + 1, size + 1)

    descend(seed_bits, seed_bits << m | seed_bits << n, m + 1, 2)
    return GEntry(n=n, m=m, g_value=best_size, witness=IntegerSet(n, best_bits), node_count=nodes)


def _g_cell_worker(job: tuple[int, int, int]) -> GEntry:
    n, m, max_n = job
    return compute_g(n, m, SearchConfig(max_n=max_n))


def compute_g_cells(
    cells: list[tuple[int, int]], config: SearchConfig = DEFAULT_CONFIG
) -> list[GEntry]:
    """compute_g for a list of (n, m) cells, results in input order.

    Cells are independent, so parallel runs distribute them across worker
    processes and merge in cell order; worker count never changes the result.
    """
    if config.parallel > 1 and len(cells) > 1:
        jobs = [(n, m, config.max_n) for n, m in cells]
        with ProcessPoolExecutor(max_workers=config.parallel) as pool:
            return list(pool.map(_g_cell_worker, jobs, chunksize=8))
    return [compute_g(n, m, config) for n, m in cells]


def g_table(n_max: int, config: SearchConfig = DEFAULT_CONFIG) -> list[GEntry]:
    """GEntry for every 1 <= m <= n <= n_max, ordered by n then m."""
    _check_universe(n_max, config)
    cells = [(n, m) for n in range(1, n_max + 1) for m in range(1, n + 1)]
    return compute_g_cells(cells, config)


def write_g_table_csv(entries: Iterable[GEntry], stream: IO[str]) -> None:
    """Write the g-table as CSV with header ``n,m,g,witness,nodes``."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(GTABLE_CSV_HEADER)
    for entry in entries:
        writer.writerow(
            [entry.n, entry.m, entry.g_value, str(entry.witness), entry.node_count]
        )
