"""Persistent cache of computed g-table rows and maximum-set digests.

The cache is a line-oriented JSON file: a header line carrying the format
version and the engine fingerprint, then one record per line, either

    {"kind": "g", "n": ..., "m": ..., "g": ..., "witness": "{...}", "nodes": ...}
    {"kind": "maximum_sets", "n": ..., "count": ..., "sets": ["{...}", ...]}

A cache with an unknown format version, a different engine fingerprint, or
any malformed line is discarded wholesale and recomputed; stale results are
never trusted. Writes go through a temp file in the same directory followed
by an atomic rename, so a killed run leaves either the old cache or the new
one, never a torn file. A sidecar ``<path>.lock`` advisory lock keeps the
file single-process; a second process fails fast instead of waiting.
"""

from __future__ import annotations

import fcntl
import json
import os
import tempfile
from contextlib import contextmanager
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator

from .core import IntegerSet, SumFreeToolkitError
from .search import ENGINE_FINGERPRINT, GEntry

CACHE_FORMAT_VERSION = 1


class CacheLockedError(SumFreeToolkitError):
    """Another process holds the cache lock."""


@dataclass
class CacheData:
    """In-memory view of the cache file."""

    format_version: int = CACHE_FORMAT_VERSION
    engine_fingerprint: str = ENGINE_FINGERPRINT
    g_entries: dict[tuple[int, int], GEntry] = field(default_factory=dict)
    maximum_digests: dict[int, tuple[str, ...]] = field(default_factory=dict)


@contextmanager
def cache_lock(path: Path) -> Iterator[None]:
    """Hold the advisory lock for ``path`` while the context is open."""
    lock_path = Path(str(path) + ".lock")
    lock_path.parent.mkdir(parents=True, exist_ok=True)
    fd = os.open(lock_path, os.O_CREAT | os.O_RDWR, 0o644)
    try:
        try:
            fcntl.flock(fd, fcntl.LOCK_EX | fcntl.LOCK_NB)
        except OSError:
            raise CacheLockedError(
                f"cache {path} is locked by another process"
            ) from None
        yield
    finally:
        os.close(fd)


def load_cache(path: Path) -> CacheData:
    """Read a cache file; anything untrustworthy yields an empty cache."""
    fresh = CacheData()
    try:
        lines = path.read_text().splitlines()
    except FileNotFoundError:
        return fresh
    if not lines:
        return fresh
    try:
        header = json.loads(lines[0])
        if header.get("format_version") != CACHE_FORMAT_VERSION:
            return fresh
        if header.get("engine_fingerprint") != ENGINE_FINGERPRINT:
            return fresh
        data = CacheData()
        for line in lines[1:]:
            record = json.loads(line)
            kind = record["kind"]
            if kind == "g":
                n, m = int(record["n"]), int(record["m"])
                data.g_entries[(n, m)] = GEntry(
                    n=n,
                    m=m,
                    g_value=int(record["g"]),
                    witness=IntegerSet.parse(record["witness"], n),
                    node_count=int(record["nodes"]),
                )
            elif kind == "maximum_sets":
                n = int(record["n"])
                sets = tuple(str(s) for s in record["sets"])
                if len(sets) != int(record["count"]):
                    return fresh
                for text in sets:
                    IntegerSet.parse(text, n)
                data.maximum_digests[n] = sets
            else:
                return fresh
    except (ValueError, KeyError, TypeError, SumFreeToolkitError):
        return fresh
    return data


def save_cache(path: Path, data: CacheData) -> None:
    """Atomically rewrite the cache file (temp file in place, then rename)."""
    lines = [
        json.dumps(
            {
                "format_version": data.format_version,
                "engine_fingerprint": data.engine_fingerprint,
            },
            sort_keys=True,
            separators=(",", ":"),
        )
    ]
    for (n, m) in sorted(data.g_entries):
        entry = data.g_entries[(n, m)]
        lines.append(
            json.dumps(
                {
                    "kind": "g",
                    "n": entry.n,
                    "m": entry.m,
                    "g": entry.g_value,
                    "witness": str(entry.witness),
                    "nodes": entry.node_count,
                },
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    for n in sorted(data.maximum_digests):
        sets = data.maximum_digests[n]
        lines.append(
            json.dumps(
                {"kind": "maximum_sets", "n": n, "count": len(sets), "sets": list(sets)},
                sort_keys=True,
                separators=(",", ":"),
            )
        )
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as handle:
            handle.write("\n".join(lines) + "\n")
            handle.flush()
            os.fsync(handle.fileno())
        os.replace(tmp_name, path)
    except BaseException:
        try:
            os.unlink(tmp_name)
        except OSError:
            pass
        raise
