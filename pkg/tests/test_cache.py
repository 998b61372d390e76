"""Cache file format, fingerprint trust rules, locking, and atomic writes."""

import json
import os

import pytest

from sumfree.cache import (
    CACHE_FORMAT_VERSION,
    CacheData,
    CacheLockedError,
    cache_lock,
    load_cache,
    save_cache,
)
from sumfree.search import ENGINE_FINGERPRINT, compute_g


@pytest.fixture
def sample_data():
    data = CacheData()
    data.g_entries[(6, 2)] = compute_g(6, 2)
    data.g_entries[(3, 1)] = compute_g(3, 1)
    data.maximum_digests[4] = ("{1,3}", "{1,4}", "{2,3}", "{3,4}")
    return data


def test_round_trip(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    loaded = load_cache(path)
    assert loaded.g_entries == sample_data.g_entries
    assert loaded.maximum_digests == sample_data.maximum_digests


def test_missing_file_is_empty(tmp_path):
    loaded = load_cache(tmp_path / "missing.jsonl")
    assert not loaded.g_entries and not loaded.maximum_digests


def test_header_line_is_versioned(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    header = json.loads(path.read_text().splitlines()[0])
    assert header == {
        "format_version": CACHE_FORMAT_VERSION,
        "engine_fingerprint": ENGINE_FINGERPRINT,
    }


def test_foreign_fingerprint_discarded(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    lines = path.read_text().splitlines()
    lines[0] = json.dumps(
        {"format_version": CACHE_FORMAT_VERSION, "engine_fingerprint": "other-engine"}
    )
    path.write_text("\n".join(lines) + "\n")
    loaded = load_cache(path)
    assert not loaded.g_entries and not loaded.maximum_digests


def test_unknown_version_discarded(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    lines = path.read_text().splitlines()
    lines[0] = json.dumps(
        {"format_version": 99, "engine_fingerprint": ENGINE_FINGERPRINT}
    )
    path.write_text("\n".join(lines) + "\n")
    assert not load_cache(path).g_entries


def test_corrupt_line_discards_everything(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    path.write_text(path.read_text() + "not json\n")
    assert not load_cache(path).g_entries


def test_bad_witness_discards_everything(tmp_path, sample_data):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    text = path.read_text().replace("{2,5,6}", "{2,99}")
    path.write_text(text)
    assert not load_cache(path).g_entries


def test_lock_conflict_fails_fast(tmp_path):
    path = tmp_path / "cache.jsonl"
    with cache_lock(path):
        with pytest.raises(CacheLockedError):
            with cache_lock(path):
                pass


def test_lock_released_after_use(tmp_path):
    path = tmp_path / "cache.jsonl"
    with cache_lock(path):
        pass
    with cache_lock(path):
        pass


def test_failed_save_leaves_old_cache_intact(tmp_path, sample_data, monkeypatch):
    path = tmp_path / "cache.jsonl"
    save_cache(path, sample_data)
    before = path.read_bytes()

    def broken_replace(src, dst):
        raise OSError("simulated crash during rename")

    monkeypatch.setattr(os, "replace", broken_replace)
    bigger = CacheData()
    bigger.g_entries.update(sample_data.g_entries)
    bigger.g_entries[(8, 5)] = compute_g(8, 5)
    with pytest.raises(OSError):
        save_cache(path, bigger)
    assert path.read_bytes() == before
    assert load_cache(path).g_entries == sample_data.g_entries
    # no temp litter left behind
    assert [p.name for p in tmp_path.iterdir() if p.suffix == ".tmp"] == []
