"""Command-line contract: outputs, exit codes, cache behaviour, determinism."""

import dataclasses
import json

from sumfree import cli, taxonomy
from sumfree.cache import cache_lock, load_cache
from sumfree.taxonomy import TaxonomyLabel


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_maximum_exception_set(self, capsys):
        code, out, _ = run(capsys, "check", "{2,5,6}", "--n", "6")
        assert code == 0
        payload = json.loads(out)
        assert payload["sum_free"] and payload["maximum"]
        assert payload["exception"] == "E256"
        assert payload["pair_coverage"] is True

    def test_maximal_not_maximum(self, capsys):
        code, out, _ = run(capsys, "check", "{1,3,8}", "--n", "8")
        assert code == 0
        payload = json.loads(out)
        assert payload["maximal"] and not payload["maximum"]
        assert payload["pair_coverage"] is None

    def test_not_sum_free(self, capsys):
        code, out, _ = run(capsys, "check", "{2,4}", "--n", "4")
        assert code == 0
        assert json.loads(out)["sum_free"] is False

    def test_parse_error_names_token(self, capsys):
        code, _, err = run(capsys, "check", "{2,x}", "--n", "6")
        assert code == 1
        assert "'x'" in err

    def test_out_of_range_member(self, capsys):
        code, _, err = run(capsys, "check", "{9}", "--n", "6")
        assert code == 1
        assert "9" in err

    def test_output_file(self, capsys, tmp_path):
        out_file = tmp_path / "report.json"
        code, out, _ = run(capsys, "check", "{1,3}", "--n", "3", "--out", str(out_file))
        assert code == 0 and out == ""
        assert json.loads(out_file.read_text())["maximum"] is True


class TestGtable:
    def test_stdout_csv(self, capsys):
        code, out, err = run(capsys, "gtable", "--n-max", "3")
        assert code == 0
        lines = out.splitlines()
        assert lines[0] == "n,m,g,witness,nodes"
        assert len(lines) == 7
        assert "6 computed" in err

    def test_known_row(self, capsys):
        code, out, _ = run(capsys, "gtable", "--n-max", "6")
        assert code == 0
        assert '6,2,3,"{2,5,6}"' in out

    def test_byte_identical_runs(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(capsys, "gtable", "--n-max", "8", "--out", str(a))[0] == 0
        assert run(capsys, "gtable", "--n-max", "8", "--out", str(b))[0] == 0
        assert a.read_bytes() == b.read_bytes()

    def test_workers_do_not_change_bytes(self, capsys, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        run(capsys, "gtable", "--n-max", "8", "--workers", "1", "--out", str(a))
        run(capsys, "gtable", "--n-max", "8", "--workers", "3", "--out", str(b))
        assert a.read_bytes() == b.read_bytes()

    def test_warm_cache_identical_bytes(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        cold, warm = tmp_path / "cold.csv", tmp_path / "warm.csv"
        code, _, err = run(capsys, "gtable", "--n-max", "6", "--cache",
                           str(cache_file), "--out", str(cold))
        assert code == 0 and "21 computed" in err and "0 cached" in err
        code, _, err = run(capsys, "gtable", "--n-max", "6", "--cache",
                           str(cache_file), "--out", str(warm))
        assert code == 0 and "21 cached" in err and "0 computed" in err
        assert cold.read_bytes() == warm.read_bytes()

    def test_cache_extends_incrementally(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        run(capsys, "gtable", "--n-max", "4", "--cache", str(cache_file))
        code, _, err = run(capsys, "gtable", "--n-max", "6", "--cache",
                           str(cache_file))
        assert code == 0
        assert "10 cached" in err and "11 computed" in err
        assert len(load_cache(cache_file).g_entries) == 21

    def test_foreign_fingerprint_recomputed(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        run(capsys, "gtable", "--n-max", "4", "--cache", str(cache_file))
        text = cache_file.read_text().replace("sumfree-search", "other-engine")
        cache_file.write_text(text)
        code, _, err = run(capsys, "gtable", "--n-max", "4", "--cache",
                           str(cache_file))
        assert code == 0 and "10 computed" in err

    def test_cap_exceeded(self, capsys, monkeypatch):
        monkeypatch.setenv("SUMFREE_MAX_N", "10")
        code, _, err = run(capsys, "gtable", "--n-max", "12")
        assert code == 1
        assert "cap" in err

    def test_json_format(self, capsys):
        code, out, _ = run(capsys, "gtable", "--n-max", "3", "--format", "json")
        assert code == 0
        rows = json.loads(out)
        assert rows[3] == {"n": 3, "m": 1, "g": 2, "witness": "{1,3}", "nodes": 2}

    def test_locked_cache_fails_fast(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        with cache_lock(cache_file):
            code, _, err = run(capsys, "gtable", "--n-max", "3", "--cache",
                               str(cache_file))
        assert code == 1
        assert "locked" in err

    def test_interrupted_update_leaves_cache_valid(self, capsys, tmp_path,
                                                   monkeypatch):
        cache_file = tmp_path / "cache.jsonl"
        run(capsys, "gtable", "--n-max", "4", "--cache", str(cache_file))
        before = cache_file.read_bytes()

        import sumfree.cache as cache_module

        def broken_replace(src, dst):
            raise OSError("simulated kill")

        monkeypatch.setattr(cache_module.os, "replace", broken_replace)
        code, _, _ = run(capsys, "gtable", "--n-max", "6", "--cache",
                         str(cache_file))
        assert code == 1
        monkeypatch.undo()
        assert cache_file.read_bytes() == before
        assert len(load_cache(cache_file).g_entries) == 10


class TestEnumerate:
    def test_maximum_json(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "8", "--kind", "maximum")
        assert code == 0
        payload = json.loads(out)
        assert payload["count"] == 4
        assert payload["sets"] == [
            "{1,3,5,7}", "{2,3,7,8}", "{4,5,6,7}", "{5,6,7,8}",
        ]

    def test_all_counts_empty_set(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "4")
        payload = json.loads(out)
        assert code == 0 and payload["count"] == 9
        assert "{}" in payload["sets"]

    def test_maximal(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "8", "--kind", "maximal")
        assert code == 0
        assert "{1,3,8}" in json.loads(out)["sets"]

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "enumerate", "--n", "3", "--kind", "maximum",
                           "--format", "csv")
        assert code == 0
        assert out.splitlines() == ['set,cardinality', '"{1,3}",2', '"{2,3}",2']

    def test_maximum_digest_cached(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        code, first, _ = run(capsys, "enumerate", "--n", "6", "--kind", "maximum",
                             "--cache", str(cache_file))
        assert code == 0
        assert 6 in load_cache(cache_file).maximum_digests
        code, second, _ = run(capsys, "enumerate", "--n", "6", "--kind", "maximum",
                              "--cache", str(cache_file))
        assert code == 0 and first == second


class TestScanBounds:
    def test_n12_report_and_exit(self, capsys):
        code, out, err = run(capsys, "scan-bounds", "--n-max", "12")
        assert code == 0
        rows = json.loads(out)
        violated = [(r["n"], r["m"]) for r in rows if r["ce_violated"]]
        assert violated == [(3, 1), (6, 2), (9, 3), (12, 4)]
        assert not any(r["revised_violated"] for r in rows)
        assert "revised-bound violations: none" in err
        assert "(n=6,m=2)" in err

    def test_small_range_no_violations(self, capsys):
        code, out, err = run(capsys, "scan-bounds", "--n-max", "2")
        assert code == 0
        assert json.loads(out)
        assert "classic-bound violations: none" in err

    def test_csv_format(self, capsys):
        code, out, _ = run(capsys, "scan-bounds", "--n-max", "3", "--format", "csv")
        assert code == 0
        assert out.splitlines()[0] == (
            "n,m,case,ce_bound,revised_bound,g_exact,"
            "ce_violated,revised_violated,tight,witness"
        )

    def test_exit_2_on_revised_violation(self, capsys, monkeypatch):
        from sumfree import bounds

        fake = [dataclasses.replace(bounds.evaluate_cell(6, 2),
                                    revised_violated=True)]
        monkeypatch.setattr(cli.bounds, "scan_bound_violations",
                            lambda n_max, config: fake)
        code, _, err = run(capsys, "scan-bounds", "--n-max", "6")
        assert code == 2
        assert "revised-bound violations" in err


class TestVerifyTaxonomy:
    def test_full_range(self, capsys):
        code, out, err = run(capsys, "verify-taxonomy", "--n-max", "10")
        assert code == 0
        payload = json.loads(out)
        assert [e["label"] for e in payload["summary"]["exceptions"]] == [
            "E14", "E146", "E256", "E2378",
        ]
        assert "note" not in payload["summary"]
        assert "exceptions as expected" in err

    def test_restricted_range_notes_coverage(self, capsys):
        code, out, _ = run(capsys, "verify-taxonomy", "--n-max", "5")
        assert code == 0
        payload = json.loads(out)
        assert [e["set"] for e in payload["summary"]["exceptions"]] == ["{1,4}"]
        assert "note" in payload["summary"]

    def test_unclassified_set_exits_2(self, capsys, monkeypatch):
        def always_unclassified(a):
            return TaxonomyLabel(
                classes=frozenset(), exception=None, unclassified=True
            )

        monkeypatch.setattr(taxonomy, "classify", always_unclassified)
        code, out, _ = run(capsys, "verify-taxonomy", "--n-max", "6")
        assert code == 2
        assert json.loads(out)["summary"]["completeness_ok"] is False

    def test_cache_round_trip_same_bytes(self, capsys, tmp_path):
        cache_file = tmp_path / "cache.jsonl"
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        run(capsys, "verify-taxonomy", "--n-max", "8", "--cache",
            str(cache_file), "--out", str(a))
        assert load_cache(cache_file).maximum_digests
        run(capsys, "verify-taxonomy", "--n-max", "8", "--cache",
            str(cache_file), "--out", str(b))
        assert a.read_bytes() == b.read_bytes()


class TestVerifyLemmas:
    def test_full_range(self, capsys):
        code, out, err = run(capsys, "verify-lemmas", "--n-max", "10")
        assert code == 0
        payload = json.loads(out)
        assert payload["all_ok"]
        assert payload["m1_uncovered"] == [
            {"n": 4, "set": "{1,4}"}, {"n": 6, "set": "{1,4,6}"},
        ]
        assert payload["m2_uncovered"] == [
            {"n": 6, "set": "{2,5,6}"}, {"n": 8, "set": "{2,3,7,8}"},
        ]
        assert payload["pair_coverage"]["all_ok"]
        assert "all claims hold" in err

    def test_fault_injection_exits_2(self, capsys, monkeypatch):
        # a maximum set that the scan misattributes must flip the exit code
        monkeypatch.setattr(
            cli.taxonomy, "verify_m1_exceptions", lambda *a, **k: []
        )
        code, out, _ = run(capsys, "verify-lemmas", "--n-max", "6")
        assert code == 2
        assert json.loads(out)["m1_ok"] is False


class TestEnvironment:
    def test_env_cache_used(self, capsys, tmp_path, monkeypatch):
        env_cache = tmp_path / "env-cache.jsonl"
        monkeypatch.setenv("SUMFREE_CACHE", str(env_cache))
        code, _, _ = run(capsys, "gtable", "--n-max", "3")
        assert code == 0
        assert env_cache.exists()

    def test_flag_overrides_env_cache(self, capsys, tmp_path, monkeypatch):
        env_cache = tmp_path / "env-cache.jsonl"
        flag_cache = tmp_path / "flag-cache.jsonl"
        monkeypatch.setenv("SUMFREE_CACHE", str(env_cache))
        code, _, _ = run(capsys, "gtable", "--n-max", "3", "--cache",
                         str(flag_cache))
        assert code == 0
        assert flag_cache.exists() and not env_cache.exists()

    def test_env_workers(self, capsys, monkeypatch):
        monkeypatch.setenv("SUMFREE_WORKERS", "2")
        code, out, _ = run(capsys, "gtable", "--n-max", "4")
        assert code == 0 and len(out.splitlines()) == 11

    def test_bad_env_value(self, capsys, monkeypatch):
        monkeypatch.setenv("SUMFREE_MAX_N", "lots")
        code, _, err = run(capsys, "gtable", "--n-max", "4")
        assert code == 1
        assert "SUMFREE_MAX_N" in err


class TestArgumentErrors:
    def test_unknown_command(self, capsys):
        code, _, err = run(capsys, "frobnicate")
        assert code == 1
        assert "error" in err

    def test_missing_required_flag(self, capsys):
        code, _, _ = run(capsys, "gtable")
        assert code == 1

    def test_help_exits_zero(self, capsys):
        code, out, _ = run(capsys, "--help")
        assert code == 0
        assert "sumfree" in out
