import random
import zlib

import pytest

from src.bench.report import (FIELD_NAMES, BenchFailure, BenchRecord, BenchReport, emit_report,
                              parse_tsv)
from src.bench.runner import BenchRunner, gzip_size, run_bench
from src.bootstrap.corpus import corpus, corpus_entry
from src.errors import HolkitError


def _record(entry, mode, scale):
    return BenchRecord(entry=entry, mode=mode, steps=10 * scale, article_bytes=200 * scale,
                       article_gzip_bytes=100 * scale, lp_bytes=400 * scale, lp_gzip_bytes=150 * scale,
                       translate_time=1.5 * scale, check_time=2.25 * scale)


def _report():
    return BenchReport(
        records=[_record("a", "minimal", 4), _record("b", "minimal", 2),
                 _record("a", "extended", 2), _record("b", "extended", 1)],
        modes=["minimal", "extended"])


class TestGzip:
    def test_matches_deflate_stream(self):
        rng = random.Random(41)
        for _ in range(10):
            data = bytes(rng.choice(b"abc \n") for _ in range(rng.randrange(2000)))
            compressor = zlib.compressobj(6, zlib.DEFLATED, 31)
            expected = len(compressor.compress(data) + compressor.flush())
            assert gzip_size(data, 6) == expected
            assert gzip_size(data, 6) <= len(data) + 32

    def test_bounds(self):
        assert 18 <= gzip_size(b"") <= 24
        assert gzip_size(b"a" * 10240) < 10240

    def test_deterministic(self):
        assert gzip_size(b"holkit" * 100) == gzip_size(b"holkit" * 100)


class TestReport:
    def test_tsv_round_trip(self):
        report = _report()
        data = emit_report(report, "tsv")
        assert data.decode().splitlines()[0].split("\t") == FIELD_NAMES
        assert parse_tsv(data) == report.records

    def test_tsv_totals(self):
        lines = emit_report(_report(), "tsv").decode().splitlines()
        totals = [line.split("\t") for line in lines if line.startswith("TOTAL")]
        assert [row[1] for row in totals] == ["minimal", "extended"]
        assert totals[0][2] == "60"

    def test_ratios_from_totals(self):
        ratios = _report().ratios()
        assert ratios["steps"] == pytest.approx(0.5)
        assert ratios["article_gzip_bytes"] == pytest.approx(0.5)
        assert ratios["check_time"] == pytest.approx(0.5)

    def test_ratios_need_both_modes(self):
        report = BenchReport(records=[_record("a", "minimal", 1)], modes=["minimal"])
        assert report.ratios() is None
        assert b"reduced to" not in emit_report(report, "text")

    def test_text(self):
        text = emit_report(_report(), "text").decode()
        assert "Size of article files (gzip): reduced to 50.00%" in text
        assert "Proof checking time: improved by 50.00%" in text
        assert "Totals" in text

    def test_failures_listed(self):
        report = _report()
        report.failures.append(BenchFailure("c", "minimal", "check", "boom"))
        assert not report.ok
        assert "c [minimal] check: boom" in emit_report(report, "text").decode()

    def test_bad_format(self):
        with pytest.raises(ValueError):
            emit_report(_report(), "csv")

    def test_bad_header(self):
        with pytest.raises(HolkitError):
            parse_tsv(b"entry\tmode\n")


class TestRunner:
    def test_single_entry(self, tmp_path):
        report = run_bench([corpus_entry("conj")], ["extended"], tmp_path, runs=1)
        assert report.ok
        assert report.ratios() is None
        (record,) = report.records
        assert record.steps > 0 and record.article_gzip_bytes > 0
        assert (tmp_path / "extended" / "conj.art").read_bytes().startswith(b"6\nversion\n")
        assert (tmp_path / "extended" / "conj.lp").exists()
        assert parse_tsv((tmp_path / "report.tsv").read_bytes()) == report.records
        assert (tmp_path / "report.txt").exists()

    def test_sizes_are_deterministic(self, tmp_path):
        entries = [corpus_entry("mp"), corpus_entry("disj1")]
        first = run_bench(entries, ["minimal", "extended"], tmp_path / "one", runs=1, workers=2)
        second = run_bench(entries, ["minimal", "extended"], tmp_path / "two", runs=1)

        def sizes(report):
            return sorted((r.entry, r.mode, r.steps, r.article_bytes, r.lp_gzip_bytes) for r in report.records)

        assert sizes(first) == sizes(second)

    def test_failures_are_recorded(self, tmp_path, monkeypatch):
        monkeypatch.setattr("src.bench.runner.Config.DEBUG_DIR", tmp_path / "debug")
        report = BenchRunner(tmp_path, runs=1, step_budget=1).run([corpus_entry("truth")], ["minimal"])
        (failure,) = report.failures
        assert failure.stage == "check"
        assert report.records == []

    def test_extended_kernel_wins_on_the_corpus(self, tmp_path):
        report = run_bench(corpus(), ["minimal", "extended"], tmp_path, runs=1)
        assert report.ok
        ratios = report.ratios()
        assert ratios["steps"] < 1
        assert ratios["article_gzip_bytes"] < 1
        assert ratios["lp_gzip_bytes"] < 1
