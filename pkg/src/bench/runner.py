"""Bench runner: build corpus entries in each kernel mode and measure their proof artifacts."""

from __future__ import annotations

import gzip
import logging
import time
import traceback
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar, Union

import numpy as np

from config import Config
from src.article.commands import Dialect, format_article
from src.article.writer import serialize
from src.bench.report import BenchFailure, BenchRecord, BenchReport, write_reports
from src.bootstrap.corpus import CorpusEntry
from src.bootstrap.session import new_session
from src.kernel.context import KernelMode
from src.lp.checker import check_file
from src.lp.lpfile import emit_lp_file
from src.lp.translate import theorem_file
from src.utils.helpers import save_debug_info

logger = logging.getLogger(__name__)

T = TypeVar("T")


def gzip_size(data: bytes, level: Optional[int] = None) -> int:
    """Length of the gzip stream of ``data``; the header timestamp is zeroed."""
    level = Config.GZIP_LEVEL if level is None else level
    return len(gzip.compress(data, compresslevel=level, mtime=0))


def _timed(action: Callable[[], T], runs: int) -> Tuple[T, float]:
    """Run ``action`` ``runs`` times; last result and median wall-clock milliseconds."""
    times: List[float] = []
    result = None
    for _ in range(runs):
        start = time.perf_counter()
        result = action()
        times.append((time.perf_counter() - start) * 1000)
    return result, round(float(np.median(times)), 3)


class BenchRunner:
    """Runs each (entry, mode) pair in its own fresh session."""

    def __init__(self, outdir: Union[str, Path], gzip_level: Optional[int] = None,
                 runs: Optional[int] = None, workers: Optional[int] = None,
                 step_budget: Optional[int] = None):
        self.logger = logging.getLogger(__name__)
        self.outdir = Path(outdir)
        self.gzip_level = Config.GZIP_LEVEL if gzip_level is None else gzip_level
        self.runs = Config.BENCH_RUNS if runs is None else runs
        self.workers = Config.WORKERS if workers is None else workers
        self.step_budget = Config.STEP_BUDGET if step_budget is None else step_budget

    def run_one(self, entry: CorpusEntry, mode: str) -> Union[BenchRecord, BenchFailure]:
        stage = "build"
        try:
            session = new_session(mode)
            th = entry.build(session)
            ctx = session.ctx

            stage = "serialize"
            dialect = Dialect.EXTENDED if ctx.extended else Dialect.STANDARD
            article = format_article(serialize(th, dialect, ctx))

            stage = "translate"
            lp_file, translate_time = _timed(lambda: theorem_file(th, entry.name, ctx), self.runs)
            lp_text = emit_lp_file(lp_file)

            stage = "check"
            _, check_time = _timed(lambda: check_file(lp_file, self.step_budget), self.runs)

            stage = "write"
            mode_dir = self.outdir / mode
            mode_dir.mkdir(parents=True, exist_ok=True)
            (mode_dir / f"{entry.name}.art").write_bytes(article)
            (mode_dir / f"{entry.name}.lp").write_bytes(lp_text)

            record = BenchRecord(
                entry=entry.name,
                mode=mode,
                steps=th.step_count,
                article_bytes=len(article),
                article_gzip_bytes=gzip_size(article, self.gzip_level),
                lp_bytes=len(lp_text),
                lp_gzip_bytes=gzip_size(lp_text, self.gzip_level),
                translate_time=translate_time,
                check_time=check_time,
            )
            self.logger.debug(f"{entry.name} [{mode}]: {record.steps} steps, "
                              f"{record.article_gzip_bytes} gz article bytes")
            return record

        except Exception as e:
            self.logger.error(f"{entry.name} [{mode}] failed during {stage}: {e}")
            save_debug_info(traceback.format_exc(), "bench", Config.DEBUG_DIR)
            return BenchFailure(entry.name, mode, stage, str(e))

    def run(self, entries: Sequence[CorpusEntry], modes: Sequence[str]) -> BenchReport:
        modes = [KernelMode.parse(mode).value for mode in modes]
        tasks = [(entry, mode) for mode in modes for entry in entries]
        self.logger.info(f"Running {len(tasks)} bench tasks on {self.workers} worker(s)")
        with ThreadPoolExecutor(max_workers=self.workers) as executor:
            results = list(executor.map(lambda task: self.run_one(*task), tasks))

        report = BenchReport(modes=list(modes))
        for result in results:
            if isinstance(result, BenchRecord):
                report.records.append(result)
            else:
                report.failures.append(result)
        self.logger.info(f"Bench finished: {len(report.records)} records, {len(report.failures)} failures")
        return report


def run_bench(entries: Sequence[CorpusEntry], modes: Sequence[str], outdir: Union[str, Path],
              **options) -> BenchReport:
    """Measure every entry in every mode, writing artifacts plus ``report.tsv``/``report.txt`` to ``outdir``."""
    report = BenchRunner(outdir, **options).run(entries, modes)
    write_reports(report, outdir)
    return report
