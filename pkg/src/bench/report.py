"""Bench records and the TSV/text reports built from them."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Dict, List, Optional, Union

from src.errors import HolkitError
from src.kernel.context import KernelMode
from src.utils.helpers import format_duration, format_kib, format_percent

logger = logging.getLogger(__name__)

# achieved extended/minimal ratios are printed next to these reference figures
REFERENCE_ARTICLE_SIZE = 0.6436
REFERENCE_LP_SIZE = 0.6492
REFERENCE_TRANSLATE_GAIN = 0.4181
REFERENCE_CHECK_GAIN = 0.3804

TOTAL = "TOTAL"


@dataclass
class BenchRecord:
    """Measurements of one corpus entry in one kernel mode; times in milliseconds."""

    entry: str
    mode: str
    steps: int
    article_bytes: int
    article_gzip_bytes: int
    lp_bytes: int
    lp_gzip_bytes: int
    translate_time: float
    check_time: float


FIELD_NAMES = [f.name for f in fields(BenchRecord)]
MEASURES = FIELD_NAMES[2:]
TIME_FIELDS = ("translate_time", "check_time")


@dataclass
class BenchFailure:
    entry: str
    mode: str
    stage: str
    message: str


@dataclass
class BenchReport:
    records: List[BenchRecord] = field(default_factory=list)
    failures: List[BenchFailure] = field(default_factory=list)
    modes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def totals(self) -> Dict[str, Dict[str, float]]:
        """Per-mode sums of every measured field."""
        totals = {mode: {name: 0 for name in MEASURES} for mode in self.modes}
        for record in self.records:
            bucket = totals.setdefault(record.mode, {name: 0 for name in MEASURES})
            for name in MEASURES:
                bucket[name] += getattr(record, name)
        return totals

    def ratios(self) -> Optional[Dict[str, Optional[float]]]:
        """Extended over minimal for each total, or None unless both modes were run."""
        totals = self.totals()
        minimal = totals.get(KernelMode.MINIMAL.value)
        extended = totals.get(KernelMode.EXTENDED.value)
        if minimal is None or extended is None:
            return None
        return {name: (extended[name] / minimal[name] if minimal[name] else None) for name in MEASURES}


def _format_value(name: str, value: float) -> str:
    if name in TIME_FIELDS:
        return f"{value:.3f}"
    return str(int(value))


def _tsv(report: BenchReport) -> str:
    lines = ["\t".join(FIELD_NAMES)]
    for record in report.records:
        lines.append("\t".join([record.entry, record.mode] +
                               [_format_value(name, getattr(record, name)) for name in MEASURES]))
    for mode, total in report.totals().items():
        lines.append("\t".join([TOTAL, mode] + [_format_value(name, total[name]) for name in MEASURES]))
    return "\n".join(lines) + "\n"


def _reduced(label: str, ratio: Optional[float], reference: Optional[float] = None) -> str:
    line = f"{label}: reduced to {format_percent(ratio)}"
    if reference is not None:
        line += f" (reference {format_percent(reference)})"
    return line


def _improved(label: str, ratio: Optional[float], reference: float) -> str:
    gain = None if ratio is None else 1 - ratio
    return f"{label}: improved by {format_percent(gain)} (reference {format_percent(reference)})"


def _text(report: BenchReport) -> str:
    header = f"{'entry':<20} {'mode':<9} {'steps':>7} {'art KB':>8} {'art.gz KB':>10} " \
             f"{'lp KB':>8} {'lp.gz KB':>9} {'translate':>10} {'check':>10}"
    lines = ["holkit bench report", "", header, "-" * len(header)]
    for r in report.records:
        lines.append(f"{r.entry:<20} {r.mode:<9} {r.steps:>7} {format_kib(r.article_bytes):>8} "
                     f"{format_kib(r.article_gzip_bytes):>10} {format_kib(r.lp_bytes):>8} "
                     f"{format_kib(r.lp_gzip_bytes):>9} {format_duration(r.translate_time):>10} "
                     f"{format_duration(r.check_time):>10}")
    lines += ["", "Totals (KB = 1024 bytes)"]
    for mode, t in report.totals().items():
        lines.append(f"{mode:<9} steps {int(t['steps'])}, article {format_kib(t['article_bytes'])} KB "
                     f"({format_kib(t['article_gzip_bytes'])} KB gzip), "
                     f"lp {format_kib(t['lp_bytes'])} KB ({format_kib(t['lp_gzip_bytes'])} KB gzip), "
                     f"translate {format_duration(t['translate_time'])}, check {format_duration(t['check_time'])}")

    ratios = report.ratios()
    if ratios is not None:
        lines += ["", "Extended kernel compared with minimal kernel"]
        lines.append(_reduced("Inference steps", ratios["steps"]))
        lines.append(_reduced("Size of article files (gzip)", ratios["article_gzip_bytes"], REFERENCE_ARTICLE_SIZE))
        lines.append(_improved("Translation time", ratios["translate_time"], REFERENCE_TRANSLATE_GAIN))
        lines.append(_reduced("Size of LP files (gzip)", ratios["lp_gzip_bytes"], REFERENCE_LP_SIZE))
        lines.append(_improved("Proof checking time", ratios["check_time"], REFERENCE_CHECK_GAIN))

    if report.failures:
        lines += ["", f"Failures ({len(report.failures)})"]
        for failure in report.failures:
            lines.append(f"{failure.entry} [{failure.mode}] {failure.stage}: {failure.message}")
    return "\n".join(lines) + "\n"


def emit_report(report: BenchReport, fmt: str = "tsv") -> bytes:
    """Render ``report`` as ``tsv`` or ``text``."""
    if fmt == "tsv":
        return _tsv(report).encode("utf-8")
    if fmt == "text":
        return _text(report).encode("utf-8")
    raise ValueError(f"unknown report format {fmt!r}; expected 'tsv' or 'text'")


def parse_tsv(data: Union[bytes, str]) -> List[BenchRecord]:
    """Records of a TSV report; TOTAL rows are skipped."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    lines = text.splitlines()
    if not lines or lines[0].split("\t") != FIELD_NAMES:
        raise HolkitError("not a bench TSV report: header row does not match")
    records: List[BenchRecord] = []
    for number, line in enumerate(lines[1:], start=2):
        cells = line.split("\t")
        if len(cells) != len(FIELD_NAMES):
            raise HolkitError(f"expected {len(FIELD_NAMES)} fields, found {len(cells)}", number)
        if cells[0] == TOTAL:
            continue
        values = {name: float(cell) if name in TIME_FIELDS else int(cell)
                  for name, cell in zip(MEASURES, cells[2:])}
        records.append(BenchRecord(cells[0], cells[1], **values))
    return records


def write_reports(report: BenchReport, outdir: Union[str, Path]) -> None:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for fmt, name in (("tsv", "report.tsv"), ("text", "report.txt")):
        (outdir / name).write_bytes(emit_report(report, fmt))
    logger.info(f"Wrote bench reports to {outdir}")
