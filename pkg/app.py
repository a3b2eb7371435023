import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from src.article.commands import EXTENSION_COMMANDS, Dialect, Named, format_article, parse, read_file
from src.article.vm import replay
from src.article.writer import serialize
from src.bench.report import emit_report
from src.bench.runner import run_bench
from src.bootstrap.corpus import corpus, corpus_entry
from src.bootstrap.session import new_session
from src.errors import HolkitError
from src.kernel.context import KernelMode
from src.lp.checker import check_file
from src.lp.lpfile import read_lp_file, write_lp_file
from src.lp.translate import theorems_file
from src.utils.helpers import parse_modes
from src.utils.logger import setup_logging
from config import Config

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


class HolkitApp:
    def __init__(self):
        """Initialize the holkit command-line application"""
        self.logger = logging.getLogger(__name__)
        self.config = Config()

    def bench(self, args: argparse.Namespace) -> int:
        """Replay the corpus through the selected kernels and write artifacts plus reports"""
        try:
            modes = parse_modes(args.modes)
            for mode in modes:
                KernelMode.parse(mode)
            report = run_bench(corpus(), modes, args.out, gzip_level=args.gzip_level, runs=args.runs,
                               workers=args.workers, step_budget=args.step_budget)
            sys.stdout.write(emit_report(report, args.report).decode("utf-8"))
            self.logger.debug("Bench completed")
            return EXIT_OK if report.ok else EXIT_FAILURE
        except Exception as e:
            self.logger.error(f"Bench failed: {e}")
            raise

    def check_article(self, args: argparse.Namespace) -> int:
        """Parse an article in the given dialect and replay it in a fresh session"""
        try:
            dialect = Dialect.parse(args.dialect)
            mode = args.mode or (KernelMode.EXTENDED if dialect is Dialect.EXTENDED else KernelMode.MINIMAL)
            cmds = read_file(args.file, dialect)
            session = new_session(mode)
            result = replay(cmds, session.ctx)
            for th in result.exported:
                print(th)
            print(f"ok: {len(result.exported)} theorem(s) exported, {len(result.assumed)} assumed")
            return EXIT_OK
        except Exception as e:
            self.logger.error(f"Failed to check article {args.file}: {e}")
            raise

    def translate(self, args: argparse.Namespace) -> int:
        """Replay an article and write its exported theorems as an LP file"""
        try:
            cmds = parse(Path(args.file).read_bytes(), Dialect.EXTENDED)
            mode = args.mode
            if mode is None:
                uses_extension = any(isinstance(c, Named) and c.name in EXTENSION_COMMANDS for c in cmds)
                mode = KernelMode.EXTENDED if uses_extension else KernelMode.MINIMAL
            session = new_session(mode)
            result = replay(cmds, session.ctx)
            if not result.exported:
                raise HolkitError(f"{args.file} exports no theorem")
            stem = Path(args.file).stem
            named = [(stem if len(result.exported) == 1 else f"{stem}_{i}", th)
                     for i, th in enumerate(result.exported, start=1)]
            lp_file = theorems_file(named, session.ctx, f"holkit translation of {Path(args.file).name}")
            size = write_lp_file(lp_file, args.output)
            print(f"wrote {args.output} ({size} bytes, {len(named)} theorem(s))")
            return EXIT_OK
        except Exception as e:
            self.logger.error(f"Failed to translate {args.file}: {e}")
            raise

    def lpcheck(self, args: argparse.Namespace) -> int:
        """Type check every entry of an LP file"""
        try:
            lp_file = read_lp_file(args.file)
            check_file(lp_file, args.step_budget)
            print(f"ok: {len(lp_file.entries)} entries checked")
            return EXIT_OK
        except Exception as e:
            self.logger.error(f"Failed to check {args.file}: {e}")
            raise

    def export(self, args: argparse.Namespace) -> int:
        """Build one corpus entry and write its article"""
        try:
            entry = corpus_entry(args.entry)
            session = new_session(args.mode)
            th = entry.build(session)
            dialect = Dialect.EXTENDED if session.ctx.extended else Dialect.STANDARD
            data = format_article(serialize(th, dialect, session.ctx))
            Path(args.output).write_bytes(data)
            print(f"wrote {args.output} ({len(data)} bytes, {th.step_count} steps)")
            return EXIT_OK
        except Exception as e:
            self.logger.error(f"Failed to export {args.entry}: {e}")
            raise

    def _get_handler_function(self, command: str):
        handlers = {
            "bench": self.bench,
            "check-article": self.check_article,
            "translate": self.translate,
            "lpcheck": self.lpcheck,
            "export": self.export,
        }
        return handlers[command]

    def run(self, args: argparse.Namespace) -> int:
        return self._get_handler_function(args.command)(args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="holkit", description="Dual-kernel HOL proof toolkit")
    commands = parser.add_subparsers(dest="command", required=True)

    bench = commands.add_parser("bench", help="replay the corpus and compare kernels")
    bench.add_argument("--modes", default="minimal,extended")
    bench.add_argument("--out", required=True, type=Path)
    bench.add_argument("--gzip-level", type=int, choices=range(10), default=None, metavar="N")
    bench.add_argument("--report", choices=["tsv", "text"], default="text")
    bench.add_argument("--runs", type=int, default=None)
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--step-budget", type=int, default=None)

    check_article = commands.add_parser("check-article", help="parse and replay an article")
    check_article.add_argument("file", type=Path)
    check_article.add_argument("--dialect", choices=[d.value for d in Dialect], default=Dialect.EXTENDED.value)
    check_article.add_argument("--mode", choices=[m.value for m in KernelMode], default=None)

    translate = commands.add_parser("translate", help="translate an article's theorems to an LP file")
    translate.add_argument("file", type=Path)
    translate.add_argument("-o", "--output", required=True, type=Path)
    translate.add_argument("--mode", choices=[m.value for m in KernelMode], default=None)

    lpcheck = commands.add_parser("lpcheck", help="type check an LP file")
    lpcheck.add_argument("file", type=Path)
    lpcheck.add_argument("--step-budget", type=int, default=None)

    export = commands.add_parser("export", help="write one corpus entry's article")
    export.add_argument("entry")
    export.add_argument("--mode", choices=[m.value for m in KernelMode], default=KernelMode.EXTENDED.value)
    export.add_argument("-o", "--output", required=True, type=Path)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Application entry point"""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE

    setup_logging(Config.LOG_LEVEL)
    try:
        return HolkitApp().run(args)
    except (HolkitError, OSError, KeyError, ValueError) as e:
        message = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"holkit: error: {message}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
