# logger.py
import logging
from datetime import datetime
from pathlib import Path
from typing import Optional, Union

LOG_PREFIX = "holkit"
MAX_LOGS = 7


def setup_logging(level: Union[str, int] = "INFO", log_dir: Optional[Path] = None) -> Path:
    """Configure logging for a holkit run: a DEBUG log file plus a console handler at ``level``.

    Returns the path of the new log file.
    """
    if log_dir is None:
        from config import Config
        Config.setup_directories()
        log_dir = Config.LOGS_DIR
    log_dir = Path(log_dir)
    log_dir.mkdir(parents=True, exist_ok=True)

    # Generate timestamp for the log file
    timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
    log_file = log_dir / f"{LOG_PREFIX}_{timestamp}.log"

    # Create formatters
    file_formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )
    console_formatter = logging.Formatter(
        "%(levelname)s - %(message)s"
    )

    root_logger = logging.getLogger()

    # Remove any existing handlers to prevent duplicates
    while root_logger.handlers:
        handler = root_logger.handlers[0]
        root_logger.removeHandler(handler)
        handler.close()

    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    file_handler.setFormatter(file_formatter)
    file_handler.setLevel(logging.DEBUG)  # Log everything to file

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(console_formatter)
    console_handler.setLevel(level.upper() if isinstance(level, str) else level)

    root_logger.setLevel(logging.DEBUG)
    root_logger.addHandler(file_handler)
    root_logger.addHandler(console_handler)

    root_logger.debug(f"Starting new run. Log file: {log_file}")

    cleanup_old_logs(log_dir)
    return log_file


def cleanup_old_logs(log_dir: Path, max_logs: int = MAX_LOGS) -> None:
    """Keep only the ``max_logs`` most recent log files."""
    root_logger = logging.getLogger()
    log_files = sorted(Path(log_dir).glob(f"{LOG_PREFIX}_*.log"), reverse=True)
    for log_file in log_files[max_logs:]:
        try:
            log_file.unlink()
            root_logger.debug(f"Removed old log file: {log_file}")
        except Exception as e:
            root_logger.error(f"Failed to remove old log file {log_file}: {e}")
