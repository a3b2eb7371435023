import re
import logging
from pathlib import Path
from datetime import datetime
from typing import Any, Iterable, List, Optional

# Configure logging
logger = logging.getLogger(__name__)

def normalize_rule_name(input_string: str) -> str:
    """
    Normalize a derived-rule name for dispatch

    Args:
        input_string (str): Rule name as typed, e.g. "conjunct1" or " mp-d "

    Returns:
        str: Upper-case name with dashes mapped to underscores
    """
    return re.sub(r'[\s]+', '', input_string).replace('-', '_').upper()

def parse_modes(value: str) -> List[str]:
    """
    Split a comma-separated kernel mode list, dropping blanks and duplicates

    Args:
        value (str): e.g. "minimal,extended"

    Returns:
        List[str]: Mode names in first-occurrence order
    """
    modes: List[str] = []
    for part in value.split(','):
        part = part.strip().lower()
        if part and part not in modes:
            modes.append(part)
    return modes

def format_duration(milliseconds: float) -> str:
    """
    Format a duration given in milliseconds

    Args:
        milliseconds (float): Duration in milliseconds

    Returns:
        str: Formatted duration string
    """
    if milliseconds >= 1000:
        return f"{milliseconds / 1000:.2f}s"
    return f"{milliseconds:.2f}ms"

def format_kib(num_bytes: int) -> str:
    """Bytes as KB with KB = 1024 bytes."""
    return f"{num_bytes / 1024:.2f}"

def format_percent(ratio: Optional[float]) -> str:
    if ratio is None:
        return "n/a"
    return f"{ratio * 100:.2f}%"

def save_debug_info(data: Any, category: str, debug_dir: Path = Path("debug")) -> Optional[Path]:
    """
    Save debug information to file

    Args:
        data: Data to save
        category (str): Debug category
        debug_dir (Path): Root of the debug tree

    Returns:
        Path: Path to saved file, None when writing failed
    """
    try:
        category_dir = debug_dir / category
        category_dir.mkdir(parents=True, exist_ok=True)

        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S_%f")
        file_path = category_dir / f"{category}_{timestamp}.txt"

        if isinstance(data, (bytes, bytearray)):
            file_path.write_bytes(bytes(data))
        elif isinstance(data, str):
            file_path.write_text(data, encoding="utf-8")
        elif isinstance(data, Iterable):
            file_path.write_text("\n".join(str(item) for item in data) + "\n", encoding="utf-8")
        else:
            file_path.write_text(str(data), encoding="utf-8")

        logger.debug(f"Saved debug info to {file_path}")
        return file_path

    except Exception as e:
        logger.error(f"Error saving debug info: {e}")
        return None
