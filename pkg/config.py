import os
from pathlib import Path
from dotenv import load_dotenv

# Load environment variables at config initialization
load_dotenv(override=True)

class Config:
    """Application configuration"""

    # Base paths
    BASE_DIR = Path(__file__).resolve().parent
    LOGS_DIR = Path(os.getenv('HOLKIT_LOGS_DIR')) if os.getenv('HOLKIT_LOGS_DIR') else BASE_DIR / "logs"
    DEBUG_DIR = BASE_DIR / "debug"
    DOCS_DIR = BASE_DIR / "docs"

    # LP checker
    STEP_BUDGET = int(os.getenv('HOLKIT_STEP_BUDGET')) if os.getenv('HOLKIT_STEP_BUDGET') else 1000000

    # Bench settings
    GZIP_LEVEL = int(os.getenv('HOLKIT_GZIP_LEVEL')) if os.getenv('HOLKIT_GZIP_LEVEL') else 6
    BENCH_RUNS = int(os.getenv('HOLKIT_BENCH_RUNS')) if os.getenv('HOLKIT_BENCH_RUNS') else 5
    WORKERS = int(os.getenv('HOLKIT_WORKERS')) if os.getenv('HOLKIT_WORKERS') else 1

    # Development Settings
    LOG_LEVEL = os.getenv('HOLKIT_LOG_LEVEL', 'INFO').upper()

    @classmethod
    def validate_config(cls):
        """Validate configuration settings"""
        problems = []
        if cls.STEP_BUDGET < 1:
            problems.append(f"HOLKIT_STEP_BUDGET must be positive, got {cls.STEP_BUDGET}")
        if not 0 <= cls.GZIP_LEVEL <= 9:
            problems.append(f"HOLKIT_GZIP_LEVEL must be between 0 and 9, got {cls.GZIP_LEVEL}")
        if cls.BENCH_RUNS < 1:
            problems.append(f"HOLKIT_BENCH_RUNS must be at least 1, got {cls.BENCH_RUNS}")
        if cls.WORKERS < 1:
            problems.append(f"HOLKIT_WORKERS must be at least 1, got {cls.WORKERS}")
        if cls.LOG_LEVEL not in ['DEBUG', 'INFO', 'WARNING', 'ERROR']:
            problems.append("HOLKIT_LOG_LEVEL must be one of DEBUG, INFO, WARNING, ERROR")

        if problems:
            raise ValueError(
                "Invalid holkit configuration:\n" +
                "\n".join(f"- {problem}" for problem in problems) +
                "\nPlease check your .env file."
            )

    @classmethod
    def setup_directories(cls):
        """Create necessary application directories"""
        for directory in [cls.LOGS_DIR]:
            directory.mkdir(parents=True, exist_ok=True)

# Validate settings on import
Config.validate_config()
