"""
Logging configuration
"""
import logging
import sys
from pathlib import Path
from typing import Optional

from config import Config


def setup_logger(name: str = 'peiffer', level: Optional[str] = None) -> logging.Logger:
    """Setup logger with stderr and file handlers

    stdout is reserved for reports, so console output goes to stderr.
    """
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.WARNING))

    if logger.handlers:
        return logger

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if Config.LOG_FILE:
        try:
            log_file = Path(Config.LOG_FILE)
            log_file.parent.mkdir(parents=True, exist_ok=True)

            file_handler = logging.FileHandler(log_file, encoding='utf-8')
            file_handler.setFormatter(formatter)
            logger.addHandler(file_handler)
        except OSError as e:
            logger.warning(f"Could not create file handler: {e}")

    return logger


def set_level(level: str) -> None:
    """Change the shared logger's level (used by --verbose)"""
    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))


logger = setup_logger('peiffer')
