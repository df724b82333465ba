"""
Configuration module with validation
"""
import os
from dotenv import load_dotenv
import logging

load_dotenv()

logger = logging.getLogger(__name__)


class ConfigError(Exception):
    """Configuration error"""
    pass


class Config:
    """Toolkit configuration with validation"""

    # Logging
    LOG_LEVEL = os.getenv('LOG_LEVEL', 'WARNING')
    LOG_FILE = os.getenv('LOG_FILE', 'logs/peiffer.log')

    # Shipped and generated instances
    DATA_DIR = os.getenv('DATA_DIR', 'data')

    # Truncation
    DEFAULT_TOP = int(os.getenv('DEFAULT_TOP', '3'))
    MAX_ARITY = int(os.getenv('MAX_ARITY', '3'))

    # Size guards
    ORDER_CAP = int(os.getenv('ORDER_CAP', '5040'))
    RANK_CAP = int(os.getenv('RANK_CAP', '64'))

    # Randomized runs
    DEFAULT_SEED = int(os.getenv('SEED', '42'))
    DEFAULT_MODULUS = int(os.getenv('DEFAULT_MODULUS', '5'))
    JOBS = int(os.getenv('JOBS', '1'))

    @classmethod
    def validate(cls) -> bool:
        """
        Validate configuration ranges
        Raises ConfigError if validation fails
        """
        errors = []

        if cls.LOG_LEVEL.upper() not in ('DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL'):
            errors.append(f"LOG_LEVEL must be a logging level name, got {cls.LOG_LEVEL!r}")
        if cls.DEFAULT_TOP < 0:
            errors.append("DEFAULT_TOP must be non-negative")
        if not 1 <= cls.MAX_ARITY <= 4:
            errors.append("MAX_ARITY must lie in 1..4")
        if cls.ORDER_CAP < 1:
            errors.append("ORDER_CAP must be positive")
        if cls.RANK_CAP < 1:
            errors.append("RANK_CAP must be positive")
        if cls.DEFAULT_MODULUS < 2:
            errors.append("DEFAULT_MODULUS must be at least 2")
        if cls.JOBS < 1:
            errors.append("JOBS must be at least 1")

        if errors:
            error_msg = "Configuration errors:\n" + "\n".join(errors)
            logger.error(error_msg)
            raise ConfigError(error_msg)

        os.makedirs(cls.DATA_DIR, exist_ok=True)
        if cls.LOG_FILE and os.path.dirname(cls.LOG_FILE):
            os.makedirs(os.path.dirname(cls.LOG_FILE), exist_ok=True)

        logger.info("✅ Configuration validated successfully")
        logger.info(f"📐 Top level {cls.DEFAULT_TOP}, arity cap {cls.MAX_ARITY}")

        return True
