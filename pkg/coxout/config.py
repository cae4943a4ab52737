"""
Configuration module for coxout
"""
import os
import logging
from dotenv import load_dotenv
from pydantic import BaseModel
from functools import lru_cache

# Load environment variables
load_dotenv()


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


class Settings(BaseModel):
    """Settings model"""
    # Logging settings
    log_level: str = os.getenv("LOG_LEVEL", "WARNING")

    # Seed fallback for every command
    default_seed: int = int(os.getenv("COXOUT_SEED", "0"))

    # Out-equality search settings
    out_bound: int = int(os.getenv("COXOUT_OUT_BOUND", "8"))
    bound_escalation: int = int(os.getenv("COXOUT_ESCALATION", "2"))

    # Oracle settings
    max_exhaustive_vertices: int = int(os.getenv("COXOUT_EXHAUSTIVE_VERTICES", "6"))
    max_sampled_vertices: int = int(os.getenv("COXOUT_SAMPLED_VERTICES", "8"))
    edge_probability: float = float(os.getenv("COXOUT_EDGE_PROBABILITY", "0.5"))
    max_sample_attempts: int = int(os.getenv("COXOUT_MAX_ATTEMPTS", "40"))
    max_instances: int = int(os.getenv("COXOUT_MAX_INSTANCES", "200"))
    reports_dir: str = os.getenv("COXOUT_REPORTS_DIR", "reports")

    # Presentation settings
    check_abelianization: bool = _env_bool("COXOUT_CHECK_ABELIANIZATION", "true")


@lru_cache()
def get_settings() -> Settings:
    """
    Get application settings

    Returns:
        Settings: Application settings
    """
    return Settings()


def setup_logging(name: str, level: str = None) -> logging.Logger:
    """
    Setup logging configuration

    Args:
        name: Logger name
        level: Level name overriding the configured one

    Returns:
        logging.Logger: Configured logger
    """
    log_level = (level or get_settings().log_level).upper()

    # Configure logging (stderr, stdout belongs to command output)
    logging.basicConfig(
        level=getattr(logging, log_level, logging.WARNING),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    # Create logger
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, log_level, logging.WARNING))

    return logger
