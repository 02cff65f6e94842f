"""
Configuration and helper functions for syncword.
Reads settings from the environment (optionally a .env file) and handles
timestamps for reports and fixture provenance.
"""

import logging
import os
from datetime import datetime
from pathlib import Path
from typing import Optional

import pytz
from dotenv import load_dotenv

load_dotenv()

logger = logging.getLogger(__name__)

PROJECT_ROOT = Path(__file__).resolve().parent.parent

DEFAULT_TIMEZONE = os.getenv("SYNCWORD_TIMEZONE", "UTC")
FIXTURES_DIR = Path(os.getenv("SYNCWORD_FIXTURES_DIR", str(PROJECT_ROOT / "fixtures")))
SEMIGROUP_CAP = int(os.getenv("SYNCWORD_SEMIGROUP_CAP", "1000000"))
ENUMERATION_LIMIT = int(os.getenv("SYNCWORD_ENUMERATION_LIMIT", "50000000"))
LOG_LEVEL = os.getenv("SYNCWORD_LOG_LEVEL", "WARNING").upper()


def get_timezone(name: Optional[str] = None) -> pytz.BaseTzInfo:
    """Zone for report timestamps; SYNCWORD_TIMEZONE when name is empty or not a known zone."""
    if name:
        try:
            return pytz.timezone(name)
        except pytz.exceptions.UnknownTimeZoneError:
            logger.warning(f"unknown timezone '{name}', reporting in {DEFAULT_TIMEZONE}")
    return pytz.timezone(DEFAULT_TIMEZONE)


def utc_now() -> datetime:
    """Current time as an aware UTC datetime."""
    return pytz.UTC.localize(datetime.utcnow())


def report_timestamp(timezone_str: Optional[str] = None) -> str:
    """
    ISO timestamp used in enumeration reports and fixture provenance.

    Args:
        timezone_str: Target timezone, defaults to SYNCWORD_TIMEZONE

    Returns:
        ISO 8601 string with offset
    """
    return utc_now().astimezone(get_timezone(timezone_str)).isoformat(timespec="seconds")
