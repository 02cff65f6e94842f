"""
Unit tests for report timestamps and timezone lookup.
"""

from datetime import datetime

import pytz

from syncword.utils import DEFAULT_TIMEZONE, get_timezone, report_timestamp


def test_known_timezone():
    assert get_timezone("Europe/Berlin").zone == "Europe/Berlin"


def test_unknown_or_empty_timezone_falls_back(caplog):
    assert get_timezone().zone == pytz.timezone(DEFAULT_TIMEZONE).zone
    assert get_timezone("Nowhere/Special").zone == pytz.timezone(DEFAULT_TIMEZONE).zone
    assert "Nowhere/Special" in caplog.text


def test_report_timestamp_carries_an_offset():
    stamp = datetime.fromisoformat(report_timestamp("Asia/Tokyo"))
    assert stamp.utcoffset().total_seconds() == 9 * 3600
