import logging

import pytest

from src.utils import chunk_ranges, get_logger, parse_param_overrides, set_log_level


def test_get_logger_adds_one_handler():
    """Repeated calls reuse the configured logger."""
    first = get_logger('src.test_utils_logger')
    second = get_logger('src.test_utils_logger')
    assert first is second
    assert len(first.handlers) == 1


def test_set_log_level_reaches_toolkit_loggers():
    """Only loggers under the src package are touched."""
    ours = get_logger('src.test_utils_level')
    other = logging.getLogger('thirdparty.test_utils_level')
    other.setLevel(logging.WARNING)
    set_log_level(logging.DEBUG)
    assert ours.level == logging.DEBUG
    assert other.level == logging.WARNING
    set_log_level(logging.INFO)


def test_parse_param_overrides():
    """Overrides become floats keyed by name."""
    assert parse_param_overrides(['a20=0.5', ' a30 = 2']) == {'a20': 0.5, 'a30': 2.0}
    assert parse_param_overrides(None) == {}


@pytest.mark.parametrize("item", ['a20', '=1', 'a20=abc'])
def test_parse_param_overrides_rejects(item):
    """Malformed overrides raise ValueError."""
    with pytest.raises(ValueError, match="parameter override"):
        parse_param_overrides([item])


def test_chunk_ranges():
    """Consecutive flagged samples collapse into ranges."""
    flags = [True, True, False, False, True, False, True]
    positions = [0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0]
    assert chunk_ranges(flags, positions) == [(0.0, 1.0), (4.0, 4.0), (6.0, 6.0)]
    assert chunk_ranges([False, False], [0.0, 1.0]) == []
