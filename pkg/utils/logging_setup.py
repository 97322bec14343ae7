"""Настройка structlog: вывод в stderr, stdout остаётся под JSON/CSV"""

import logging
import sys

import structlog

from config.settings import config

_configured_level = None


def _stderr_logger(*args) -> structlog.PrintLogger:
    """sys.stderr берётся в момент вызова: поток может быть подменён после настройки."""
    return structlog.PrintLogger(file=sys.stderr)


def setup_logging(level: str = None) -> None:
    """Однократная (или повторная при смене уровня) настройка structlog."""
    global _configured_level

    level = (level or config.LOG_LEVEL).upper()
    if level == _configured_level:
        return

    numeric = logging.getLevelName(level)
    if not isinstance(numeric, int):
        numeric = logging.INFO

    structlog.configure(
        processors=[
            structlog.processors.add_log_level,
            structlog.processors.TimeStamper(fmt="iso"),
            structlog.dev.ConsoleRenderer(colors=False),
        ],
        wrapper_class=structlog.make_filtering_bound_logger(numeric),
        logger_factory=_stderr_logger,
        cache_logger_on_first_use=False,
    )
    _configured_level = level
