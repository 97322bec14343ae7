"""
q-turan — командная строка.

Каждый модуль cli/handlers/*_handler.py регистрирует свои подкоманды;
здесь только глобальные флаги, настройка логов и коды выхода:
0 — выполнено, 2 — ошибка использования, 3 — ошибка формата входа,
4 — провал приёмки.
"""

import argparse
import sys
from typing import List, Optional

import structlog

from cli.handlers import (
    acceptance_handler,
    construct_handler,
    detect_handler,
    extremal_handler,
    robust_handler,
    serve_handler,
    wstar_handler,
)
from cli.output import EXIT_FORMAT, EXIT_USAGE
from config.settings import config
from core.errors import FormatError, QTuranError
from utils.logging_setup import setup_logging

logger = structlog.get_logger()

HANDLERS = (
    detect_handler,
    extremal_handler,
    construct_handler,
    robust_handler,
    wstar_handler,
    acceptance_handler,
    serve_handler,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="q-turan",
        description="Turán-type problems for q-graphs: detection, exact search, constructions.",
    )
    parser.add_argument("--log-level", default=config.LOG_LEVEL, dest="log_level",
                        help=f"structlog level, logs go to stderr (default: {config.LOG_LEVEL}).")
    parser.add_argument("--format", choices=["json", "csv"], default="json", dest="fmt",
                        help="Report format on stdout (default: json).")
    parser.add_argument("--jobs", type=int, default=None,
                        help="Worker processes for search and experiments (default: QTURAN_JOBS or cpu count).")

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for handler in HANDLERS:
        handler.register(subparsers)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    setup_logging(args.log_level)
    try:
        return args.handler(args)
    except FormatError as e:
        logger.error("❌ Input format error", command=args.command, error=str(e))
        print(f"q-turan: format error: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except QTuranError as e:
        logger.error("❌ Command rejected", command=args.command, error=str(e))
        print(f"q-turan: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
