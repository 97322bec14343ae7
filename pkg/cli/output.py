"""Вывод отчётов в stdout: JSON по умолчанию, CSV для табличных команд"""

import sys

from core.io import dump_json
from services.report_service import RunReport, to_csv

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FORMAT = 3
EXIT_ACCEPTANCE = 4


def emit(report: RunReport, fmt: str = "json") -> None:
    if fmt == "csv":
        sys.stdout.write(to_csv(report))
    else:
        sys.stdout.write(dump_json(report.to_dict()) + "\n")
    sys.stdout.flush()
