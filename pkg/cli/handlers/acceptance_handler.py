"""Подкоманда acceptance: вся приёмочная сетка, код 4 при любом провале"""

from cli.output import EXIT_ACCEPTANCE, EXIT_OK, emit
from services.acceptance_service import CRITERIA
from services.report_service import run_acceptance_grid


def register(subparsers) -> None:
    parser = subparsers.add_parser("acceptance", help="Run the acceptance grid.")
    parser.add_argument("--only", action="append", choices=list(CRITERIA), default=None,
                        help="Run only this criterion (repeatable).")
    parser.set_defaults(handler=handle_acceptance)


def handle_acceptance(args) -> int:
    report = run_acceptance_grid(args.only)
    emit(report, args.fmt)
    return EXIT_OK if report.result["passed"] else EXIT_ACCEPTANCE
