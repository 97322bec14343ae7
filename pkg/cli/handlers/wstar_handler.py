"""Подкоманды wstar-max и wstar-check"""

from cli.output import EXIT_OK, emit
from services.report_service import run_wstar_check, run_wstar_max
from services.wstar_service import read_wstar, write_wstar


def register(subparsers) -> None:
    wmax = subparsers.add_parser("wstar-max", help="Maximum weight of a (⋆)-function on K_k.")
    wmax.add_argument("--k", type=int, required=True)
    wmax.add_argument("--method", choices=["branch", "scan"], default="branch")
    wmax.add_argument("-o", "--out", default=None, help="Write the maximiser to this file (.ws).")
    wmax.set_defaults(handler=handle_wstar_max)

    wcheck = subparsers.add_parser("wstar-check", help="Check condition (⋆) for a weight function.")
    wcheck.add_argument("--in", required=True, dest="path", help="Weight function file (.ws).")
    wcheck.set_defaults(handler=handle_wstar_check)


def handle_wstar_max(args) -> int:
    report = run_wstar_max(args.k, method=args.method)
    if args.out:
        write_wstar(report.artifact, args.out)
    emit(report, args.fmt)
    return EXIT_OK


def handle_wstar_check(args) -> int:
    emit(run_wstar_check(read_wstar(args.path)), args.fmt)
    return EXIT_OK
