"""Подкоманды chi, chi1 и random-chi1"""

from cli.output import EXIT_OK, emit
from core.io import resolve_pattern
from services.report_service import run_chi, run_chi1, run_random_chi1
from utils.parallel import resolve_jobs


def register(subparsers) -> None:
    chi = subparsers.add_parser("chi", help="Chromatic number of a pattern.")
    chi.add_argument("--pattern", required=True)
    chi.set_defaults(handler=handle_chi)

    chi1 = subparsers.add_parser("chi1", help="Robust chromatic number of a pattern.")
    chi1.add_argument("--pattern", required=True)
    chi1.add_argument("--method", choices=["coloring", "removal"], default="coloring")
    chi1.set_defaults(handler=handle_chi1)

    random_chi1 = subparsers.add_parser("random-chi1", help="How often chi1(K(m,r,p)) equals r.")
    random_chi1.add_argument("--m", type=int, required=True, help="Part size.")
    random_chi1.add_argument("--r", type=int, required=True, help="Number of parts.")
    random_chi1.add_argument("--p", type=float, required=True, help="Edge probability.")
    random_chi1.add_argument("--trials", type=int, required=True)
    random_chi1.add_argument("--seed", type=int, required=True)
    random_chi1.set_defaults(handler=handle_random_chi1)


def handle_chi(args) -> int:
    emit(run_chi(resolve_pattern(args.pattern)), args.fmt)
    return EXIT_OK


def handle_chi1(args) -> int:
    emit(run_chi1(resolve_pattern(args.pattern), method=args.method), args.fmt)
    return EXIT_OK


def handle_random_chi1(args) -> int:
    report = run_random_chi1(args.m, args.r, args.p, args.trials, args.seed, jobs=resolve_jobs(args.jobs))
    emit(report, args.fmt)
    return EXIT_OK
