"""Подкоманда extremal: точное ex(n, s-F, q) с бюджетом"""

from cli.output import EXIT_OK, emit
from core.io import resolve_pattern, write_qgraph
from services.report_service import run_extremal
from utils.parallel import resolve_jobs


def register(subparsers) -> None:
    parser = subparsers.add_parser("extremal", help="Exact extremal number by branch-and-bound.")
    parser.add_argument("--n", type=int, required=True)
    parser.add_argument("--q", type=int, required=True)
    parser.add_argument("--s", type=int, required=True)
    parser.add_argument("--pattern", required=True, help="Pattern file (.g) or built-in name.")
    parser.add_argument("--budget-nodes", type=int, default=None, dest="budget_nodes",
                        help="Stop after this many search nodes (default: QTURAN_BUDGET_NODES).")
    parser.add_argument("--budget-secs", type=float, default=None, dest="budget_secs",
                        help="Stop after this many seconds (default: QTURAN_BUDGET_SECS).")
    parser.add_argument("-o", "--out", default=None, help="Write the witness q-graph to this file.")
    parser.set_defaults(handler=handle_extremal)


def handle_extremal(args) -> int:
    report = run_extremal(args.n, args.q, args.s, resolve_pattern(args.pattern),
                          budget_nodes=args.budget_nodes, budget_secs=args.budget_secs,
                          jobs=resolve_jobs(args.jobs))
    if args.out and report.artifact is not None:
        write_qgraph(report.artifact, args.out)
    emit(report, args.fmt)
    return EXIT_OK
