"""Подкоманды detect и verify"""

from cli.output import EXIT_OK, emit
from core.io import read_qgraph, resolve_pattern
from services.report_service import run_detect, run_verify


def _host_arguments(parser) -> None:
    parser.add_argument("--host", required=True, help="Host q-graph file (.qg).")
    parser.add_argument("--pattern", required=True, help="Pattern file (.g) or built-in name (c5, k333, star4).")
    parser.add_argument("--s", type=int, required=True, help="Threshold s for the weight sums.")


def register(subparsers) -> None:
    detect = subparsers.add_parser("detect", help="Find an s-copy of a pattern in a q-graph.")
    _host_arguments(detect)
    detect.add_argument("--all", action="store_true", dest="all_copies", help="Enumerate distinct copies.")
    detect.add_argument("--limit", type=int, default=100, help="Maximum copies with --all (default: 100).")
    detect.set_defaults(handler=handle_detect)

    verify = subparsers.add_parser("verify", help="Certify that a q-graph is s-F-free.")
    _host_arguments(verify)
    verify.set_defaults(handler=handle_verify)


def handle_detect(args) -> int:
    report = run_detect(read_qgraph(args.host), resolve_pattern(args.pattern), args.s,
                        all_copies=args.all_copies, limit=args.limit)
    emit(report, args.fmt)
    return EXIT_OK


def handle_verify(args) -> int:
    emit(run_verify(read_qgraph(args.host), resolve_pattern(args.pattern), args.s), args.fmt)
    return EXIT_OK
