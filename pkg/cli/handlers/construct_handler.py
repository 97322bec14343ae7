"""Подкоманда construct: генераторы экстремальных конструкций"""

from core.errors import ValidationError
from core.io import resolve_pattern, write_qgraph
from cli.output import EXIT_OK, emit
from services.report_service import CONSTRUCTIONS, run_construct


def _blocks(raw: str):
    """'1,2,3;4,5' -> [[1,2,3],[4,5]]"""
    try:
        return [[int(x) for x in block.split(",")] for block in raw.split(";") if block.strip()]
    except ValueError:
        raise ValidationError(f"blocks must look like '1,2;3,4', got {raw!r}") from None


def register(subparsers) -> None:
    parser = subparsers.add_parser("construct", help="Build a named extremal construction.")
    parser.add_argument("kind", choices=sorted(CONSTRUCTIONS))
    parser.add_argument("--q", type=int)
    parser.add_argument("--n", type=int)
    parser.add_argument("--r", type=int)
    parser.add_argument("--s", type=int)
    parser.add_argument("--t", type=int)
    parser.add_argument("--pattern", help="Pattern for blowup and chi1-lower.")
    parser.add_argument("--variant", help="F_A / F'_A for tree-family, 1..4 for triangle-family.")
    parser.add_argument("--blocks", help="Explicit partition for tree-family, e.g. '1,2,3;4,5'.")
    parser.add_argument("--allow-degenerate", action="store_true", dest="allow_degenerate",
                        help="chi1-lower: accept patterns whose components are all trees or unicyclic.")
    parser.add_argument("-o", "--out", default=None, help="Write the q-graph to this file.")
    parser.set_defaults(handler=handle_construct)


def handle_construct(args) -> int:
    params = {key: getattr(args, key) for key in ("q", "n", "r", "s", "t", "variant")
              if getattr(args, key) is not None}
    if args.pattern:
        params["pattern"] = resolve_pattern(args.pattern)
    if args.blocks:
        params["blocks"] = _blocks(args.blocks)
    if args.allow_degenerate:
        params["allow_degenerate"] = True

    report = run_construct(args.kind, **params)
    if args.out:
        write_qgraph(report.artifact, args.out)
    emit(report, args.fmt)
    return EXIT_OK
