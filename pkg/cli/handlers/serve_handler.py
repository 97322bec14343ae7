"""Подкоманда serve: HTTP-интерфейс через uvicorn"""

import uvicorn

from cli.output import EXIT_OK
from config.settings import config


def register(subparsers) -> None:
    parser = subparsers.add_parser("serve", help="Serve the HTTP API.")
    parser.add_argument("--host", default=config.APP_HOST)
    parser.add_argument("--port", type=int, default=config.APP_PORT)
    parser.set_defaults(handler=handle_serve)


def handle_serve(args) -> int:
    uvicorn.run("app:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return EXIT_OK
