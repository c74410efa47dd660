from __future__ import annotations

import argparse
import logging
import sys
from typing import List, NoReturn, Optional

from dotenv import load_dotenv

from . import __version__
from .command_dispatch import dispatch_command
from .command_registry import COMMANDS
from .config import load_settings
from .errors import DangerlexError, UsageError

logger = logging.getLogger("dangerlex")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_EXTERNAL = 3


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="dangerlex",
        description="Detect dangerous situations and fear descriptions in segmented German fiction with word lists.",
    )
    parser.add_argument("--version", action="version", version=f"dangerlex {__version__}")
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Log verbosity on stderr (default: DANGERLEX_LOG_LEVEL or INFO).",
    )
    subparsers = parser.add_subparsers(dest="command", metavar="command", required=True)
    for spec in COMMANDS:
        sub = subparsers.add_parser(spec.name, help=spec.description, description=spec.description)
        for flag in spec.flags:
            sub.add_argument(*flag.names, help=flag.help, **flag.options)
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    load_dotenv()
    settings = load_settings()
    args = build_parser().parse_args(argv)
    _configure_logging(args.log_level or settings.log_level)
    arguments = {k: v for k, v in vars(args).items() if k not in {"command", "log_level"}}
    try:
        dispatch_command(settings, args.command, arguments)
    except UsageError as exc:
        print(f"dangerlex {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DangerlexError as exc:
        print(f"dangerlex {args.command}: {exc}", file=sys.stderr)
        return exc.exit_code
    except ValueError as exc:
        print(f"dangerlex {args.command}: usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"dangerlex {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK
