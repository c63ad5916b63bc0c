import logging
import sys
from typing import List, Optional, TextIO

from app.cli.common import CliParser
from app.cli.routes import ROUTE_GROUPS
from app.config import load_settings
from app.controllers.base import EXIT_USAGE, CommandError

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

logger = logging.getLogger(__name__)


def build_parser() -> CliParser:
    parser = CliParser(
        prog="biclique",
        description="Point/hyperplane incidences: biclique extraction, exact oracle and bounds",
    )
    parser.add_argument("--verbose", action="store_true", help="Log at DEBUG level")
    parser.add_argument("--env-file", metavar="FILE", help="Read settings from this .env file")
    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND")
    subparsers.required = True
    for group in ROUTE_GROUPS:
        group.register(subparsers)
    return parser


def configure_logging(level: str) -> None:
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr)
    logging.getLogger().setLevel(level)


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run one CLI command and return its exit code."""
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        settings = load_settings(args.env_file)
        configure_logging("DEBUG" if args.verbose else settings.log_level)
        logger.debug(f"Running {args.command} with {vars(args)}")
        return args.handler(args, settings, stdout)
    except CommandError as e:
        logger.error(e.detail)
        return e.exit_code
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except ValueError as e:
        logger.error(f"Invalid settings: {e}")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
