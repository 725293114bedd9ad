import argparse
import logging
import os
import sys
from .tools import tools
from . import __version__


def setup_logger() -> None:
    log_level = logging.INFO
    dbg = os.getenv("DEBUG", "0")
    if dbg >= "2":
        log_level = logging.NOTSET
    elif dbg >= "1":
        log_level = logging.DEBUG
    logging.basicConfig(level=log_level, format="%(levelname)s: %(message)s")


def parse_args(argv: list[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        description="micover - motivic infinite cyclic covers of SNC divisor neighborhoods."
    )

    subparsers = parser.add_subparsers(
        metavar="tool",
        dest="tool",
        help="Available tools:",
        required=True
    )

    parser.add_argument(
        "--version",
        action="version",
        version=f"micover {__version__}"
    )

    for tool in tools.values():
        tool.add_argparser(subparsers)

    return parser.parse_args(argv)


def main(argv: list[str] | None = None) -> int:
    setup_logger()

    args = parse_args(argv)
    tool_args = {k: v for k, v in vars(args).items() if k != 'tool'}

    return int(tools[args.tool](**tool_args))


if __name__ == "__main__":
    sys.exit(main())
